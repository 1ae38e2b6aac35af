"""
Single-pass corpus statistics: hours, a duration histogram, diacritization level, punctuation usage and the
out-of-alphabet symbols that would make samples fail the alphabet filter.
"""

import enum
import logging
from collections import Counter
from dataclasses import dataclass, field

from titlecase import titlecase

from .alphabet import CharClass, classify_char, get_alphabet
from .constants import DEFAULT_ALPHABET_PRESET

logger = logging.getLogger(__name__)

NONE_THRESHOLD = 0.01
FULL_THRESHOLD = 0.80
# A corpus is a mix when at least this share of samples is nearly bare and the same share nearly fully marked.
MIX_MASS = 0.20
BARE_SAMPLE = 0.1
MARKED_SAMPLE = 0.9


class DiacritizationClass(enum.Enum):
    NONE = "none"
    PARTIAL = "partial"
    FULL = "full"
    MIX = "mix"


@dataclass
class StatsReport(object):
    sample_count: int = 0
    total_seconds: float = 0.0
    duration_histogram: Counter = field(default_factory=Counter)
    word_count: int = 0
    diacritized_word_count: int = 0
    punctuation_counts: Counter = field(default_factory=Counter)
    out_of_alphabet: Counter = field(default_factory=Counter)
    samples_with_words: int = 0
    bare_samples: int = 0
    marked_samples: int = 0

    @property
    def total_hours(self):
        return self.total_seconds / 3600.0

    @property
    def diacritization_ratio(self):
        if self.word_count == 0:
            return 0.0
        return self.diacritized_word_count / self.word_count

    @property
    def diacritization_class(self):
        if self.samples_with_words:
            bare = self.bare_samples / self.samples_with_words
            marked = self.marked_samples / self.samples_with_words
            if bare >= MIX_MASS and marked >= MIX_MASS:
                return DiacritizationClass.MIX
        ratio = self.diacritization_ratio
        if ratio < NONE_THRESHOLD:
            return DiacritizationClass.NONE
        if ratio > FULL_THRESHOLD:
            return DiacritizationClass.FULL
        return DiacritizationClass.PARTIAL

    def to_dict(self):
        return {
            "sample_count": self.sample_count,
            "total_hours": round(self.total_hours, 3),
            "duration_histogram": {str(k): self.duration_histogram[k] for k in sorted(self.duration_histogram)},
            "diacritization_ratio": round(self.diacritization_ratio, 4),
            "diacritization_class": self.diacritization_class.value,
            "punctuation_counts": dict(sorted(self.punctuation_counts.items())),
            "out_of_alphabet": {"U+{:04X}".format(ord(c)): n for c, n in _by_frequency(self.out_of_alphabet)},
        }


def _by_frequency(counter):
    return sorted(counter.items(), key=lambda item: (-item[1], item[0]))


def compute_stats(samples, spec=None):
    spec = get_alphabet(spec or DEFAULT_ALPHABET_PRESET)
    report = StatsReport()

    for sample in samples:
        report.sample_count += 1
        report.total_seconds += sample.duration
        report.duration_histogram[int(sample.duration)] += 1

        words = 0
        marked = 0
        for token in sample.text.split():
            classes = [classify_char(c, spec) for c in token]
            if all(cls is CharClass.PUNCTUATION for cls in classes):
                continue
            words += 1
            if CharClass.DIACRITIC in classes:
                marked += 1
        report.word_count += words
        report.diacritized_word_count += marked
        if words:
            report.samples_with_words += 1
            ratio = marked / words
            if ratio < BARE_SAMPLE:
                report.bare_samples += 1
            elif ratio > MARKED_SAMPLE:
                report.marked_samples += 1

        for c in sample.text:
            if c in spec.punctuation:
                report.punctuation_counts[c] += 1
            elif not spec.is_permitted(c):
                report.out_of_alphabet[c] += 1

    logger.info(
        "%d samples, %.2f h, diacritization %s (%.1f%% of words)",
        report.sample_count,
        report.total_hours,
        report.diacritization_class.value,
        100 * report.diacritization_ratio,
    )
    return report


def format_stats(report):
    d = report.to_dict()
    rows = [
        ("sample count", str(d["sample_count"])),
        ("total hours", "{:.3f}".format(report.total_hours)),
        ("diacritization ratio", "{:.4f}".format(report.diacritization_ratio)),
        ("diacritization class", titlecase(d["diacritization_class"])),
    ]
    width = max(len(name) for name, _ in rows)
    lines = ["{}  {}".format(titlecase(name).ljust(width), value) for name, value in rows]

    lines.append("")
    lines.append("Duration histogram (1 s buckets):")
    for bucket in sorted(report.duration_histogram):
        lines.append("  {:>4}-{:<4} {}".format(bucket, bucket + 1, report.duration_histogram[bucket]))

    lines.append("")
    lines.append("Punctuation:")
    for mark, count in sorted(report.punctuation_counts.items()):
        lines.append("  U+{:04X} {}  {}".format(ord(mark), mark, count))

    if report.out_of_alphabet:
        lines.append("")
        lines.append("Out-of-alphabet symbols:")
        for c, count in _by_frequency(report.out_of_alphabet):
            lines.append("  U+{:04X} {!r}  {}".format(ord(c), c, count))
    return "\n".join(lines)


__all__ = ["DiacritizationClass", "StatsReport", "compute_stats", "format_stats"]
