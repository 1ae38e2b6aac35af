"""
Word and character error rates in three scoring modes.

    plain  strip punctuation and diacritics from both sides (classic WER)
    pc     strip diacritics only, punctuation is scored
    pcd    strip nothing, punctuation and diacritics are scored

Rates are pooled: total edits over total reference length, never a mean of per-sample rates.
"""

import enum
import logging
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from typing import List, Optional

import regex
from titlecase import titlecase

from .alphabet import (
    PUNCTUATION,
    LetterNormRules,
    collapse_whitespace,
    letter_normalize,
    strip_diacritics,
    strip_punctuation,
)
from .exceptions import ConfigError, MissingHypothesisError

logger = logging.getLogger(__name__)

WORST_SAMPLES = 10

_MARK_SPLIT = regex.compile(r"\s*([{}])\s*".format(regex.escape("".join(sorted(PUNCTUATION)))))
_TWO_PLACES = Decimal("0.01")


class ScoreMode(enum.Enum):
    PLAIN = "plain"
    PC = "pc"
    PCD = "pcd"


@dataclass(frozen=True)
class ScoreOptions(object):
    # Score punctuation marks as tokens of their own instead of attached to the preceding word.
    split_punct: bool = False
    cer_include_spaces: bool = False


@dataclass(frozen=True)
class EditCounts(object):
    substitutions: int = 0
    deletions: int = 0
    insertions: int = 0
    ref_len: int = 0

    @property
    def distance(self):
        return self.substitutions + self.deletions + self.insertions

    @property
    def hyp_len(self):
        return self.ref_len - self.deletions + self.insertions

    def __add__(self, other):
        return EditCounts(
            self.substitutions + other.substitutions,
            self.deletions + other.deletions,
            self.insertions + other.insertions,
            self.ref_len + other.ref_len,
        )

    def to_dict(self):
        return {
            "substitutions": self.substitutions,
            "deletions": self.deletions,
            "insertions": self.insertions,
            "ref_len": self.ref_len,
        }


def edit_counts(ref_tokens, hyp_tokens):
    """
    Minimal unit-cost alignment of `hyp_tokens` against `ref_tokens`.

    Among alignments of equal cost the backtrace prefers substitution (or match), then insertion, then deletion,
    so the S/D/I split is reproducible.
    """
    ref = list(ref_tokens)
    hyp = list(hyp_tokens)
    ref_len = len(ref)

    # Matching the common prefix and suffix never raises the distance.
    start = 0
    while start < len(ref) and start < len(hyp) and ref[start] == hyp[start]:
        start += 1
    end_ref, end_hyp = len(ref), len(hyp)
    while end_ref > start and end_hyp > start and ref[end_ref - 1] == hyp[end_hyp - 1]:
        end_ref -= 1
        end_hyp -= 1
    ref = ref[start:end_ref]
    hyp = hyp[start:end_hyp]

    n, m = len(ref), len(hyp)
    if n == 0:
        return EditCounts(0, 0, m, ref_len)
    if m == 0:
        return EditCounts(0, n, 0, ref_len)

    cost = [list(range(m + 1))]
    for i in range(1, n + 1):
        prev = cost[i - 1]
        row = [i] + [0] * m
        r = ref[i - 1]
        for j in range(1, m + 1):
            best = prev[j - 1] + (r != hyp[j - 1])
            ins = row[j - 1] + 1
            if ins < best:
                best = ins
            dele = prev[j] + 1
            if dele < best:
                best = dele
            row[j] = best
        cost.append(row)

    substitutions = deletions = insertions = 0
    i, j = n, m
    while i > 0 or j > 0:
        current = cost[i][j]
        if i > 0 and j > 0 and cost[i - 1][j - 1] + (ref[i - 1] != hyp[j - 1]) == current:
            if ref[i - 1] != hyp[j - 1]:
                substitutions += 1
            i -= 1
            j -= 1
        elif j > 0 and cost[i][j - 1] + 1 == current:
            insertions += 1
            j -= 1
        else:
            deletions += 1
            i -= 1

    return EditCounts(substitutions, deletions, insertions, ref_len)


def prepare_text(text, mode, rules=None):
    """Apply letter folds, then the mode's stripping, then whitespace collapsing."""
    if rules is not None:
        text = letter_normalize(text, rules)
    if mode is ScoreMode.PLAIN:
        text = strip_punctuation(strip_diacritics(text))
    elif mode is ScoreMode.PC:
        text = strip_diacritics(text)
    return collapse_whitespace(text)


def tokenize_words(text, split_punct=False):
    if split_punct:
        text = _MARK_SPLIT.sub(r" \1 ", text)
    return text.split()


def tokenize_chars(text, include_spaces=False):
    if include_spaces:
        return list(" ".join(text.split()))
    return [c for c in text if not c.isspace()]


def score_pair(ref, hyp, mode=ScoreMode.PLAIN, rules=None, options=None):
    """Return `(word_counts, char_counts)` for one reference / hypothesis pair."""
    options = options or ScoreOptions()
    ref = prepare_text(ref, mode, rules)
    hyp = prepare_text(hyp, mode, rules)
    words = edit_counts(tokenize_words(ref, options.split_punct), tokenize_words(hyp, options.split_punct))
    chars = edit_counts(
        tokenize_chars(ref, options.cer_include_spaces), tokenize_chars(hyp, options.cer_include_spaces)
    )
    return words, chars


def error_rate(counts):
    """Unrounded percentage.  An empty reference scores 0 with an empty hypothesis and 100 otherwise."""
    if counts.ref_len == 0:
        return 0.0 if counts.distance == 0 else 100.0
    return 100.0 * counts.distance / counts.ref_len


def percent(counts):
    """Pooled percentage rounded half-even to two decimals."""
    if counts.ref_len == 0:
        return error_rate(counts)
    value = Decimal(100 * counts.distance) / Decimal(counts.ref_len)
    return float(value.quantize(_TWO_PLACES, rounding=ROUND_HALF_EVEN))


def per_sample_error_rates(ref, hyp, mode=ScoreMode.PLAIN, rules=None):
    words, chars = score_pair(ref, hyp, mode, rules)
    return error_rate(words), error_rate(chars)


@dataclass(frozen=True)
class SampleScore(object):
    sample_id: str
    words: EditCounts
    chars: EditCounts

    @property
    def wer(self):
        return error_rate(self.words)

    @property
    def cer(self):
        return error_rate(self.chars)

    def to_dict(self):
        return {
            "id": self.sample_id,
            "wer_percent": percent(self.words),
            "cer_percent": percent(self.chars),
            "words": self.words.to_dict(),
            "chars": self.chars.to_dict(),
        }


@dataclass
class ScoreReport(object):
    mode: ScoreMode
    letter_norm: LetterNormRules
    wer_percent: float = 0.0
    cer_percent: float = 0.0
    per_sample: List[SampleScore] = field(default_factory=list)
    totals: EditCounts = EditCounts()
    char_totals: EditCounts = EditCounts()
    options: Optional[ScoreOptions] = None

    def worst(self, count=WORST_SAMPLES):
        """Samples with the highest per-sample WER; ties keep manifest order."""
        ranked = sorted(enumerate(self.per_sample), key=lambda item: (-item[1].wer, item[0]))
        return [score for _, score in ranked[:count]]

    def to_dict(self):
        return {
            "mode": self.mode.value,
            "letter_norm": {
                "fold_alif": self.letter_norm.fold_alif,
                "fold_ta_marbuta": self.letter_norm.fold_ta_marbuta,
                "fold_alif_maksura": self.letter_norm.fold_alif_maksura,
            },
            "samples": len(self.per_sample),
            "wer_percent": self.wer_percent,
            "cer_percent": self.cer_percent,
            "word_totals": self.totals.to_dict(),
            "char_totals": self.char_totals.to_dict(),
            "worst": [s.to_dict() for s in self.worst()],
        }


def get_score_mode(name):
    if isinstance(name, ScoreMode):
        return name
    try:
        return ScoreMode(name)
    except ValueError:
        raise ConfigError("Unknown score mode `{}` (choose from plain, pc, pcd).".format(name))


def score_manifest(samples, mode=ScoreMode.PLAIN, rules=None, options=None):
    """
    Score every sample's `pred_text` against its `text` and pool the counts.

    A sample without `pred_text` raises `MissingHypothesisError` naming its manifest line.
    """
    mode = get_score_mode(mode)
    rules = rules or LetterNormRules()
    options = options or ScoreOptions()
    report = ScoreReport(mode=mode, letter_norm=rules, options=options)

    totals = EditCounts()
    char_totals = EditCounts()
    for index, sample in enumerate(samples, start=1):
        if sample.pred_text is None:
            raise MissingHypothesisError(sample.line if sample.line is not None else index)
        words, chars = score_pair(sample.text, sample.pred_text, mode, rules, options)
        report.per_sample.append(SampleScore(sample.sample_id, words, chars))
        totals += words
        char_totals += chars

    report.totals = totals
    report.char_totals = char_totals
    report.wer_percent = percent(totals)
    report.cer_percent = percent(char_totals)
    logger.info(
        "scored %d samples (%s): WER %.2f%%, CER %.2f%%",
        len(report.per_sample),
        mode.value,
        report.wer_percent,
        report.cer_percent,
    )
    return report


def _label(name):
    # Metric names such as WER_PC,D keep their spelling.
    if name.isupper() or "_" in name:
        return name
    return titlecase(name)


def format_report(report):
    label = {ScoreMode.PLAIN: "WER", ScoreMode.PC: "WER_PC", ScoreMode.PCD: "WER_PC,D"}[report.mode]
    t = report.totals
    rows = [
        ("mode", report.mode.value),
        ("samples", str(len(report.per_sample))),
        (label, "{:.2f}".format(report.wer_percent)),
        ("CER", "{:.2f}".format(report.cer_percent)),
        ("substitutions", str(t.substitutions)),
        ("deletions", str(t.deletions)),
        ("insertions", str(t.insertions)),
        ("reference words", str(t.ref_len)),
    ]
    width = max(len(name) for name, _ in rows)
    lines = ["{}  {}".format(_label(name).ljust(width), value) for name, value in rows]

    worst = report.worst()
    if worst:
        lines.append("")
        lines.append("Worst samples:")
        for s in worst:
            lines.append("  {:>7.2f}  {}".format(percent(s.words), s.sample_id))
    return "\n".join(lines)


__all__ = [
    "ScoreMode",
    "ScoreOptions",
    "EditCounts",
    "SampleScore",
    "ScoreReport",
    "edit_counts",
    "prepare_text",
    "tokenize_words",
    "tokenize_chars",
    "score_pair",
    "error_rate",
    "percent",
    "per_sample_error_rates",
    "get_score_mode",
    "score_manifest",
    "format_report",
]
