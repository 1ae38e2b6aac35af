"""
Keep/drop predicates over manifest samples.

Every filter is pure and returns a `DropDecision`; nothing raises for bad data.  The reason and detail of a drop
end up in the audit manifest.
"""

import enum
import logging
from dataclasses import dataclass
from typing import Optional

from . import messages, rules
from .alphabet import find_out_of_alphabet
from .exceptions import ConfigError
from .metrics import per_sample_error_rates

logger = logging.getLogger(__name__)


class DropReason(enum.Enum):
    OUT_OF_ALPHABET = "out_of_alphabet"
    DURATION = "duration"
    WORD_RATE = "word_rate"
    CHAR_RATE = "char_rate"
    HYP_WER = "hyp_wer"
    HYP_CER = "hyp_cer"
    EMPTY_TEXT = "empty_text"
    OVERLAP = "overlap"
    SPLIT = "split"


@dataclass(frozen=True)
class DropDecision(object):
    kept: bool
    reason: Optional[DropReason] = None
    detail: Optional[str] = None

    def __post_init__(self):
        if self.kept != (self.reason is None):
            raise ValueError("A decision is kept exactly when it has no drop reason.")

    @classmethod
    def drop(cls, reason, detail=None):
        return cls(kept=False, reason=reason, detail=detail)

    def __bool__(self):
        return self.kept


KEPT = DropDecision(kept=True)


@dataclass(frozen=True)
class FilterConfig(object):
    min_duration: float = 0.1
    max_duration: float = 20.0
    min_word_rate: float = 0.3
    max_word_rate: float = 8.0
    min_char_rate: float = 1.0
    max_char_rate: float = 35.0
    max_wer: float = 60.0
    max_cer: float = 30.0

    def __post_init__(self):
        problems = [
            rules.bounds_are_ordered(self.min_duration, self.max_duration, "duration"),
            rules.bounds_are_ordered(self.min_word_rate, self.max_word_rate, "word rate"),
            rules.bounds_are_ordered(self.min_char_rate, self.max_char_rate, "char rate"),
        ]
        if self.max_wer < 0 or self.max_cer < 0:
            problems.append("max_wer and max_cer must be non-negative")
        problems = [p for p in problems if p]
        if problems:
            raise ConfigError("; ".join(problems))

    @classmethod
    def from_params(cls, params):
        params = dict(params or {})
        known = set(cls.__dataclass_fields__)
        unknown = set(params) - known
        if unknown:
            raise ConfigError("Unknown filter param(s): {}".format(", ".join(sorted(unknown))))
        kwargs = {}
        for name, value in params.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError("Filter param `{}` must be a number, got {!r}".format(name, value))
            kwargs[name] = float(value)
        return cls(**kwargs)


DEFAULT_FILTER_CONFIG = FilterConfig()


def filter_alphabet(s, spec):
    if not s.text.strip():
        return DropDecision.drop(DropReason.EMPTY_TEXT, messages.EMPTY_TEXT)
    offender = find_out_of_alphabet(s.text, spec)
    if offender is not None:
        offset, c = offender
        return DropDecision.drop(
            DropReason.OUT_OF_ALPHABET, messages.OUT_OF_ALPHABET.format(codepoint=ord(c), offset=offset)
        )
    return KEPT


def filter_duration(s, cfg=DEFAULT_FILTER_CONFIG):
    problem = rules.value_within(s.duration, cfg.min_duration, cfg.max_duration, messages.DURATION_OUT_OF_RANGE)
    if problem:
        return DropDecision.drop(DropReason.DURATION, problem)
    return KEPT


def filter_rates(s, cfg=DEFAULT_FILTER_CONFIG):
    if s.duration <= 0:
        return DropDecision.drop(DropReason.DURATION, messages.ZERO_DURATION)

    words = s.text.split()
    word_rate = len(words) / s.duration
    problem = rules.value_within(word_rate, cfg.min_word_rate, cfg.max_word_rate, messages.WORD_RATE_OUT_OF_RANGE)
    if problem:
        return DropDecision.drop(DropReason.WORD_RATE, problem)

    char_rate = sum(len(w) for w in words) / s.duration
    problem = rules.value_within(char_rate, cfg.min_char_rate, cfg.max_char_rate, messages.CHAR_RATE_OUT_OF_RANGE)
    if problem:
        return DropDecision.drop(DropReason.CHAR_RATE, problem)
    return KEPT


def filter_by_hypothesis(s, cfg=DEFAULT_FILTER_CONFIG):
    """
    Drop samples whose `pred_text` is too far from `text` (plain-mode WER/CER, strictly above the limits).

    Samples without `pred_text` are kept; the pipeline flags them in the audit log.
    """
    if s.pred_text is None:
        return KEPT
    wer, cer = per_sample_error_rates(s.text, s.pred_text)
    problem = rules.value_not_above(wer, cfg.max_wer, messages.HYP_WER_TOO_HIGH)
    if problem:
        return DropDecision.drop(DropReason.HYP_WER, problem)
    problem = rules.value_not_above(cer, cfg.max_cer, messages.HYP_CER_TOO_HIGH)
    if problem:
        return DropDecision.drop(DropReason.HYP_CER, problem)
    return KEPT


__all__ = [
    "DropReason",
    "DropDecision",
    "KEPT",
    "FilterConfig",
    "DEFAULT_FILTER_CONFIG",
    "filter_alphabet",
    "filter_duration",
    "filter_rates",
    "filter_by_hypothesis",
]
