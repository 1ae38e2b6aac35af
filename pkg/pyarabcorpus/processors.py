"""
Built-in pipeline steps.

Each step is registered under the name used in pipeline configs.  Transforms return a replacement `Sample` (or
`None` when the text is unchanged); filters return a `DropDecision`.
"""

import logging
from dataclasses import dataclass, replace
from typing import FrozenSet, Optional, Tuple

from six import string_types

from . import messages
from .alphabet import LetterNormRules, letter_normalize, strip_diacritics, strip_punctuation
from .dedup import is_overlapping, load_reference_keys
from .exceptions import ConfigError
from .filters import (
    DropDecision,
    DropReason,
    FilterConfig,
    filter_alphabet,
    filter_by_hypothesis,
    filter_duration,
    filter_rates,
)
from .normalize import (
    DigitPolicy,
    NormalizeConfig,
    convert_eastern_digits,
    find_digit,
    fold_presentation_leftovers,
    normalize_punctuation,
    normalize_text,
    remove_kasheeda,
    unicode_normalize,
)
from .registry import processor
from .segment_vtt import DEFAULT_ENUMERATION_PATTERNS, SegmentConfig, strip_enumeration
from .splits import load_id_list, matches_ids
from .utils import yield_all

logger = logging.getLogger(__name__)


def _with_text(sample, text):
    if text == sample.text:
        return None
    return replace(sample, text=text)


@dataclass(frozen=True)
class EnumerationParams(object):
    patterns: Tuple[str, ...] = DEFAULT_ENUMERATION_PATTERNS

    @classmethod
    def from_params(cls, params):
        params = dict(params or {})
        unknown = set(params) - {"patterns"}
        if unknown:
            raise ConfigError("Unknown enumeration param(s): {}".format(", ".join(sorted(unknown))))
        if "patterns" not in params:
            return cls()
        patterns = tuple(yield_all(params["patterns"]))
        if not all(isinstance(p, string_types) for p in patterns):
            raise ConfigError("enumeration patterns must be strings")
        # SegmentConfig compiles and validates the patterns.
        SegmentConfig(enumeration_patterns=patterns)
        return cls(patterns)


@dataclass(frozen=True)
class DedupParams(object):
    reference: Tuple[str, ...]
    letter_norm: LetterNormRules = LetterNormRules()
    keys: Optional[FrozenSet[str]] = None

    @classmethod
    def from_params(cls, params):
        params = dict(params or {})
        unknown = set(params) - {"reference", "letter_norm"}
        if unknown:
            raise ConfigError("Unknown dedup param(s): {}".format(", ".join(sorted(unknown))))
        reference = tuple(yield_all(params.get("reference")))
        if not reference:
            raise ConfigError("dedup needs at least one `reference` manifest")
        if not all(isinstance(p, string_types) for p in reference):
            raise ConfigError("dedup `reference` must be a path or a list of paths")
        return cls(reference, LetterNormRules.from_params(params.get("letter_norm")))

    def prepare(self):
        if self.keys is not None:
            return self
        return replace(self, keys=load_reference_keys(self.reference, self.letter_norm))


@dataclass(frozen=True)
class SplitByIdsParams(object):
    ids: Tuple[str, ...]
    keep: str = "listed"
    id_set: Optional[FrozenSet[str]] = None

    KEEP_CHOICES = ("listed", "unlisted")

    @classmethod
    def from_params(cls, params):
        params = dict(params or {})
        unknown = set(params) - {"ids", "keep"}
        if unknown:
            raise ConfigError("Unknown split_by_ids param(s): {}".format(", ".join(sorted(unknown))))
        ids = tuple(yield_all(params.get("ids")))
        if not ids:
            raise ConfigError("split_by_ids needs at least one `ids` file")
        if not all(isinstance(p, string_types) for p in ids):
            raise ConfigError("split_by_ids `ids` must be a path or a list of paths")
        keep = params.get("keep", "listed")
        if keep not in cls.KEEP_CHOICES:
            raise ConfigError("split_by_ids `keep` must be one of {}, got {!r}".format(cls.KEEP_CHOICES, keep))
        return cls(ids, keep)

    def prepare(self):
        if self.id_set is not None:
            return self
        return replace(self, id_set=load_id_list(self.ids))


# Normalization


@processor("eastern_digits")
def eastern_digits(sample, params):
    return _with_text(sample, convert_eastern_digits(sample.text))


@processor("nfkc")
def nfkc(sample, params):
    return _with_text(sample, fold_presentation_leftovers(unicode_normalize(sample.text)))


@processor("punct", params=NormalizeConfig)
def punct(sample, cfg):
    return _with_text(sample, normalize_punctuation(sample.text, cfg))


@processor("kasheeda")
def kasheeda(sample, params):
    return _with_text(sample, remove_kasheeda(sample.text))


@processor("full", params=NormalizeConfig)
def full(sample, cfg):
    text = normalize_text(sample.text, cfg)
    if cfg.digit_policy is DigitPolicy.CONVERT_THEN_DROP:
        digit = find_digit(text)
        if digit is not None:
            offset, c = digit
            return DropDecision.drop(
                DropReason.OUT_OF_ALPHABET, messages.DIGIT_AFTER_CONVERSION.format(codepoint=ord(c), offset=offset)
            )
    return _with_text(sample, text)


# Text transforms


@processor("enumeration", params=EnumerationParams)
def enumeration(sample, params):
    return _with_text(sample, strip_enumeration(sample.text, params.patterns))


@processor("letter_norm", params=LetterNormRules)
def letter_norm(sample, rules):
    return _with_text(sample, letter_normalize(sample.text, rules))


@processor("strip_diacritics")
def diacritics(sample, params):
    return _with_text(sample, strip_diacritics(sample.text))


@processor("strip_punctuation")
def punctuation(sample, params):
    return _with_text(sample, strip_punctuation(sample.text))


# Filters


@processor("alphabet", requires="alphabet")
def in_alphabet(sample, params, alphabet):
    return filter_alphabet(sample, alphabet)


@processor("duration", params=FilterConfig)
def duration(sample, cfg):
    return filter_duration(sample, cfg)


@processor("rates", params=FilterConfig)
def rates(sample, cfg):
    return filter_rates(sample, cfg)


@processor("hypothesis", params=FilterConfig)
def hypothesis(sample, cfg):
    if sample.pred_text is None:
        return messages.HYP_MISSING
    return filter_by_hypothesis(sample, cfg)


@processor("dedup", params=DedupParams)
def dedup(sample, params):
    if is_overlapping(sample, params.keys, params.letter_norm):
        return DropDecision.drop(DropReason.OVERLAP, messages.OVERLAP)
    return None


@processor("split_by_ids", params=SplitByIdsParams)
def split_by_ids(sample, params):
    listed = matches_ids(sample, params.id_set)
    if params.keep == "listed" and not listed:
        return DropDecision.drop(DropReason.SPLIT, messages.ID_NOT_LISTED)
    if params.keep == "unlisted" and listed:
        return DropDecision.drop(DropReason.SPLIT, messages.ID_LISTED)
    return None


__all__ = ["EnumerationParams", "DedupParams", "SplitByIdsParams"]
