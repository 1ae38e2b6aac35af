"""
The Arabic character inventory and the stripping / letter-folding transforms every other module builds on.

The inventory has 36 letters (28 primary letters, six Hamza forms, Ta' Marbuta and Alif Maksura), 8 diacritics
(the three Tanween forms are separate scalars) and 3 punctuation marks.  Space is always permitted but belongs
to none of the sets.
"""

import enum
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache

import regex

from .constants import ARABIC_COMMA, ARABIC_QUESTION_MARK, FINAL_STOP
from .exceptions import ConfigError

logger = logging.getLogger(__name__)

PRIMARY_LETTERS = frozenset(
    "\u0627\u0628\u062a\u062b\u062c\u062d\u062e\u062f\u0630\u0631\u0632\u0633\u0634\u0635"
    "\u0636\u0637\u0638\u0639\u063a\u0641\u0642\u0643\u0644\u0645\u0646\u0647\u0648\u064a"
)
HAMZA_FORMS = frozenset("\u0621\u0623\u0625\u0624\u0626\u0622")
TA_MARBUTA = "\u0629"
ALIF_MAKSURA = "\u0649"

BASE_LETTERS = PRIMARY_LETTERS | HAMZA_FORMS | frozenset(TA_MARBUTA + ALIF_MAKSURA)

# Fathah, Kasrah, Dammah, Sukun, Shaddah, Fathatan, Dammatan, Kasratan
DIACRITICS = frozenset("\u064e\u0650\u064f\u0652\u0651\u064b\u064c\u064d")

PUNCTUATION = frozenset(FINAL_STOP + ARABIC_QUESTION_MARK + ARABIC_COMMA)

# Space and newline are permitted without being alphabet members.
PERMITTED_SPACES = frozenset(" \n")

ASCII_DIGITS = frozenset("0123456789")
EASTERN_DIGITS = frozenset(chr(c) for c in range(0x0660, 0x066A)) | frozenset(chr(c) for c in range(0x06F0, 0x06FA))
DIGITS = ASCII_DIGITS | EASTERN_DIGITS

_WHITESPACE_RUN = regex.compile(r"\s+")
_SPACE_RUN = regex.compile(r" {2,}")


class CharClass(enum.Enum):
    BASE_LETTER = "base_letter"
    DIACRITIC = "diacritic"
    PUNCTUATION = "punctuation"
    SPACE = "space"
    DIGIT = "digit"
    OTHER = "other"


@dataclass(frozen=True)
class AlphabetSpec(object):
    base_letters: frozenset = BASE_LETTERS
    diacritics: frozenset = DIACRITICS
    punctuation: frozenset = PUNCTUATION
    include_diacritics: bool = False
    _permitted: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("base_letters", "diacritics", "punctuation"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

        if self.base_letters & self.diacritics or self.base_letters & self.punctuation:
            raise ConfigError("Alphabet letters must not overlap diacritics or punctuation.")
        if self.diacritics & self.punctuation:
            raise ConfigError("Alphabet diacritics must not overlap punctuation.")
        if PERMITTED_SPACES & (self.base_letters | self.diacritics | self.punctuation):
            raise ConfigError("Space is permitted implicitly and cannot be an alphabet member.")

        permitted = self.base_letters | self.punctuation | PERMITTED_SPACES
        if self.include_diacritics:
            permitted = permitted | self.diacritics
        object.__setattr__(self, "_permitted", permitted)

    @property
    def symbols(self):
        """Alphabet symbols: letters, plus diacritics when they are included."""
        if self.include_diacritics:
            return self.base_letters | self.diacritics
        return self.base_letters

    def is_permitted(self, c):
        return c in self._permitted

    def classify(self, c):
        return classify_char(c, self)


@dataclass(frozen=True)
class LetterNormRules(object):
    fold_alif: bool = False
    fold_ta_marbuta: bool = False
    fold_alif_maksura: bool = False

    @classmethod
    def from_params(cls, params):
        """Accepts a rule set, a preset name, or a mapping of folds optionally based on a `preset`."""
        if params is None:
            return cls()
        if isinstance(params, cls):
            return params
        if isinstance(params, str):
            return get_letter_norm_rules(params)
        params = dict(params)
        base = get_letter_norm_rules(params.pop("preset", None))
        unknown = set(params) - {"fold_alif", "fold_ta_marbuta", "fold_alif_maksura"}
        if unknown:
            raise ConfigError("Unknown letter normalization rule(s): {}".format(", ".join(sorted(unknown))))
        return replace(base, **{k: bool(v) for k, v in params.items()})

    @property
    def enabled(self):
        return self.fold_alif or self.fold_ta_marbuta or self.fold_alif_maksura


ALPHABET_PRESETS = {
    "msa_pc": AlphabetSpec(include_diacritics=False),
    "ca_pcd": AlphabetSpec(include_diacritics=True),
}

LETTER_NORM_PRESETS = {
    "none": LetterNormRules(),
    "masc_eval": LetterNormRules(fold_alif=True, fold_ta_marbuta=True),
    "mediaspeech_eval": LetterNormRules(fold_alif=True, fold_ta_marbuta=True, fold_alif_maksura=True),
}


def get_alphabet(name):
    if isinstance(name, AlphabetSpec):
        return name
    try:
        return ALPHABET_PRESETS[name]
    except KeyError:
        raise ConfigError(
            "Unknown alphabet preset `{}` (choose from {}).".format(name, ", ".join(sorted(ALPHABET_PRESETS)))
        )


def get_letter_norm_rules(name):
    if isinstance(name, LetterNormRules):
        return name
    if name is None:
        return LETTER_NORM_PRESETS["none"]
    try:
        return LETTER_NORM_PRESETS[name]
    except KeyError:
        raise ConfigError(
            "Unknown letter normalization preset `{}` (choose from {}).".format(
                name, ", ".join(sorted(LETTER_NORM_PRESETS))
            )
        )


def classify_char(c, spec):
    if c in spec.base_letters:
        return CharClass.BASE_LETTER
    if c in spec.diacritics:
        return CharClass.DIACRITIC
    if c in spec.punctuation:
        return CharClass.PUNCTUATION
    if c in PERMITTED_SPACES:
        return CharClass.SPACE
    if c in DIGITS:
        return CharClass.DIGIT
    return CharClass.OTHER


_STRIP_DIACRITICS_TABLE = {ord(c): None for c in DIACRITICS}
_STRIP_PUNCTUATION_TABLE = {ord(c): None for c in PUNCTUATION}


def collapse_whitespace(text):
    """Collapse every whitespace run to one space and trim."""
    return _WHITESPACE_RUN.sub(" ", text).strip()


def strip_diacritics(text):
    return text.translate(_STRIP_DIACRITICS_TABLE)


def strip_punctuation(text):
    """
    Remove the three punctuation marks, then close up the spaces they leave.

    Only runs of U+0020 are collapsed and trimmed; tabs, newlines and no-break spaces are left for the alphabet
    check to see.
    """
    return _SPACE_RUN.sub(" ", text.translate(_STRIP_PUNCTUATION_TABLE)).strip(" ")


@lru_cache(maxsize=None)
def _letter_norm_table(rules):
    table = {}
    if rules.fold_alif:
        for c in "\u0623\u0625\u0622":
            table[ord(c)] = "\u0627"
    if rules.fold_ta_marbuta:
        table[ord(TA_MARBUTA)] = "\u0647"
    if rules.fold_alif_maksura:
        table[ord(ALIF_MAKSURA)] = "\u064a"
    return table


def letter_normalize(text, rules):
    if not rules.enabled:
        return text
    return text.translate(_letter_norm_table(rules))


def find_out_of_alphabet(text, spec):
    """
    Return `(offset, scalar)` for the first scalar `spec` does not permit, or `None`.

    Offsets are scalar (code point) indices.  Digits and anything outside the Arabic sets are rejected, and
    diacritics too unless `spec.include_diacritics`.
    """
    permitted = spec._permitted
    for offset, c in enumerate(text):
        if c not in permitted:
            return offset, c
    return None


__all__ = [
    "BASE_LETTERS",
    "DIACRITICS",
    "PUNCTUATION",
    "DIGITS",
    "EASTERN_DIGITS",
    "CharClass",
    "AlphabetSpec",
    "LetterNormRules",
    "ALPHABET_PRESETS",
    "LETTER_NORM_PRESETS",
    "get_alphabet",
    "get_letter_norm_rules",
    "classify_char",
    "collapse_whitespace",
    "strip_diacritics",
    "strip_punctuation",
    "letter_normalize",
    "find_out_of_alphabet",
]
