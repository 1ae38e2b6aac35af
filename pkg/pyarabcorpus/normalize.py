"""
Text normalization for Arabic transcripts.

Each transform is a pure `str -> str` function.  `normalize_text` chains them in this order:

    convert_eastern_digits -> unicode_normalize -> fold_presentation_leftovers -> normalize_punctuation
        -> remove_kasheeda

followed by whitespace collapsing.  Removing a character can expose a new pattern (a space before a mark that
was separated from it by a Kasheeda, two marks that were separated by a rare mark, diacritics that need
reordering), so the chain is repeated until the text stops changing.
"""

import enum
import logging
import unicodedata
from dataclasses import dataclass, field

import regex
from six import string_types

from .alphabet import DIGITS, PUNCTUATION, collapse_whitespace
from .constants import ARABIC_COMMA, ARABIC_QUESTION_MARK, FINAL_STOP, KASHEEDA
from .exceptions import ConfigError

logger = logging.getLogger(__name__)

_MAX_PASSES = 8

_EASTERN_DIGITS_TABLE = {}
for _base in (0x0660, 0x06F0):
    for _value in range(10):
        _EASTERN_DIGITS_TABLE[_base + _value] = str(_value)

_MARKS = regex.escape("".join(sorted(PUNCTUATION)))
_SPACE_BEFORE_MARK = regex.compile(r"\s+(?=[{}])".format(_MARKS))
_REPEATED_MARK = regex.compile(r"([{}])(?:\s*\1)+".format(_MARKS))
_DOUBLE_SPACE = regex.compile(r" {2,}")

DEFAULT_RARE_PUNCT_REMOVALS = frozenset(
    [
        ":",
        "-",
        '"',
        "'",
        "\u201c",  # left double quotation mark
        "\u201d",  # right double quotation mark
        "\u2018",  # left single quotation mark
        "\u2019",  # right single quotation mark
        ";",
        "\u061b",  # Arabic semicolon
        "!",
        "\ufe57",  # small exclamation mark
        "(",
        ")",
        "\u2026",  # ellipsis
    ]
)

DEFAULT_PUNCT_MAP = {
    "?": ARABIC_QUESTION_MARK,
    ",": ARABIC_COMMA,
    "\u06d4": FINAL_STOP,  # Arabic full stop
}


# Arabic presentation-form blocks.  NFKC folds most of their scalars into plain letters.
PRESENTATION_FORM_RANGES = ((0xFB50, 0xFDFF), (0xFE70, 0xFEFF))

BISMILLAH_LIGATURE = "\ufdfd"
BISMILLAH = (
    "\u0628\u0633\u0645 \u0627\u0644\u0644\u0647 "
    "\u0627\u0644\u0631\u062d\u0645\u0646 \u0627\u0644\u0631\u062d\u064a\u0645"
)


def _build_leftovers_table():
    # Scalars of the blocks that NFKC leaves as they are get deleted.  The basmala ligature is spelled out.
    table = {}
    for low, high in PRESENTATION_FORM_RANGES:
        for codepoint in range(low, high + 1):
            c = chr(codepoint)
            if unicodedata.normalize("NFKC", c) == c:
                table[codepoint] = None
    table[ord(BISMILLAH_LIGATURE)] = BISMILLAH
    return table


_PRESENTATION_LEFTOVERS_TABLE = _build_leftovers_table()


class DigitPolicy(enum.Enum):
    CONVERT_ONLY = "convert_only"
    CONVERT_THEN_DROP = "convert_then_drop"


@dataclass(frozen=True)
class NormalizeConfig(object):
    digit_policy: DigitPolicy = DigitPolicy.CONVERT_ONLY
    rare_punct_removals: frozenset = DEFAULT_RARE_PUNCT_REMOVALS
    punct_map: dict = field(default_factory=lambda: dict(DEFAULT_PUNCT_MAP), hash=False)
    collapse_repeats: bool = True
    _punct_table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "rare_punct_removals", frozenset(self.rare_punct_removals))
        object.__setattr__(self, "punct_map", dict(self.punct_map))

        for source, target in self.punct_map.items():
            if len(source) != 1 or len(target) != 1:
                raise ConfigError("punct_map entries must map one character to one character: {!r}".format(source))
            if target not in PUNCTUATION:
                raise ConfigError("punct_map target U+{:04X} is not an alphabet punctuation mark.".format(ord(target)))
        for c in self.rare_punct_removals:
            if len(c) != 1:
                raise ConfigError("rare_punct_removals entries must be single characters: {!r}".format(c))
        overlap = self.rare_punct_removals & set(self.punct_map)
        if overlap:
            raise ConfigError(
                "Characters both removed and mapped: {}".format(", ".join("U+{:04X}".format(ord(c)) for c in overlap))
            )

        table = {ord(c): None for c in self.rare_punct_removals}
        table.update({ord(source): target for source, target in self.punct_map.items()})
        object.__setattr__(self, "_punct_table", table)

    @classmethod
    def from_params(cls, params):
        params = dict(params or {})
        unknown = set(params) - {"digit_policy", "rare_punct_removals", "punct_map", "collapse_repeats"}
        if unknown:
            raise ConfigError("Unknown normalization param(s): {}".format(", ".join(sorted(unknown))))

        kwargs = {}
        if "digit_policy" in params:
            try:
                kwargs["digit_policy"] = DigitPolicy(params["digit_policy"])
            except ValueError:
                raise ConfigError(
                    "digit_policy must be one of {}, got {!r}".format(
                        ", ".join(p.value for p in DigitPolicy), params["digit_policy"]
                    )
                )
        if "rare_punct_removals" in params:
            removals = params["rare_punct_removals"]
            if isinstance(removals, string_types):
                removals = list(removals)
            kwargs["rare_punct_removals"] = frozenset(removals)
        if "punct_map" in params:
            if not isinstance(params["punct_map"], dict):
                raise ConfigError("punct_map must be a mapping.")
            kwargs["punct_map"] = params["punct_map"]
        if "collapse_repeats" in params:
            kwargs["collapse_repeats"] = bool(params["collapse_repeats"])
        return cls(**kwargs)


DEFAULT_NORMALIZE_CONFIG = NormalizeConfig()


def convert_eastern_digits(text):
    return text.translate(_EASTERN_DIGITS_TABLE)


def unicode_normalize(text):
    """NFKC: folds presentation forms and ligatures into plain letters and orders combining marks."""
    return unicodedata.normalize("NFKC", text)


def fold_presentation_leftovers(text):
    """Remove the presentation-form scalars NFKC leaves unchanged, so no presentation form survives."""
    return text.translate(_PRESENTATION_LEFTOVERS_TABLE)


def remove_kasheeda(text):
    return text.replace(KASHEEDA, "")


def normalize_punctuation(text, cfg=DEFAULT_NORMALIZE_CONFIG):
    text = text.translate(cfg._punct_table)
    text = _SPACE_BEFORE_MARK.sub("", text)
    if cfg.collapse_repeats:
        text = _REPEATED_MARK.sub(r"\1", text)
    return _DOUBLE_SPACE.sub(" ", text)


def _normalize_once(text, cfg):
    text = convert_eastern_digits(text)
    text = fold_presentation_leftovers(unicode_normalize(text))
    text = normalize_punctuation(text, cfg)
    text = remove_kasheeda(text)
    return collapse_whitespace(text)


def normalize_text(text, cfg=DEFAULT_NORMALIZE_CONFIG):
    for _ in range(_MAX_PASSES):
        normalized = _normalize_once(text, cfg)
        if normalized == text:
            return normalized
        text = normalized
    logger.debug("normalize_text did not settle after %d passes: %r", _MAX_PASSES, text)
    return text


def find_digit(text):
    """`(offset, scalar)` of the first ASCII or Eastern digit, or `None`."""
    for offset, c in enumerate(text):
        if c in DIGITS:
            return offset, c
    return None


__all__ = [
    "DigitPolicy",
    "NormalizeConfig",
    "DEFAULT_NORMALIZE_CONFIG",
    "DEFAULT_RARE_PUNCT_REMOVALS",
    "DEFAULT_PUNCT_MAP",
    "convert_eastern_digits",
    "unicode_normalize",
    "fold_presentation_leftovers",
    "PRESENTATION_FORM_RANGES",
    "BISMILLAH",
    "remove_kasheeda",
    "normalize_punctuation",
    "normalize_text",
    "find_digit",
]
