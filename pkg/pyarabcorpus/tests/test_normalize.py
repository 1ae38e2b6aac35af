import os
import random
import unittest

from pyarabcorpus import alphabet
from pyarabcorpus.exceptions import ConfigError
from pyarabcorpus.normalize import (
    DEFAULT_RARE_PUNCT_REMOVALS,
    BISMILLAH,
    DigitPolicy,
    NormalizeConfig,
    convert_eastern_digits,
    PRESENTATION_FORM_RANGES,
    find_digit,
    fold_presentation_leftovers,
    normalize_punctuation,
    normalize_text,
    remove_kasheeda,
    unicode_normalize,
)

BA = "\u0628"
MEEM = "\u0645"
FATHAH = "\u064e"
SHADDAH = "\u0651"
KASHEEDA = "\u0640"
COMMA = "\u060c"
QUESTION = "\u061f"

PRESENTATION_FORMS = [(0xFB50, 0xFDFF), (0xFE70, 0xFEFF)]
NORMALIZATION_TEST = os.path.join(os.path.dirname(__file__), "data", "NormalizationTest-arabic.txt")


def _all_presentation_forms():
    return [chr(c) for low, high in PRESENTATION_FORMS for c in range(low, high + 1)]


def _read_normalization_test(path):
    """Yield `(line_number, columns)` with the five columns of each test line as strings."""
    with open(path, encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            line = line.split("#", 1)[0].strip()
            if not line or line.startswith("@"):
                continue
            fields = line.split(";")[:5]
            yield number, ["".join(chr(int(c, 16)) for c in field.split()) for field in fields]


def _is_presentation_form(c):
    return any(low <= ord(c) <= high for low, high in PRESENTATION_FORMS)


def random_corpus(seed, count):
    rng = random.Random(seed)
    pool = (
        sorted(alphabet.BASE_LETTERS | alphabet.DIACRITICS | alphabet.PUNCTUATION | alphabet.DIGITS)
        + _all_presentation_forms()
        + sorted(DEFAULT_RARE_PUNCT_REMOVALS)
        + [KASHEEDA, " ", " ", " ", "\t", "\u00a0", "?", ",", "\u06d4", "\n"]
    )
    for _ in range(count):
        yield "".join(rng.choice(pool) for _ in range(rng.randint(0, 40)))


class TestDigits(unittest.TestCase):
    def test_convert_eastern_digits(self):
        self.assertEqual("3", convert_eastern_digits("\u0663"))
        self.assertEqual("50", convert_eastern_digits("\u06f5\u0660"))
        self.assertEqual("abc", convert_eastern_digits("abc"))

    def test_find_digit(self):
        self.assertIsNone(find_digit(BA + " " + BA))
        self.assertEqual((2, "7"), find_digit(BA + " 7"))
        self.assertEqual((0, "\u0661"), find_digit("\u0661"))


class TestUnicodeNormalize(unittest.TestCase):
    def test_lam_alef_ligature_is_decomposed(self):
        self.assertEqual("\u0644\u0627", unicode_normalize("\ufefb"))

    def test_diacritics_get_canonical_order(self):
        self.assertEqual(unicode_normalize(BA + SHADDAH + FATHAH), unicode_normalize(BA + FATHAH + SHADDAH))

    def test_plain_letters_are_unchanged(self):
        self.assertEqual(BA, unicode_normalize(BA))

    def test_matches_unicode_conformance_data(self):
        count = 0
        for number, columns in _read_normalization_test(NORMALIZATION_TEST):
            expected = columns[3]
            for column in columns:
                self.assertEqual(expected, unicode_normalize(column), "line {}".format(number))
            count += 1
        self.assertEqual(67, count)

    def test_presentation_forms_the_table_ignores(self):
        self.assertEqual(BA, fold_presentation_leftovers(unicode_normalize("\ufd3e" + BA + "\ufd3f")))
        self.assertEqual(BA, fold_presentation_leftovers(unicode_normalize("\ufeff" + BA)))
        self.assertEqual(BISMILLAH, fold_presentation_leftovers(unicode_normalize("\ufdfd")))
        self.assertEqual(BA, fold_presentation_leftovers(BA))

    def test_no_presentation_form_survives(self):
        self.assertEqual(((0xFB50, 0xFDFF), (0xFE70, 0xFEFF)), PRESENTATION_FORM_RANGES)
        for c in _all_presentation_forms():
            folded = fold_presentation_leftovers(unicode_normalize(BA + c + FATHAH))
            self.assertFalse(any(_is_presentation_form(x) for x in folded), "U+{:04X}".format(ord(c)))


class TestKasheeda(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(BA + BA, remove_kasheeda(BA + KASHEEDA + BA))
        self.assertEqual("", remove_kasheeda(KASHEEDA + KASHEEDA))
        self.assertEqual(BA, remove_kasheeda(BA))


class TestNormalizePunctuation(unittest.TestCase):
    def test_space_before_mark_is_removed(self):
        self.assertEqual(MEEM + COMMA, normalize_punctuation(MEEM + " " + COMMA))

    def test_foreign_marks_are_mapped(self):
        self.assertEqual(QUESTION, normalize_punctuation("?"))
        self.assertEqual(COMMA, normalize_punctuation(","))
        self.assertEqual(".", normalize_punctuation("\u06d4"))

    def test_repeats_are_collapsed(self):
        self.assertEqual(COMMA, normalize_punctuation(COMMA * 3))
        self.assertEqual(MEEM + QUESTION, normalize_punctuation(MEEM + "? ? ?"))

    def test_repeats_are_kept_when_disabled(self):
        cfg = NormalizeConfig(collapse_repeats=False)
        self.assertEqual(COMMA * 3, normalize_punctuation(COMMA * 3, cfg))

    def test_rare_marks_are_removed(self):
        self.assertEqual(MEEM + " " + MEEM, normalize_punctuation(MEEM + ' "' + MEEM + '"'))
        self.assertEqual(MEEM + " " + MEEM, normalize_punctuation(MEEM + " : " + MEEM))


class TestNormalizeText(unittest.TestCase):
    def test_examples(self):
        self.assertEqual("3 " + BA + QUESTION, normalize_text("\u0663  " + KASHEEDA + BA + "?"))
        self.assertEqual("", normalize_text(""))
        text = BA + FATHAH + " " + MEEM + "."
        self.assertEqual(text, normalize_text(text))

    def test_idempotence_and_closure(self):
        removed = DEFAULT_RARE_PUNCT_REMOVALS
        for text in random_corpus(seed=2024, count=10000):
            once = normalize_text(text)
            self.assertEqual(once, normalize_text(once), repr(text))
            self.assertEqual(once, once.strip())
            self.assertNotIn("  ", once)
            for c in once:
                self.assertFalse(_is_presentation_form(c), repr(text))
                self.assertNotEqual(KASHEEDA, c)
                self.assertNotIn(c, alphabet.EASTERN_DIGITS)
                self.assertNotIn(c, removed)


class TestNormalizeConfig(unittest.TestCase):
    def test_defaults(self):
        cfg = NormalizeConfig()
        self.assertEqual(DigitPolicy.CONVERT_ONLY, cfg.digit_policy)
        self.assertEqual(15, len(cfg.rare_punct_removals))

    def test_map_targets_must_be_alphabet_punctuation(self):
        with self.assertRaises(ConfigError):
            NormalizeConfig(punct_map={"!": "?"})

    def test_removals_and_map_must_be_disjoint(self):
        with self.assertRaises(ConfigError):
            NormalizeConfig(rare_punct_removals=frozenset("?"), punct_map={"?": QUESTION})

    def test_from_params(self):
        cfg = NormalizeConfig.from_params({"digit_policy": "convert_then_drop", "rare_punct_removals": ":;"})
        self.assertEqual(DigitPolicy.CONVERT_THEN_DROP, cfg.digit_policy)
        self.assertEqual(frozenset(":;"), cfg.rare_punct_removals)
        with self.assertRaises(ConfigError):
            NormalizeConfig.from_params({"digit_policy": "verbalize"})
        with self.assertRaises(ConfigError):
            NormalizeConfig.from_params({"lowercase": True})
