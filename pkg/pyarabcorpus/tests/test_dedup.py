import os
import random
import tempfile
import unittest

from pyarabcorpus import alphabet
from pyarabcorpus.alphabet import LetterNormRules, get_letter_norm_rules
from pyarabcorpus.dedup import build_reference_keys, dedup_key, load_reference_keys, remove_overlap
from pyarabcorpus.manifest import Sample, write_manifest

BA = "\u0628"
MEEM = "\u0645"
FATHAH = "\u064e"
COMMA = "\u060c"

LETTERS = sorted(alphabet.BASE_LETTERS)
DIACRITICS = sorted(alphabet.DIACRITICS)
MARKS = sorted(alphabet.PUNCTUATION)


def decorate(rng, text):
    """The same transcript with random diacritics, punctuation and spacing."""
    out = []
    for word in text.split():
        out.append("".join(c + (rng.choice(DIACRITICS) if rng.random() < 0.4 else "") for c in word))
        if rng.random() < 0.3:
            out[-1] += rng.choice(MARKS)
    return ("  " if rng.random() < 0.2 else " ").join(out)


def random_split(rng, sentences, count, name):
    return [Sample("{}/{}.wav".format(name, i), 1.0, decorate(rng, rng.choice(sentences))) for i in range(count)]


class TestDedupKey(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(BA + " " + BA, dedup_key(BA + FATHAH + COMMA + " " + BA))
        self.assertEqual(BA + BA, dedup_key(BA + FATHAH + COMMA + BA))
        self.assertEqual("", dedup_key(""))
        self.assertEqual("", dedup_key(COMMA + " ."))

    def test_diacritized_and_bare_versions_collide(self):
        rng = random.Random(1)
        for _ in range(200):
            text = " ".join("".join(rng.choice(LETTERS) for _ in range(4)) for _ in range(5))
            self.assertEqual(dedup_key(text), dedup_key(decorate(rng, text)))

    def test_letter_folds_are_optional(self):
        self.assertNotEqual(dedup_key("\u0623" + BA), dedup_key("\u0627" + BA))
        rules = get_letter_norm_rules("masc_eval")
        self.assertEqual(dedup_key("\u0623" + BA, rules), dedup_key("\u0627" + BA, rules))


class TestRemoveOverlap(unittest.TestCase):
    def test_matching_line_is_removed(self):
        target = [Sample("t1.wav", 1.0, BA + FATHAH + " " + MEEM + "."), Sample("t2.wav", 1.0, MEEM)]
        reference = [Sample("r.wav", 1.0, BA + " " + MEEM)]
        filtered, removed = remove_overlap(target, reference)
        self.assertEqual([target[1]], filtered)
        self.assertEqual([target[0]], removed)

    def test_disjoint_splits(self):
        target = [Sample("t.wav", 1.0, BA)]
        filtered, removed = remove_overlap(target, [Sample("r.wav", 1.0, MEEM)])
        self.assertEqual(target, filtered)
        self.assertEqual([], removed)

    def test_empty_keys_never_match(self):
        target = [Sample("t.wav", 1.0, COMMA)]
        filtered, removed = remove_overlap(target, [Sample("r.wav", 1.0, ".")])
        self.assertEqual(target, filtered)
        self.assertEqual(frozenset(), build_reference_keys([Sample("r.wav", 1.0, ".")]))

    def test_soundness_and_idempotence(self):
        rng = random.Random(8)
        for _ in range(50):
            sentences = [" ".join(rng.sample(LETTERS, 3)) for _ in range(30)]
            target = random_split(rng, sentences, 60, "train")
            reference = random_split(rng, sentences, 20, "test")
            rules = rng.choice([LetterNormRules(), get_letter_norm_rules("mediaspeech_eval")])

            filtered, removed = remove_overlap(target, reference, rules)
            self.assertEqual(len(target), len(filtered) + len(removed))
            reference_keys = build_reference_keys(reference, rules)
            self.assertFalse(build_reference_keys(filtered, rules) & reference_keys)

            again, removed_again = remove_overlap(filtered, reference, rules)
            self.assertEqual(filtered, again)
            self.assertEqual([], removed_again)


class TestLoadReferenceKeys(unittest.TestCase):
    def test_keys_from_several_manifests(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            dev = os.path.join(tmpdir, "dev.jsonl")
            test = os.path.join(tmpdir, "test.jsonl")
            write_manifest([Sample("d.wav", 1.0, BA + FATHAH)], dev)
            write_manifest([Sample("t.wav", 1.0, MEEM + "."), Sample("u.wav", 1.0, COMMA)], test)
            self.assertEqual(frozenset([BA, MEEM]), load_reference_keys([dev, test]))
            self.assertEqual(frozenset([MEEM]), load_reference_keys(test))
