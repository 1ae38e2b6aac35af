"""
Transcript overlap removal between corpus splits.

Two transcripts collide when they are identical after removing diacritics and punctuation (and, optionally,
folding letters).  The caller picks the direction: drop train lines that occur in dev/test, or drop test lines
that occur in train.
"""

import logging
from typing import NewType

from .alphabet import LetterNormRules, collapse_whitespace, letter_normalize, strip_diacritics, strip_punctuation
from .manifest import read_manifest
from .utils import yield_all

logger = logging.getLogger(__name__)

DedupKey = NewType("DedupKey", str)


def dedup_key(text, rules=None):
    text = strip_punctuation(strip_diacritics(text))
    if rules is not None:
        text = letter_normalize(text, rules)
    return DedupKey(collapse_whitespace(text))


def build_reference_keys(samples, rules=None):
    """The set of non-empty keys of `samples`."""
    keys = set()
    for sample in samples:
        key = dedup_key(sample.text, rules)
        if key:
            keys.add(key)
    return frozenset(keys)


def load_reference_keys(paths, rules=None):
    keys = set()
    for path in yield_all(paths):
        before = len(keys)
        keys.update(build_reference_keys(read_manifest(path), rules))
        logger.info("reference %s: %d new keys", path, len(keys) - before)
    return frozenset(keys)


def is_overlapping(sample, keys, rules=None):
    # Empty keys never match; such lines are left to the empty-text filter.
    key = dedup_key(sample.text, rules)
    return bool(key) and key in keys


def iter_overlap(target, keys, rules=None):
    """Yield `(sample, overlapping)` for every target sample, in order."""
    for sample in target:
        yield sample, is_overlapping(sample, keys, rules)


def remove_overlap(target, reference, rules=None):
    """
    Split `target` into samples to keep and samples whose key occurs in `reference`.

    Returns `(filtered, removed)`; samples are never modified, only excluded.
    """
    rules = rules or LetterNormRules()
    keys = build_reference_keys(reference, rules)
    filtered, removed = [], []
    for sample, overlapping in iter_overlap(target, keys, rules):
        (removed if overlapping else filtered).append(sample)
    logger.info("overlap removal: kept %d, removed %d", len(filtered), len(removed))
    return filtered, removed


__all__ = [
    "DedupKey",
    "dedup_key",
    "build_reference_keys",
    "load_reference_keys",
    "is_overlapping",
    "iter_overlap",
    "remove_overlap",
]
