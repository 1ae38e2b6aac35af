"""
Split extraction by recording ID.

Some corpora publish their dev and test sets as lists of recording (video) IDs instead of manifests; the split is
recovered from the raw data by matching every sample against the list.  A sample's candidate IDs are taken from
the file names of its `audio_filepath` and `provenance`: the name without its last extension and the name up to
its first dot, so `talk.wav`, `talk.ar.vtt` and `clips/talk.wav` all answer to `talk`.
"""

import logging
import os

import regex

from .exceptions import DataError
from .utils import yield_all

logger = logging.getLogger(__name__)

_FIELD_SEPARATOR = regex.compile(r"[\s,]+")


def parse_id_list(lines):
    """The first comma- or whitespace-separated field of every line; blank lines and `#` comments are skipped."""
    ids = set()
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        ids.add(_FIELD_SEPARATOR.split(line, 1)[0])
    return frozenset(ids)


def load_id_list(paths):
    ids = set()
    for path in yield_all(paths):
        try:
            with open(path, encoding="utf-8-sig") as f:
                found = parse_id_list(f)
        except OSError as exc:
            raise DataError("cannot read id list {}: {}".format(path, exc.strerror or exc))
        except UnicodeDecodeError as exc:
            raise DataError("id list {} is not valid UTF-8 ({})".format(path, exc.reason))
        logger.info("id list %s: %d ids", path, len(found))
        ids.update(found)
    return frozenset(ids)


def _name_stems(path):
    name = os.path.basename(str(path).replace("\\", "/"))
    if not name:
        return ()
    return (os.path.splitext(name)[0], name.split(".", 1)[0])


def recording_ids(sample):
    ids = []
    for path in (sample.audio_filepath, sample.provenance):
        if path:
            for stem in _name_stems(path):
                if stem and stem not in ids:
                    ids.append(stem)
    return tuple(ids)


def matches_ids(sample, ids):
    return any(candidate in ids for candidate in recording_ids(sample))


def split_by_ids(samples, ids):
    """
    Partition `samples` into those whose recording ID is in `ids` and the rest.

    Returns `(listed, rest)`, both in input order; samples are never modified.
    """
    listed, rest = [], []
    for sample in samples:
        (listed if matches_ids(sample, ids) else rest).append(sample)
    logger.info("id split: %d listed, %d rest", len(listed), len(rest))
    return listed, rest


__all__ = ["parse_id_list", "load_id_list", "recording_ids", "matches_ids", "split_by_ids"]
