"""
JSON-lines manifests: one object per line with `audio_filepath`, `duration` and `text`, plus optional
`offset`, `pred_text` and `provenance`.  Unknown fields are carried through untouched.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

from six import string_types

from .exceptions import DataError, ManifestError, ManifestSchemaError

logger = logging.getLogger(__name__)

KNOWN_FIELDS = ("audio_filepath", "offset", "duration", "text", "pred_text", "provenance")


@dataclass(frozen=True)
class Sample(object):
    audio_filepath: str
    duration: float
    text: str
    pred_text: Optional[str] = None
    offset: Optional[float] = None
    provenance: Optional[str] = None
    extra: dict = field(default_factory=dict, hash=False)
    # 1-based manifest line the sample was read from; not serialized.
    line: Optional[int] = field(default=None, compare=False, hash=False, repr=False)

    @property
    def sample_id(self):
        if self.offset is None:
            return self.audio_filepath
        return "{}@{:.3f}".format(self.audio_filepath, self.offset)

    def to_dict(self):
        d = {"audio_filepath": self.audio_filepath}
        if self.offset is not None:
            d["offset"] = self.offset
        d["duration"] = self.duration
        d["text"] = self.text
        if self.pred_text is not None:
            d["pred_text"] = self.pred_text
        if self.provenance is not None:
            d["provenance"] = self.provenance
        d.update(self.extra)
        return d

    @classmethod
    def from_dict(cls, d, path=None, line=None, byte_offset=None):
        where = {"path": path, "line": line, "byte_offset": byte_offset}
        if not isinstance(d, dict):
            raise ManifestError("manifest line must be an object, got {}".format(type(d).__name__), **where)

        def _required(name, check, expected):
            if name not in d:
                raise ManifestSchemaError("required field is missing", name, **where)
            if not check(d[name]):
                raise ManifestSchemaError("expected {}, got {!r}".format(expected, d[name]), name, **where)
            return d[name]

        def _optional(name, check, expected):
            value = d.get(name)
            if value is not None and not check(value):
                raise ManifestSchemaError("expected {}, got {!r}".format(expected, value), name, **where)
            return value

        audio_filepath = _required("audio_filepath", _is_string, "a string")
        duration = _required("duration", _is_non_negative_number, "a non-negative number")
        text = _required("text", _is_string, "a string")
        pred_text = _optional("pred_text", _is_string, "a string")
        offset = _optional("offset", _is_non_negative_number, "a non-negative number")
        provenance = _optional("provenance", _is_string, "a string")

        extra = {k: v for k, v in d.items() if k not in KNOWN_FIELDS}
        return cls(
            audio_filepath=audio_filepath,
            duration=duration,
            text=text,
            pred_text=pred_text,
            offset=offset,
            provenance=provenance,
            extra=extra,
            line=line,
        )


def _is_string(value):
    return isinstance(value, string_types)


def _is_non_negative_number(value):
    return (
        isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value) and value >= 0
    )


def dump_sample(sample, **extra_fields):
    """Serialize one sample to a manifest line (without the newline).  `extra_fields` are appended last."""
    d = sample.to_dict()
    d.update(extra_fields)
    return json.dumps(d, ensure_ascii=False, allow_nan=False)


def parse_line(raw, path=None, line=None, byte_offset=None):
    try:
        d = json.loads(raw)
    except UnicodeDecodeError as exc:
        raise ManifestError("invalid UTF-8 ({})".format(exc.reason), path=path, line=line, byte_offset=byte_offset)
    except ValueError as exc:
        raise ManifestError("malformed JSON ({})".format(exc), path=path, line=line, byte_offset=byte_offset)
    return Sample.from_dict(d, path=path, line=line, byte_offset=byte_offset)


def iter_manifest_lines(path):
    """
    Yield `(line_number, byte_offset, raw_bytes)` for every non-blank line of `path`.

    `line_number` is 1-based and `byte_offset` is the offset of the line's first byte in the file.
    """
    try:
        f = open(path, "rb")
    except OSError as exc:
        raise DataError("cannot read manifest {}: {}".format(path, exc.strerror or exc))

    with f:
        byte_offset = 0
        for line_number, raw in enumerate(f, start=1):
            if raw.strip():
                yield line_number, byte_offset, raw
            byte_offset += len(raw)


def read_manifest(path):
    """Lazily yield a `Sample` per manifest line."""
    for line_number, byte_offset, raw in iter_manifest_lines(path):
        yield parse_line(raw, path=path, line=line_number, byte_offset=byte_offset)


def write_manifest(samples, path):
    """Write `samples` to `path`, one object per line.  Returns the number of lines written."""
    count = 0
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for sample in samples:
                f.write(dump_sample(sample))
                f.write("\n")
                count += 1
    except OSError as exc:
        raise DataError("cannot write manifest {}: {}".format(path, exc.strerror or exc))
    logger.debug("wrote %d lines to %s", count, path)
    return count


__all__ = [
    "Sample",
    "KNOWN_FIELDS",
    "dump_sample",
    "parse_line",
    "iter_manifest_lines",
    "read_manifest",
    "write_manifest",
]
