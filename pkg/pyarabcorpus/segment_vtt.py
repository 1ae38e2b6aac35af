"""
WebVTT subtitles to manifest samples.

Cues are parsed from `.vtt` files, leading list numbering is stripped from their text, and consecutive cues are
packed greedily into segments no longer than `max_duration` seconds.  Each segment becomes a manifest line that
points at the source audio with an `offset` and `duration` instead of pre-cut audio.
"""

import html
import io
import logging
import os
from dataclasses import dataclass, replace
from functools import lru_cache
from pathlib import Path
from typing import Optional

import regex
import webvtt

from .alphabet import collapse_whitespace
from .exceptions import ConfigError, VttParseError
from .manifest import Sample
from .parallel import ordered_map
from .utils import yield_all

logger = logging.getLogger(__name__)

_LINE_BREAK = regex.compile(r"\r\n|\r|\n")
_HEADER = regex.compile(r"^WEBVTT(?:[ \t].*)?$")
_TIMESTAMP = r"(?:(\d+):)?([0-5]\d):([0-5]\d)\.(\d{3})"
_TIMING_LINE = regex.compile(r"^\s*" + _TIMESTAMP + r"[ \t]+-->[ \t]+" + _TIMESTAMP + r"(?:[ \t].*)?$")
_TAG = regex.compile(r"<[^>]*>")
_SKIPPED_BLOCKS = ("NOTE", "STYLE", "REGION")
# MalformedCaptionError only exists in some webvtt-py releases.
_WEBVTT_ERRORS = tuple(
    getattr(webvtt.errors, name)
    for name in ("MalformedFileError", "MalformedCaptionError")
    if hasattr(webvtt.errors, name)
)

DEFAULT_ENUMERATION_PATTERNS = (r"[0-9\u0660-\u0669\u06f0-\u06f9]+[.)\-\u060c]\s+",)


@dataclass(frozen=True)
class Cue(object):
    start: float
    end: float
    text: str

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError("cue must satisfy 0 <= start < end, got {} --> {}".format(self.start, self.end))


@dataclass(frozen=True)
class Segment(object):
    start: float
    end: float
    text: str
    cue_count: int

    @property
    def duration(self):
        return self.end - self.start


@dataclass(frozen=True)
class SegmentConfig(object):
    max_duration: float = 20.0
    # Largest silence allowed between two cues of one segment; `None` means unlimited.
    max_gap: Optional[float] = None
    strip_enumeration: bool = True
    enumeration_patterns: tuple = DEFAULT_ENUMERATION_PATTERNS
    audio_ext: str = ".wav"
    audio_dir: Optional[str] = None

    def __post_init__(self):
        if self.max_duration <= 0:
            raise ConfigError("max_duration must be positive, got {}".format(self.max_duration))
        if self.max_gap is not None and self.max_gap < 0:
            raise ConfigError("max_gap must be non-negative, got {}".format(self.max_gap))
        patterns = tuple(yield_all(self.enumeration_patterns))
        for pattern in patterns:
            try:
                regex.compile(pattern)
            except regex.error as exc:
                raise ConfigError("Invalid enumeration pattern {!r}: {}".format(pattern, exc))
        object.__setattr__(self, "enumeration_patterns", patterns)

    @classmethod
    def from_params(cls, params):
        params = dict(params or {})
        unknown = set(params) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError("Unknown segmentation param(s): {}".format(", ".join(sorted(unknown))))
        return cls(**params)


def _seconds(hours, minutes, seconds, millis):
    return int(hours or 0) * 3600 + int(minutes) * 60 + int(seconds) + int(millis) / 1000.0


def _timestamp(seconds):
    millis = int(round(seconds * 1000))
    return "{:02d}:{:02d}:{:02d}.{:03d}".format(
        millis // 3600000, millis // 60000 % 60, millis // 1000 % 60, millis % 1000
    )


def _clean_payload(text):
    parts = []
    for line in _LINE_BREAK.split(text):
        line = collapse_whitespace(html.unescape(_TAG.sub("", line)))
        if line:
            parts.append(line)
    return " ".join(parts)


def _iter_blocks(lines, first_line):
    """Yield blocks as lists of `(line_number, line)`, split on blank lines."""
    block = []
    for number, line in enumerate(lines[first_line:], start=first_line + 1):
        if line.strip():
            block.append((number, line))
        elif block:
            yield block
            block = []
    if block:
        yield block


def _is_skipped_block(first):
    for keyword in _SKIPPED_BLOCKS:
        if first == keyword or (first.startswith(keyword) and first[len(keyword)] in " \t"):
            return True
    return False


def _decode(content, source):
    if isinstance(content, bytes):
        try:
            return content.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise VttParseError("not valid UTF-8 ({})".format(exc.reason), source=source)
    if content.startswith("\ufeff"):
        return content[1:]
    return content


def _scan_cue_blocks(content, source):
    """
    Check the header and every timing line, keeping line numbers for errors.

    Returns `[(line_number, start, end, payload_lines)]` for the cue blocks in file order.  NOTE, STYLE and REGION
    blocks are left out.
    """
    lines = _LINE_BREAK.split(content)
    if not lines or not _HEADER.match(lines[0]):
        raise VttParseError("missing WEBVTT header", line=1, source=source)

    # The header ends at the first blank line, or at a line that already holds a cue timing.
    first_line = 1
    while first_line < len(lines) and lines[first_line].strip() and "-->" not in lines[first_line]:
        first_line += 1

    blocks = []
    for block in _iter_blocks(lines, first_line):
        first = block[0][1].strip()
        if _is_skipped_block(first):
            continue

        if "-->" in block[0][1]:
            timing_index = 0
        elif len(block) > 1 and "-->" in block[1][1]:
            timing_index = 1
        else:
            number = block[1][0] if len(block) > 1 else block[0][0]
            raise VttParseError("expected a cue timing line", line=number, source=source)

        number, timing = block[timing_index]
        match = _TIMING_LINE.match(timing)
        if match is None:
            raise VttParseError("malformed timestamp line {!r}".format(timing.strip()), line=number, source=source)
        start = _seconds(*match.groups()[:4])
        end = _seconds(*match.groups()[4:])
        if not start < end:
            raise VttParseError("cue ends before it starts", line=number, source=source)
        blocks.append((number, start, end, [line for _, line in block[timing_index + 1 :]]))
    return blocks


def parse_vtt(content, source=None):
    """
    Parse WebVTT `content` (bytes, UTF-8 with optional BOM) into cues in file order.

    The header and timing lines are checked here so errors carry a 1-based line number; cue payloads are read by
    `webvtt` from a canonical rendering of the checked cues.  Cue identifiers, NOTE/STYLE/REGION blocks and cue
    settings are skipped; markup tags are removed and multi-line payloads are joined with single spaces.  Cues
    whose payload is empty after cleaning are dropped.
    """
    blocks = [block for block in _scan_cue_blocks(_decode(content, source), source) if block[3]]

    canonical = ["WEBVTT", ""]
    for _, start, end, payload in blocks:
        canonical.append("{} --> {}".format(_timestamp(start), _timestamp(end)))
        canonical.extend(payload)
        canonical.append("")
    try:
        captions = list(webvtt.read_buffer(io.StringIO("\n".join(canonical))))
    except _WEBVTT_ERRORS as exc:
        raise VttParseError("unreadable cue payload: {}".format(exc), source=source)
    if len(captions) != len(blocks):
        raise VttParseError(
            "{} of {} cues could not be read".format(len(blocks) - len(captions), len(blocks)), source=source
        )

    cues = []
    for (number, start, end, _), caption in zip(blocks, captions):
        text = _clean_payload(caption.text)
        if not text:
            logger.debug("%s line %d: empty cue skipped", source or "<vtt>", number)
            continue
        cues.append(Cue(start, end, text))
    return cues


def pack_cues(cues, max_dur=20.0, max_gap=None):
    """
    Greedily pack cues, in start order, into segments.

    A cue joins the open segment when the segment would still span at most `max_dur` seconds (and, with
    `max_gap`, when the silence before it is short enough); otherwise the segment is closed and the cue opens the
    next one.  A single cue longer than `max_dur` becomes a segment of its own.
    """
    segments = []
    start = end = None
    texts = []

    def close():
        segments.append(Segment(start, end, " ".join(texts), len(texts)))

    for cue in sorted(cues, key=lambda c: c.start):
        if texts:
            joined_end = max(end, cue.end)
            fits = joined_end - start <= max_dur
            if fits and max_gap is not None:
                fits = cue.start - end <= max_gap
            if fits:
                end = joined_end
                texts.append(cue.text)
                continue
            close()
        start, end, texts = cue.start, cue.end, [cue.text]

    if texts:
        close()
    return segments


@lru_cache(maxsize=None)
def _compile_enumeration(patterns):
    return tuple(regex.compile(p) for p in patterns)


def strip_enumeration(text, patterns=DEFAULT_ENUMERATION_PATTERNS):
    """Remove leading list markers such as `1. ` or `١- `, repeatedly.  Numbers inside the text stay."""
    compiled = _compile_enumeration(tuple(patterns))
    text = text.lstrip()
    stripped = True
    while stripped:
        stripped = False
        for pattern in compiled:
            match = pattern.match(text)
            if match and match.end() > 0:
                text = text[match.end() :].lstrip()
                stripped = True
    return text


def segments_to_samples(source_id, segments, provenance=None):
    for segment in segments:
        yield Sample(
            audio_filepath=source_id,
            offset=round(segment.start, 3),
            duration=round(segment.end - segment.start, 3),
            text=segment.text,
            provenance=provenance,
        )


def segment_vtt_file(path, cfg=None):
    cfg = cfg or SegmentConfig()
    path = Path(path)
    try:
        content = path.read_bytes()
    except OSError as exc:
        raise VttParseError("cannot read file: {}".format(exc.strerror or exc), source=str(path))

    cues = parse_vtt(content, source=str(path))
    if cfg.strip_enumeration:
        stripped = []
        for cue in cues:
            text = strip_enumeration(cue.text, cfg.enumeration_patterns)
            if text:
                stripped.append(replace(cue, text=text))
        cues = stripped

    segments = pack_cues(cues, cfg.max_duration, cfg.max_gap)
    audio_dir = cfg.audio_dir if cfg.audio_dir is not None else str(path.parent)
    source_id = os.path.join(audio_dir, path.stem + cfg.audio_ext)
    logger.debug("%s: %d cues packed into %d segments", path, len(cues), len(segments))
    return list(segments_to_samples(source_id, segments, provenance=path.name))


def _segment_batch(batch):
    paths, cfg = batch
    results = []
    for path in paths:
        try:
            results.append((str(path), segment_vtt_file(path, cfg), None))
        except VttParseError as exc:
            results.append((str(path), [], str(exc)))
    return results


def find_vtt_files(vtt_dir):
    return sorted(Path(vtt_dir).rglob("*.vtt"))


def segment_vtt_dir(vtt_dir, cfg=None, workers=1):
    """
    Segment every `.vtt` file under `vtt_dir` (sorted by path).

    Yields `(path, samples, error)` per file; a file that fails to parse yields no samples and the error text,
    and the remaining files are still processed.
    """
    cfg = cfg or SegmentConfig()
    files = find_vtt_files(vtt_dir)
    logger.info("segmenting %d vtt files from %s", len(files), vtt_dir)
    batches = ((files[i : i + 16], cfg) for i in range(0, len(files), 16))
    for results in ordered_map(_segment_batch, batches, workers=workers):
        for result in results:
            yield result


__all__ = [
    "Cue",
    "Segment",
    "SegmentConfig",
    "DEFAULT_ENUMERATION_PATTERNS",
    "parse_vtt",
    "pack_cues",
    "strip_enumeration",
    "segments_to_samples",
    "segment_vtt_file",
    "find_vtt_files",
    "segment_vtt_dir",
]
