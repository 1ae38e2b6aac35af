"""
Command-line entry point: `pyarabcorpus {process,score,segment-vtt,dedup,split-by-ids,stats}`.

Exit codes: 0 on success, 1 for data errors (bad manifests, unreadable or malformed inputs), 2 for config and
usage errors.
"""

import argparse
import json
import logging
import os
import sys

from . import __version__
from .alphabet import ALPHABET_PRESETS, LETTER_NORM_PRESETS, get_letter_norm_rules
from .constants import DEFAULT_ALPHABET_PRESET, DEFAULT_LETTER_NORM_PRESET
from .dedup import iter_overlap, load_reference_keys
from .exceptions import ConfigError, DataError
from .manifest import dump_sample, read_manifest, write_manifest
from .metrics import ScoreMode, ScoreOptions, format_report, score_manifest
from .pipeline import format_summary, load_config, run_pipeline
from .segment_vtt import SegmentConfig, segment_vtt_dir
from .splits import load_id_list, matches_ids
from .stats import compute_stats, format_stats

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s [%(filename)s:%(lineno)d] %(message)s"
DEFAULT_CONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), "configs", "default.yaml")

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_CONFIG_ERROR = 2


def _write_json(document, path=None):
    text = json.dumps(document, ensure_ascii=False, indent=2, sort_keys=True)
    if path is None:
        print(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
            f.write("\n")
    except OSError as exc:
        raise DataError("cannot write {}: {}".format(path, exc.strerror or exc))


def cmd_process(args):
    cfg = load_config(args.config)
    summary = run_pipeline(
        cfg, args.input, args.output, audit_path=args.audit, workers=args.workers, flags_path=args.flags
    )
    if args.format == "machine":
        _write_json(summary.to_dict())
    else:
        print(format_summary(summary))
    return EXIT_OK


def cmd_score(args):
    options = ScoreOptions(split_punct=args.split_punct, cer_include_spaces=args.cer_include_spaces)
    report = score_manifest(
        read_manifest(args.manifest), ScoreMode(args.mode), get_letter_norm_rules(args.letter_norm), options
    )
    if args.per_sample:
        try:
            with open(args.per_sample, "w", encoding="utf-8", newline="\n") as f:
                for score in report.per_sample:
                    f.write(json.dumps(score.to_dict(), ensure_ascii=False))
                    f.write("\n")
        except OSError as exc:
            raise DataError("cannot write {}: {}".format(args.per_sample, exc.strerror or exc))
    if args.report:
        _write_json(report.to_dict(), args.report)
    if args.format == "machine":
        _write_json(report.to_dict())
    else:
        print(format_report(report))
    return EXIT_OK


def cmd_segment_vtt(args):
    cfg = SegmentConfig(
        max_duration=args.max_duration,
        max_gap=args.max_gap,
        strip_enumeration=not args.no_strip_enumeration,
        audio_ext=args.audio_ext,
        audio_dir=args.audio_dir,
    )
    failures = []

    def samples():
        for path, file_samples, error in segment_vtt_dir(args.vtt_dir, cfg, workers=args.workers):
            if error is not None:
                logger.error("skipping %s", error)
                failures.append(path)
                continue
            for sample in file_samples:
                yield sample

    count = write_manifest(samples(), args.output)
    logger.info("wrote %d segments to %s", count, args.output)
    if failures:
        logger.error("%d vtt file(s) failed to parse", len(failures))
        return EXIT_DATA_ERROR
    return EXIT_OK


def cmd_dedup(args):
    rules = get_letter_norm_rules(args.letter_norm)
    keys = load_reference_keys(args.reference, rules)
    kept = removed = 0
    try:
        with open(args.output, "w", encoding="utf-8", newline="\n") as out_f, open(
            args.removed, "w", encoding="utf-8", newline="\n"
        ) as removed_f:
            for sample, overlapping in iter_overlap(read_manifest(args.target), keys, rules):
                if overlapping:
                    removed_f.write(dump_sample(sample))
                    removed_f.write("\n")
                    removed += 1
                else:
                    out_f.write(dump_sample(sample))
                    out_f.write("\n")
                    kept += 1
    except OSError as exc:
        raise DataError("cannot write {}: {}".format(exc.filename, exc.strerror or exc))
    logger.info("dedup %s: kept %d, removed %d", args.target, kept, removed)
    print("kept {}, removed {}".format(kept, removed))
    return EXIT_OK


def cmd_split_by_ids(args):
    ids = load_id_list(args.ids)
    listed = rest = 0
    try:
        with open(args.output, "w", encoding="utf-8", newline="\n") as out_f, open(
            args.rest, "w", encoding="utf-8", newline="\n"
        ) as rest_f:
            for sample in read_manifest(args.input):
                if matches_ids(sample, ids):
                    out_f.write(dump_sample(sample))
                    out_f.write("\n")
                    listed += 1
                else:
                    rest_f.write(dump_sample(sample))
                    rest_f.write("\n")
                    rest += 1
    except OSError as exc:
        raise DataError("cannot write {}: {}".format(exc.filename, exc.strerror or exc))
    logger.info("split %s by %d ids: %d listed, %d rest", args.input, len(ids), listed, rest)
    print("listed {}, rest {}".format(listed, rest))
    return EXIT_OK


def cmd_stats(args):
    report = compute_stats(read_manifest(args.input), args.alphabet)
    if args.format == "machine":
        _write_json(report.to_dict())
    else:
        print(format_stats(report))
    return EXIT_OK


def _positive_int(value):
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer, got {!r}".format(value))
    if number < 1:
        raise argparse.ArgumentTypeError("expected an integer >= 1, got {}".format(number))
    return number


def build_parser():
    parser = argparse.ArgumentParser(prog="pyarabcorpus", description="Arabic speech corpus preprocessing.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="log warnings and errors only")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    p = subparsers.add_parser("process", help="run a pipeline config over a manifest")
    p.add_argument("--config", default=DEFAULT_CONFIG, help="pipeline YAML (default: the packaged default.yaml)")
    p.add_argument("--in", dest="input", required=True, help="input manifest")
    p.add_argument("--out", dest="output", required=True, help="manifest of kept samples")
    p.add_argument("--audit", help="manifest of dropped samples (default: <out>.audit.jsonl)")
    p.add_argument("--flags", help="manifest of flagged samples (default: <out>.flags.jsonl)")
    p.add_argument("--workers", type=_positive_int, help="worker processes (overrides the config)")
    p.add_argument("--format", choices=("table", "machine"), default="table")
    p.set_defaults(func=cmd_process)

    p = subparsers.add_parser("score", help="WER/CER of pred_text against text")
    p.add_argument("--manifest", required=True)
    p.add_argument("--mode", choices=[m.value for m in ScoreMode], default=ScoreMode.PLAIN.value)
    p.add_argument("--letter-norm", choices=sorted(LETTER_NORM_PRESETS), default=DEFAULT_LETTER_NORM_PRESET)
    p.add_argument("--split-punct", action="store_true", help="score punctuation marks as separate words")
    p.add_argument("--cer-include-spaces", action="store_true", help="count spaces as CER characters")
    p.add_argument("--per-sample", help="write per-sample scores to this JSON-lines file")
    p.add_argument("--report", help="write the machine-readable report to this file")
    p.add_argument("--format", choices=("table", "machine"), default="table")
    p.set_defaults(func=cmd_score)

    p = subparsers.add_parser("segment-vtt", help="pack WebVTT cues into manifest segments")
    p.add_argument("--vtt-dir", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--max-duration", type=float, default=SegmentConfig.max_duration)
    p.add_argument("--max-gap", type=float, default=None)
    p.add_argument("--no-strip-enumeration", action="store_true")
    p.add_argument("--audio-ext", default=SegmentConfig.audio_ext)
    p.add_argument("--audio-dir", help="directory of the source audio (default: next to each .vtt file)")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_segment_vtt)

    p = subparsers.add_parser("dedup", help="remove target samples whose transcript occurs in a reference split")
    p.add_argument("--target", required=True)
    p.add_argument("--reference", action="append", required=True, help="reference manifest; may be repeated")
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--removed", required=True)
    p.add_argument("--letter-norm", choices=sorted(LETTER_NORM_PRESETS), default=DEFAULT_LETTER_NORM_PRESET)
    p.set_defaults(func=cmd_dedup)

    p = subparsers.add_parser("split-by-ids", help="partition a manifest by a list of recording ids")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--ids", action="append", required=True, help="file with one recording id per line; may be repeated")
    p.add_argument("--out", dest="output", required=True, help="manifest of samples whose id is listed")
    p.add_argument("--rest", required=True, help="manifest of the other samples")
    p.set_defaults(func=cmd_split_by_ids)

    p = subparsers.add_parser("stats", help="hours, diacritization and symbol statistics")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--alphabet", choices=sorted(ALPHABET_PRESETS), default=DEFAULT_ALPHABET_PRESET)
    p.add_argument("--format", choices=("table", "machine"), default="table")
    p.set_defaults(func=cmd_stats)

    return parser


def configure_logging(verbose=False, quiet=False):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(format=LOG_FORMAT, level=level)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)

    try:
        return args.func(args)
    except ConfigError as exc:
        logger.error("config error: %s", exc)
        return EXIT_CONFIG_ERROR
    except DataError as exc:
        logger.error("data error: %s", exc)
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
