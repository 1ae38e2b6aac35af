"""
Declarative pipelines over manifests.

A `PipelineConfig` lists steps by processor name.  `run_pipeline` validates and compiles every step before the
input is opened, then streams the manifest through a process pool in batches.  Kept samples go to the output
manifest and every dropped sample goes to the audit manifest, both in input order.
"""

import logging
import os
import time
from dataclasses import dataclass, field
from typing import Optional, Tuple

import yaml
from six import string_types
from titlecase import titlecase

from . import processors  # noqa: F401  (registers the built-in steps)
from .alphabet import get_alphabet
from .constants import DEFAULT_ALPHABET_PRESET
from .drop_ledger import DropLedger
from .exceptions import ConfigError, DataError
from .filters import DropDecision
from .manifest import Sample, dump_sample, iter_manifest_lines, parse_line
from .parallel import ordered_map
from .registry import get_processor
from .utils import chunked

logger = logging.getLogger(__name__)

DEFAULT_CHUNK_SIZE = 2048
AUDIT_SUFFIX = ".audit.jsonl"
FLAGS_SUFFIX = ".flags.jsonl"
PARTIAL_SUFFIX = ".partial"


@dataclass(frozen=True)
class StepConfig(object):
    name: str
    params: dict = field(default_factory=dict, hash=False)

    @classmethod
    def from_value(cls, value):
        if isinstance(value, string_types):
            return cls(value)
        if not isinstance(value, dict):
            raise ConfigError("A step must be a name or a mapping with `name` and `params`, got {!r}".format(value))
        unknown = set(value) - {"name", "params"}
        if unknown:
            raise ConfigError("Unknown step key(s): {}".format(", ".join(sorted(unknown))))
        if "name" not in value:
            raise ConfigError("Step {!r} has no `name`.".format(value))
        params = value.get("params") or {}
        if not isinstance(params, dict):
            raise ConfigError("Params of step `{}` must be a mapping.".format(value["name"]))
        return cls(value["name"], dict(params))


@dataclass(frozen=True)
class PipelineConfig(object):
    steps: Tuple[StepConfig, ...] = ()
    workers: int = 1
    audit_path: Optional[str] = None
    flags_path: Optional[str] = None
    alphabet_preset: str = DEFAULT_ALPHABET_PRESET
    chunk_size: int = DEFAULT_CHUNK_SIZE

    def __post_init__(self):
        for name in ("workers", "chunk_size"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ConfigError("`{}` must be an integer >= 1, got {!r}".format(name, value))
        for name in ("audit_path", "flags_path"):
            value = getattr(self, name)
            if value is not None and not isinstance(value, string_types):
                raise ConfigError("`{}` must be a path, got {!r}".format(name, value))
        object.__setattr__(self, "steps", tuple(self.steps))

    @classmethod
    def from_dict(cls, d):
        if d is None:
            d = {}
        if not isinstance(d, dict):
            raise ConfigError("Pipeline config must be a mapping, got {}".format(type(d).__name__))
        unknown = set(d) - {"steps", "workers", "audit_path", "flags_path", "alphabet_preset", "chunk_size"}
        if unknown:
            raise ConfigError("Unknown pipeline setting(s): {}".format(", ".join(sorted(unknown))))
        steps = d.get("steps") or []
        if not isinstance(steps, list):
            raise ConfigError("`steps` must be a list.")
        kwargs = {k: v for k, v in d.items() if k != "steps"}
        return cls(steps=tuple(StepConfig.from_value(s) for s in steps), **kwargs)

    def validate(self):
        """
        Resolve every step and parse its params, without touching data.

        Returns `[(processor, params)]`.  Raises `ProcessorNotRegisteredError` or `ConfigError`.
        """
        get_alphabet(self.alphabet_preset)
        validated = []
        for step in self.steps:
            proc = get_processor(step.name)
            validated.append((proc, proc.parse_params(step.params)))
        return validated

    def compile(self):
        context = {"alphabet": get_alphabet(self.alphabet_preset)}
        return CompiledPipeline([proc.bind(params, context) for proc, params in self.validate()])


def load_config(path):
    try:
        with open(path, encoding="utf-8") as f:
            d = yaml.safe_load(f)
    except OSError as exc:
        raise ConfigError("cannot read config {}: {}".format(path, exc.strerror or exc))
    except yaml.YAMLError as exc:
        raise ConfigError("invalid YAML in {}: {}".format(path, exc))
    return PipelineConfig.from_dict(d)


class CompiledPipeline(object):
    def __init__(self, steps):
        self.steps = steps

    @property
    def step_names(self):
        return [step.name for step in self.steps]

    def process(self, sample, ledger, flags=None):
        """
        Run `sample` through every step.

        Returns `(sample, None, None)` when it is kept (possibly transformed) or `(None, decision, step_name)` when
        a step drops it.  Flags raised on the way are counted in `ledger` and, when `flags` is a list, appended to
        it as `(step_name, message)`.
        """
        ledger.add_input(sample)
        for step in self.steps:
            ret = step(sample)
            sample, decision = _process_step_results(ret, step.name, sample, ledger, flags)
            if decision is not None:
                ledger.add_drop(step.name, decision)
                return None, decision, step.name
        ledger.add_kept(sample)
        return sample, None, None


def _process_step_results(ret, step_name, sample, ledger, flags=None):
    """Process the return of a step.  Accepts None, samples, decisions, flag strings and lists of those."""
    if ret is None:
        return sample, None
    if isinstance(ret, Sample):
        return ret, None
    if isinstance(ret, DropDecision):
        return sample, (None if ret.kept else ret)
    if isinstance(ret, string_types):
        ledger.add_flag(step_name, ret)
        if flags is not None:
            flags.append((step_name, ret))
        return sample, None
    if isinstance(ret, (list, tuple)):
        for item in ret:
            sample, decision = _process_step_results(item, step_name, sample, ledger, flags)
            if decision is not None:
                return sample, decision
        return sample, None
    raise TypeError("Step `{}` returned an unsupported value: {!r}".format(step_name, ret))


# Per-process state, set by `_init_worker`.
_worker_state = None


def _init_worker(pipeline, path):
    global _worker_state
    _worker_state = (pipeline, path)


def _process_batch(batch):
    pipeline, path = _worker_state
    ledger = DropLedger()
    output, audit, flagged = [], [], []
    for line_no, byte_offset, raw in batch:
        sample = parse_line(raw, path=path, line=line_no, byte_offset=byte_offset)
        flags = []
        kept, decision, step_name = pipeline.process(sample, ledger, flags)
        # Audit and flag lines keep the sample as it was read, so each can be replayed from its line.
        for flag_step, message in flags:
            flagged.append(dump_sample(sample, flag_step=flag_step, flag_detail=message))
        if kept is not None:
            output.append(dump_sample(kept))
        else:
            audit.append(
                dump_sample(
                    sample, drop_reason=decision.reason.value, drop_detail=decision.detail, drop_step=step_name
                )
            )
    return output, audit, flagged, ledger


@dataclass
class PipelineSummary(object):
    ledger: DropLedger
    elapsed_seconds: float = 0.0
    output_path: Optional[str] = None
    audit_path: Optional[str] = None
    flags_path: Optional[str] = None

    @property
    def lines_per_second(self):
        if self.elapsed_seconds <= 0:
            return 0.0
        return self.ledger.input_count / self.elapsed_seconds

    def to_dict(self):
        return {
            "input": self.ledger.input_count,
            "kept": self.ledger.kept_count,
            "dropped": self.ledger.drop_count,
            "flagged": self.ledger.flag_count,
            "input_hours": round(self.ledger.input_hours, 3),
            "kept_hours": round(self.ledger.kept_hours, 3),
            "drops": self.ledger.get_drop_counts(),
            "flags": self.ledger.get_flag_counts(),
            "elapsed_seconds": round(self.elapsed_seconds, 3),
            "lines_per_second": round(self.lines_per_second, 1),
        }


def _sidecar_path(output_path, suffix):
    root, ext = os.path.splitext(str(output_path))
    if ext in (".jsonl", ".json"):
        return root + suffix
    return str(output_path) + suffix


def default_audit_path(output_path):
    return _sidecar_path(output_path, AUDIT_SUFFIX)


def default_flags_path(output_path):
    return _sidecar_path(output_path, FLAGS_SUFFIX)


def _check_readable(path):
    try:
        with open(path, "rb"):
            pass
    except OSError as exc:
        raise DataError("cannot read manifest {}: {}".format(path, exc.strerror or exc))


def _remove_quietly(path):
    try:
        os.remove(path)
    except OSError:
        pass


def _write_lines(f, lines):
    for line in lines:
        f.write(line)
        f.write("\n")


def run_pipeline(cfg, input_path, output_path, audit_path=None, workers=None, flags_path=None):
    """
    Run `cfg` over the manifest at `input_path`.

    Kept samples are written to `output_path`, drops to `audit_path` (default: `cfg.audit_path`, then a sidecar
    `<output>.audit.jsonl`) and flagged samples to `flags_path` (likewise, `<output>.flags.jsonl`).  `workers`
    overrides `cfg.workers`.  Every config error and an unreadable input are reported before anything is written.
    The files are written under a `.partial` suffix and renamed only once the whole input went through, so a
    failed run leaves none of them behind.  Returns a `PipelineSummary`.
    """
    if isinstance(cfg, dict):
        cfg = PipelineConfig.from_dict(cfg)
    workers = cfg.workers if workers is None else workers
    if isinstance(workers, bool) or not isinstance(workers, int) or workers < 1:
        raise ConfigError("`workers` must be an integer >= 1, got {!r}".format(workers))
    audit_path = audit_path or cfg.audit_path or default_audit_path(output_path)
    flags_path = flags_path or cfg.flags_path or default_flags_path(output_path)
    final_paths = [str(output_path), str(audit_path), str(flags_path)]
    if len(set(os.path.abspath(p) for p in final_paths)) != len(final_paths):
        raise ConfigError("output, audit and flags paths must differ: {}".format(", ".join(final_paths)))

    pipeline = cfg.compile()
    _check_readable(input_path)
    logger.info("pipeline %s, %d worker(s)", " -> ".join(pipeline.step_names) or "(identity)", workers)

    ledger = DropLedger(logging=False)
    started = time.monotonic()
    batches = chunked(iter_manifest_lines(input_path), cfg.chunk_size)
    partial_paths = [path + PARTIAL_SUFFIX for path in final_paths]
    try:
        with open(partial_paths[0], "w", encoding="utf-8", newline="\n") as out_f, open(
            partial_paths[1], "w", encoding="utf-8", newline="\n"
        ) as audit_f, open(partial_paths[2], "w", encoding="utf-8", newline="\n") as flags_f:
            for output, audit, flagged, batch_ledger in ordered_map(
                _process_batch,
                batches,
                workers=workers,
                initializer=_init_worker,
                initargs=(pipeline, str(input_path)),
            ):
                _write_lines(out_f, output)
                _write_lines(audit_f, audit)
                _write_lines(flags_f, flagged)
                ledger.merge_with(batch_ledger)
        for partial, final in zip(partial_paths, final_paths):
            os.replace(partial, final)
    except OSError as exc:
        raise DataError("cannot write {}: {}".format(exc.filename or output_path, exc.strerror or exc))
    finally:
        # Only left over when the run failed.
        for partial in partial_paths:
            _remove_quietly(partial)

    summary = PipelineSummary(ledger, time.monotonic() - started, *final_paths)
    assert ledger.is_conserved(), "kept + dropped != input"
    logger.info(
        "kept %d of %d samples (%.2f of %.2f h), %d dropped, %d flagged, %.0f lines/s",
        ledger.kept_count,
        ledger.input_count,
        ledger.kept_hours,
        ledger.input_hours,
        ledger.drop_count,
        ledger.flag_count,
        summary.lines_per_second,
    )
    return summary


def format_summary(summary):
    ledger = summary.ledger
    rows = [
        ("input samples", str(ledger.input_count)),
        ("kept samples", str(ledger.kept_count)),
        ("dropped samples", str(ledger.drop_count)),
        ("flagged samples", str(ledger.flag_count)),
        ("input hours", "{:.3f}".format(ledger.input_hours)),
        ("kept hours", "{:.3f}".format(ledger.kept_hours)),
        ("elapsed", "{:.2f} s".format(summary.elapsed_seconds)),
        ("throughput", "{:.0f} lines/s".format(summary.lines_per_second)),
    ]
    width = max(len(name) for name, _ in rows)
    lines = ["{}  {}".format(titlecase(name).ljust(width), value) for name, value in rows]

    def format_counts(title, counts):
        if not counts:
            return
        lines.append("")
        lines.append(title)
        for step, reasons in counts.items():
            for reason, n in reasons.items():
                lines.append("  {:<16} {:<24} {}".format(step, titlecase(reason.replace("_", " ")), n))

    format_counts("Drops by step:", ledger.get_drop_counts())
    format_counts("Flags by step:", ledger.get_flag_counts())
    return "\n".join(lines)


__all__ = [
    "StepConfig",
    "PipelineConfig",
    "CompiledPipeline",
    "PipelineSummary",
    "load_config",
    "default_audit_path",
    "default_flags_path",
    "run_pipeline",
    "format_summary",
]
