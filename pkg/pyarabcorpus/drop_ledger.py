import logging
from collections import Counter

from .constants import DROP, FLAG, LEVELS

logger = logging.getLogger(__name__)


class DropLedger(object):
    """
    Tally of what a pipeline run did to its samples.

    Counts are kept per `(level, step, reason)`; individual dropped samples go to the audit manifest, not here,
    so the ledger stays small however long the manifest is.  Ledgers built by separate workers combine with
    `merge_with`, which is associative and commutative.
    """

    def __init__(self, logging=True):
        self._counts = Counter()
        self._input_count = 0
        self._input_seconds = 0.0
        self._kept_count = 0
        self._kept_seconds = 0.0
        self._logging = logging
        self._already_logged = set()

    @staticmethod
    def create_entry(level, step, reason, detail=None):
        if level not in LEVELS:
            raise ValueError("Level `{}` is not recognized.".format(level))
        entry = {"level": level, "step": step, "reason": reason}
        if detail is not None:
            entry["detail"] = detail
        return entry

    def merge_with(self, other_ledger):
        assert isinstance(other_ledger, DropLedger)

        self._counts.update(other_ledger._counts)
        self._input_count += other_ledger._input_count
        self._input_seconds += other_ledger._input_seconds
        self._kept_count += other_ledger._kept_count
        self._kept_seconds += other_ledger._kept_seconds
        self._already_logged |= other_ledger._already_logged
        return self

    def add_input(self, sample):
        self._input_count += 1
        self._input_seconds += sample.duration

    def add_kept(self, sample):
        self._kept_count += 1
        self._kept_seconds += sample.duration

    def add_drop(self, step, decision):
        entry = self.create_entry(DROP, step, decision.reason.value, decision.detail)
        self.add_entry(entry)
        return entry

    def add_flag(self, step, message):
        entry = self.create_entry(FLAG, step, "flag", message)
        self.add_entry(entry)
        return entry

    def add_entry(self, entry):
        key = (entry["level"], entry["step"], entry["reason"])
        self._counts[key] += 1

        if self._logging:
            # One line per kind of event; a million identical drops are not worth a million log lines.
            if key not in self._already_logged:
                log_message = "{} {}: {} ({})".format(
                    entry["level"], entry["step"], entry["reason"], entry.get("detail")
                )
                if entry["level"] == FLAG:
                    logger.warning(log_message)
                else:
                    logger.debug(log_message)
                self._already_logged.add(key)

    @property
    def input_count(self):
        return self._input_count

    @property
    def kept_count(self):
        return self._kept_count

    @property
    def drop_count(self):
        return sum(n for (level, _, _), n in self._counts.items() if level == DROP)

    @property
    def flag_count(self):
        return sum(n for (level, _, _), n in self._counts.items() if level == FLAG)

    @property
    def input_hours(self):
        return self._input_seconds / 3600.0

    @property
    def kept_hours(self):
        return self._kept_seconds / 3600.0

    def get_counts(self, level=DROP):
        """`{step: {reason: count}}` for one level, steps and reasons sorted."""
        ret = {}
        for (entry_level, step, reason), n in sorted(self._counts.items()):
            if entry_level != level:
                continue
            ret.setdefault(step, {})[reason] = n
        return ret

    def get_drop_counts(self):
        return self.get_counts(DROP)

    def get_flag_counts(self):
        return self.get_counts(FLAG)

    def is_conserved(self):
        """Every input sample was either kept or dropped exactly once."""
        return self._kept_count + self.drop_count == self._input_count


__all__ = ["DropLedger"]
