"""Validation reports: an ordered record of checked laws and their witnesses."""

from __future__ import annotations

MAX_WITNESSES = 10


class Report:
    """Ordered map from law name to status.

    A report is *empty* (``len(report) == 0``) exactly when no law failed,
    which is how checkers signal validity.
    """

    def __init__(self):
        self._laws: dict[str, dict] = {}
        self.summary: dict = {}

    def _entry(self, law):
        if law not in self._laws:
            self._laws[law] = {"status": "ok", "witnesses": [], "failures": 0}
        return self._laws[law]

    def ok(self, law, status="ok"):
        entry = self._entry(law)
        if entry["failures"] == 0:
            entry["status"] = status
        return self

    def fail(self, law, witness):
        entry = self._entry(law)
        entry["status"] = "fail"
        entry["failures"] += 1
        if len(entry["witnesses"]) < MAX_WITNESSES:
            entry["witnesses"].append(witness)
        return self

    def check(self, law, holds, witness=None):
        if holds:
            self.ok(law)
        else:
            self.fail(law, witness)
        return holds

    def merge(self, other: "Report", prefix=""):
        for law, entry in other._laws.items():
            mine = self._entry(prefix + law)
            if entry["failures"]:
                mine["status"] = "fail"
                mine["failures"] += entry["failures"]
                room = MAX_WITNESSES - len(mine["witnesses"])
                mine["witnesses"].extend(entry["witnesses"][:room])
            elif mine["failures"] == 0:
                mine["status"] = entry["status"]
        for key, value in other.summary.items():
            self.summary.setdefault(prefix + key, value)
        return self

    @property
    def laws(self):
        return list(self._laws)

    def status(self, law):
        return self._laws[law]["status"]

    def witness(self, law):
        ws = self._laws[law]["witnesses"]
        return ws[0] if ws else None

    def witnesses(self, law):
        return list(self._laws[law]["witnesses"])

    @property
    def violations(self):
        return [(law, w) for law, e in self._laws.items() for w in e["witnesses"]]

    @property
    def failed_laws(self):
        return [law for law, e in self._laws.items() if e["failures"]]

    @property
    def passed(self):
        return not self.failed_laws

    def __len__(self):
        return sum(e["failures"] for e in self._laws.values())

    def __contains__(self, law):
        return law in self._laws

    def __repr__(self):
        return f"Report(failed={self.failed_laws!r}, checked={len(self._laws)})"

    def rows(self):
        """One ``{law, status, witness}`` row per law, in check order."""
        return [
            {"law": law, "status": e["status"], "witness": e["witnesses"][0] if e["witnesses"] else None}
            for law, e in self._laws.items()
        ]
