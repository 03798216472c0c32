"""Check reports with counterexample witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tensor import MultilinearMap, maps_equal

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class Check:
    name: str
    status: str
    witness: dict | None = None
    detail: str = ""

    @property
    def passed(self):
        return self.status == PASS

    def as_dict(self):
        d = {"name": self.name, "status": self.status}
        if self.witness:
            d["witness"] = self.witness
        if self.detail:
            d["detail"] = self.detail
        return d

    def line(self):
        s = f"{self.status.upper():4} {self.name}"
        if self.witness:
            w = self.witness
            s += f"  at out={w.get('out_labels', w.get('out'))} in={w.get('in_labels', w.get('in'))}: {w.get('lhs')} != {w.get('rhs')}"
        if self.detail:
            s += f"  ({self.detail})"
        return s


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def __bool__(self):
        return self.ok

    def failures(self):
        return [c for c in self.checks if c.status == FAIL]

    def failed_names(self):
        return [c.name for c in self.failures()]

    def __getitem__(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self):
        return [c.name for c in self.checks]

    def add(self, name, ok, witness=None, detail=""):
        self.checks.append(Check(name, PASS if ok else FAIL, witness, detail))
        return ok

    def skip(self, name, detail=""):
        self.checks.append(Check(name, SKIP, None, detail))

    def compare(self, name, lhs: MultilinearMap, rhs: MultilinearMap):
        """Record an entrywise equality check between two maps."""
        ok, w = maps_equal(lhs, rhs)
        witness = None
        if not ok:
            outs, ins = w.labels(lhs)
            witness = w.as_dict()
            witness["out_labels"] = list(outs)
            witness["in_labels"] = list(ins)
        return self.add(name, ok, witness)

    def compare_arrays(self, name, lhs, rhs, domain, codomain, ctx):
        """Like ``compare`` for raw arrays laid out as codomain legs then domain legs."""
        return self.compare(
            name,
            MultilinearMap(domain, codomain, np.asarray(lhs, dtype=object), ctx),
            MultilinearMap(domain, codomain, np.asarray(rhs, dtype=object), ctx),
        )

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witness, c.detail))
        return self

    def as_dict(self):
        return {"title": self.title, "ok": self.ok, "checks": [c.as_dict() for c in self.checks]}

    def text(self):
        lines = [f"# {self.title}"]
        lines += [c.line() for c in self.checks]
        lines.append(f"# {'OK' if self.ok else 'FAILED'}: {sum(c.passed for c in self.checks)} passed, "
                     f"{len(self.failures())} failed, {sum(c.status == SKIP for c in self.checks)} skipped")
        return "\n".join(lines)

    def __str__(self):
        return self.text()
