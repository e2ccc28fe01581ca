"""Structured verdicts with counterexample witnesses."""

from dataclasses import dataclass, field

PASS, FAIL, NA = "pass", "fail", "n/a"

DEFAULT_WITNESS_CAP = 10


@dataclass
class CheckReport:
    name: str
    verdict: str = PASS
    witnesses: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    truncated: bool = False
    cap: int = DEFAULT_WITNESS_CAP
    violations: int = 0

    @property
    def passed(self):
        return self.verdict == PASS

    @property
    def ok(self):
        """Not a failure (pass, or outside the check's hypotheses)."""
        return self.verdict != FAIL

    def fail(self, witness):
        self.verdict = FAIL
        self.violations += 1
        if len(self.witnesses) < self.cap:
            self.witnesses.append(witness)
        else:
            self.truncated = True

    def to_dict(self):
        return {
            "id": self.name,
            "verdict": self.verdict,
            "witnesses": [_jsonable(w) for w in self.witnesses],
            "truncated": self.truncated,
            "stats": {k: _jsonable(v) for k, v in self.stats.items()},
        }

    def __str__(self):
        s = f"{self.name}: {self.verdict}"
        if self.witnesses:
            s += f" ({self.violations} violations, e.g. {self.witnesses[0]!r})"
        return s


def not_applicable(name, reason, **stats):
    return CheckReport(name, NA, stats={"reason": reason, **stats})


@dataclass
class HypothesisReport:
    title: str
    conditions: list = field(default_factory=list)

    def add(self, report):
        self.conditions.append(report)
        return report

    def __getitem__(self, cid):
        for c in self.conditions:
            if c.name == cid:
                return c
        raise KeyError(cid)

    def __contains__(self, cid):
        return any(c.name == cid for c in self.conditions)

    @property
    def passed(self):
        return all(c.ok for c in self.conditions)

    @property
    def failed_ids(self):
        return [c.name for c in self.conditions if not c.ok]

    def to_dict(self):
        return {
            "suite": self.title,
            "verdict": PASS if self.passed else FAIL,
            "checks": [c.to_dict() for c in self.conditions],
        }

    def __str__(self):
        return "\n".join([f"[{self.title}] {'pass' if self.passed else 'fail'}"]
                         + ["  " + str(c) for c in self.conditions])


def _jsonable(x):
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x
