"""Plain record types produced by the base-case checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class NLRecord:
    """n_L(d): first n >= n_start with 2^(d-3) n <= f(d, n)."""

    d: int
    n_L: int
    n_start: int
    crossing_margin_ok: bool

    def to_dict(self):
        return {"type": "nl", "d": self.d, "n_L": str(self.n_L), "n_start": self.n_start,
                "crossing_margin_ok": self.crossing_margin_ok}

    @classmethod
    def from_dict(cls, data):
        return cls(int(data["d"]), int(data["n_L"]), int(data["n_start"]), bool(data["crossing_margin_ok"]))


@dataclass(frozen=True)
class CheckRecord:
    step: str  # "B0", "B1" or "B2"
    d: int
    n_lo: int
    n_hi: int
    pairs_checked: int
    status: str = "passed"
    failed_at: int | None = None

    @property
    def passed(self) -> bool:
        return self.status == "passed"

    def to_dict(self):
        return {"type": "check", "step": self.step, "d": self.d, "n_lo": self.n_lo, "n_hi": self.n_hi,
                "pairs_checked": self.pairs_checked, "status": self.status,
                "failed_at": None if self.failed_at is None else str(self.failed_at)}

    @classmethod
    def from_dict(cls, data):
        fa = data.get("failed_at")
        return cls(data["step"], int(data["d"]), int(data["n_lo"]), int(data["n_hi"]),
                   int(data["pairs_checked"]), data["status"], None if fa is None else int(fa))


@dataclass(frozen=True)
class Witness:
    """One certified comparison a verdict relies on.

    kinds:
      ``tilde``      every tilde(d, n) with n_lo <= n <= n_hi is <= V, and V <= f(d, n_lo)
      ``larman-gt``  V = 2^(d-3) n_lo > f(d, n_lo)
      ``larman-le``  V = 2^(d-3) n_lo <= f(d, n_lo)
      ``margin``     f(d, n_lo + 1) - f(d, n_lo) >= V
    """

    kind: str
    step: str
    d: int
    n_lo: int
    n_hi: int
    V: int
    q: Fraction

    @property
    def m(self) -> int:
        return self.n_lo - self.d

    def to_dict(self):
        return {"type": "witness", "kind": self.kind, "step": self.step, "d": self.d,
                "n_lo": str(self.n_lo), "n_hi": str(self.n_hi), "V": str(self.V), "q": frac_str(self.q)}

    @classmethod
    def from_dict(cls, data):
        return cls(data["kind"], data["step"], int(data["d"]), int(data["n_lo"]), int(data["n_hi"]),
                   int(data["V"]), Fraction(data["q"]))


@dataclass
class StepLog:
    """Mutable accumulator used while a run is in progress."""

    nl_records: list[NLRecord] = field(default_factory=list)
    check_records: list[CheckRecord] = field(default_factory=list)
    witnesses: list[Witness] = field(default_factory=list)
