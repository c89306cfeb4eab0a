"""Certificates and failure reports: serialization, transcripts and replay.

The on-disk form is JSON lines.  The first line is a header object, the
remaining lines are one record each (Sturm data, n_L records, check records,
witnesses).  Integers that can grow past 2^53 are written as decimal
strings and rationals as "num/den", so any JSON reader can re-verify.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, TextIO

from .bounds import BoundParams, check_superlinearity, exponent_base
from .threshold import SturmCertificate, minimum_valid_dimension
from .compare import DEFAULT_MAX_PRECISION, ProvenGreater, compare_int_vs_power, convexity_margin_ok
from .records import CheckRecord, NLRecord, Witness

TOOL_VERSION = "0.1.0"
SUCCESS_BANNER = "****** SUCCESS ******"
FAILURE_BANNER = "****** FAILURE ******"


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _params_dict(p: BoundParams) -> dict:
    return {"alpha": p.alpha, "beta": p.beta}


def _step_lines(nl_records, check_records, finished: bool) -> list[str]:
    """Progress lines in the reference program's format for the passed part of a run."""
    nl_by_d = {r.d: r for r in nl_records}
    lines = []
    b1_closed = False
    for rec in check_records:
        if not rec.passed:
            break
        if rec.step == "B0":
            lines.append(f"- n_L({rec.d}) = {nl_by_d[rec.d].n_L}")
            lines.append("(B0) OK")
        elif rec.step == "B1":
            lines.append(f"- n_L({rec.d}) = {nl_by_d[rec.d].n_L}")
        else:
            if not b1_closed:
                lines.append("(B1) OK")
                b1_closed = True
            lines.append(f"- # pairs ({rec.d},n) checked = {rec.pairs_checked}")
    if finished:
        if not b1_closed:
            lines.append("(B1) OK")
        lines.append("(B2) OK")
    return lines


@dataclass
class Certificate:
    """Machine form of a successful base-case verification."""

    params: BoundParams
    l: int
    d_ab: int
    d_ab_provenance: str
    sturm: SturmCertificate | None
    superlinear: bool
    nl_records: list[NLRecord]
    check_records: list[CheckRecord]
    witnesses: list[Witness] = field(default_factory=list)
    mode: str = "rigorous"
    max_precision_used: int = 0
    b2_max_dim: int | None = None
    complete: bool = True
    tool_version: str = TOOL_VERSION
    duration: float = 0.0

    success = True

    def nl(self, d: int) -> int:
        for r in self.nl_records:
            if r.d == d:
                return r.n_L
        raise KeyError(d)

    def b2_counts(self) -> list[tuple[int, int]]:
        return [(r.d, r.pairs_checked) for r in self.check_records if r.step == "B2"]

    def transcript_lines(self) -> list[str]:
        lines = _step_lines(self.nl_records, self.check_records, finished=True)
        if not self.complete:
            lines.append(f"(B2) covered only d <= {self.b2_max_dim}; partial run, bound not certified")
        return lines + ["", SUCCESS_BANNER]

    # -- serialization ---------------------------------------------------------
    def header(self) -> dict:
        return {
            "type": "certificate",
            "params": _params_dict(self.params),
            "l": self.l,
            "d_ab": self.d_ab,
            "d_ab_provenance": self.d_ab_provenance,
            "superlinear": self.superlinear,
            "mode": self.mode,
            "max_precision_used": self.max_precision_used,
            "b2_max_dim": self.b2_max_dim,
            "complete": self.complete,
            "tool_version": self.tool_version,
            "duration": round(self.duration, 6),
        }

    def to_lines(self) -> list[str]:
        out = [_dumps(self.header())]
        if self.sturm is not None:
            out.append(_dumps({"type": "sturm", **self.sturm.to_dict()}))
        out.extend(_dumps(r.to_dict()) for r in self.nl_records)
        out.extend(_dumps(r.to_dict()) for r in self.check_records)
        out.extend(_dumps(w.to_dict()) for w in self.witnesses)
        return out

    def dumps(self) -> str:
        return "\n".join(self.to_lines()) + "\n"

    def write(self, fh: TextIO) -> None:
        fh.write(self.dumps())


@dataclass
class FailureReport:
    """Why a run did not succeed, with the first failing pair when there is one."""

    params: BoundParams
    l: int
    d_ab: int | None
    step: str
    d: int
    n: int | None
    tilde: int | None
    f_lower: str | None
    f_upper: str | None
    reason: str  # counterexample, not-superlinear, margin, out-of-memory
    detail: str = ""
    nl_records: list[NLRecord] = field(default_factory=list)
    check_records: list[CheckRecord] = field(default_factory=list)
    mode: str = "rigorous"
    printed: str | None = None  # float-replica error line
    duration: float = 0.0

    success = False

    @property
    def pair(self) -> tuple[int, int] | None:
        return None if self.n is None else (self.d, self.n)

    def error_line(self) -> str:
        if self.printed is not None:
            return self.printed
        if self.n is not None:
            line = f"Error: f ∈ [{self.f_lower}, {self.f_upper}] [Ours] < {self.tilde} [tilde] ({self.d},{self.n})"
            if self.reason == "not-superlinear":
                line += f"; l={self.l} is not superlinear ({self.detail})"
            return line
        if self.reason == "not-superlinear":
            return f"Error: l={self.l} is not superlinear ({self.detail})"
        return f"Error: {self.reason}: {self.detail}"

    def transcript_lines(self) -> list[str]:
        lines = _step_lines(self.nl_records, self.check_records, finished=False)
        return lines + [self.error_line(), "", FAILURE_BANNER]

    def to_dict(self) -> dict:
        return {
            "type": "failure",
            "params": _params_dict(self.params),
            "l": self.l,
            "d_ab": self.d_ab,
            "step": self.step,
            "d": self.d,
            "n": None if self.n is None else str(self.n),
            "tilde": None if self.tilde is None else str(self.tilde),
            "f_lower": self.f_lower,
            "f_upper": self.f_upper,
            "reason": self.reason,
            "detail": self.detail,
            "mode": self.mode,
            "printed": self.printed,
            "duration": round(self.duration, 6),
        }

    def to_lines(self) -> list[str]:
        out = [_dumps(self.to_dict())]
        out.extend(_dumps(r.to_dict()) for r in self.nl_records)
        out.extend(_dumps(r.to_dict()) for r in self.check_records)
        return out

    def dumps(self) -> str:
        return "\n".join(self.to_lines()) + "\n"

    def write(self, fh: TextIO) -> None:
        fh.write(self.dumps())


def _opt_int(x):
    return None if x is None else int(x)


def parse_lines(lines: Iterable[str]) -> Certificate | FailureReport:
    """Inverse of ``to_lines`` for both certificates and failure reports."""
    items = [json.loads(s) for s in lines if s.strip()]
    if not items:
        raise ValueError("empty certificate")
    head, rest = items[0], items[1:]
    params = BoundParams(int(head["params"]["alpha"]), int(head["params"]["beta"]))
    nl = [NLRecord.from_dict(x) for x in rest if x["type"] == "nl"]
    checks = [CheckRecord.from_dict(x) for x in rest if x["type"] == "check"]
    if head["type"] == "failure":
        return FailureReport(
            params=params, l=int(head["l"]), d_ab=_opt_int(head["d_ab"]), step=head["step"],
            d=int(head["d"]), n=_opt_int(head["n"]), tilde=_opt_int(head["tilde"]),
            f_lower=head["f_lower"], f_upper=head["f_upper"], reason=head["reason"],
            detail=head.get("detail", ""), nl_records=nl, check_records=checks,
            mode=head.get("mode", "rigorous"), printed=head.get("printed"),
            duration=float(head.get("duration", 0.0)),
        )
    if head["type"] != "certificate":
        raise ValueError(f"unknown record type {head['type']!r}")
    sturm = [x for x in rest if x["type"] == "sturm"]
    return Certificate(
        params=params, l=int(head["l"]), d_ab=int(head["d_ab"]),
        d_ab_provenance=head["d_ab_provenance"],
        sturm=SturmCertificate.from_dict(sturm[0]) if sturm else None,
        superlinear=bool(head["superlinear"]), nl_records=nl, check_records=checks,
        witnesses=[Witness.from_dict(x) for x in rest if x["type"] == "witness"],
        mode=head["mode"], max_precision_used=int(head["max_precision_used"]),
        b2_max_dim=_opt_int(head["b2_max_dim"]), complete=bool(head["complete"]),
        tool_version=head["tool_version"], duration=float(head["duration"]),
    )


def loads(text: str) -> Certificate | FailureReport:
    return parse_lines(text.splitlines())


# -- replay ---------------------------------------------------------------------

@dataclass
class ReplayResult:
    ok: bool
    problems: list[str]
    comparisons: int = 0

    def __bool__(self):
        return self.ok


def _expected_ranges(cert: Certificate) -> list[tuple[str, int, int, int | None]]:
    """(step, d, n_lo, n_hi) the certificate must cover; n_hi None means 'n_L(d) - 1'."""
    p = cert.params
    width = p.step2_width
    out = [("B0", cert.l, cert.l, None)]
    out += [("B1", d, 2 * d, None) for d in range(cert.l + 1, cert.d_ab)]
    d_last = width - 1 if cert.b2_max_dim is None else min(width - 1, cert.b2_max_dim)
    out += [("B2", d, 2 * d, d + width - 1) for d in range(max(cert.l + 1, cert.d_ab), d_last + 1)]
    return out


def replay_certificate(cert: Certificate, recompute_table: bool = False,
                       max_precision: int = DEFAULT_MAX_PRECISION) -> ReplayResult:
    """Re-verify a certificate from its recorded data.

    Every recorded comparison is re-run from its (V, m, q) triple, the Sturm
    certificate is rechecked, and the scanned ranges are matched against the
    ones the procedure requires.  The bound tilde(d, n) <= V inside each
    witness block is a property of the table; it is only rechecked when
    ``recompute_table`` is set.
    """
    problems: list[str] = []
    p = cert.params
    count = 0

    def cmp_ok(V, m, q, want_le: bool, what: str):
        nonlocal count
        count += 1
        out = compare_int_vs_power(V, m, q, max_precision)
        if (out is not ProvenGreater) != want_le:
            problems.append(f"{what}: comparison of {V} with {m}^log2({q}) gave {out}")

    if not cert.superlinear or not check_superlinearity(p, cert.l):
        problems.append(f"l={cert.l} is not superlinear for {p}")
    if cert.sturm is None:
        problems.append("missing Sturm certificate for d_ab")
    else:
        if cert.sturm.threshold != exponent_base(p, cert.d_ab):
            problems.append("Sturm threshold does not match d_ab")
        if not cert.sturm.verify():
            problems.append("Sturm certificate does not verify")
    if cert.d_ab < minimum_valid_dimension(p):
        problems.append("d_ab is below the minimum valid dimension")

    nl_by_d = {r.d: r for r in cert.nl_records}
    checks = {(r.step, r.d): r for r in cert.check_records}
    blocks: dict[tuple[str, int], list[Witness]] = {}
    by_kind: dict[tuple[str, int, int], Witness] = {}
    for w in cert.witnesses:
        if w.q != exponent_base(p, w.d):
            problems.append(f"witness at ({w.d},{w.n_lo}) uses the wrong exponent base {w.q}")
        if w.kind == "tilde":
            blocks.setdefault((w.step, w.d), []).append(w)
        else:
            by_kind[(w.kind, w.d, w.n_lo)] = w

    for step, d, n_lo, n_hi in _expected_ranges(cert):
        rec = checks.get((step, d))
        if rec is None or not rec.passed:
            problems.append(f"{step} d={d}: no passed check record")
            continue
        if n_hi is None:
            nl = nl_by_d.get(d)
            if nl is None:
                problems.append(f"{step} d={d}: no n_L record")
                continue
            if not nl.crossing_margin_ok:
                problems.append(f"d={d}: crossover margin not certified")
            n_hi = nl.n_L - 1
            slope = 1 << (d - 3)
            q = exponent_base(p, d)
            needed = [("larman-le", nl.n_L)]
            if nl.n_L > nl.n_start:
                needed.append(("larman-gt", nl.n_start))
                needed.append(("larman-gt", nl.n_L - 1))
            for kind, n in needed:
                w = by_kind.get((kind, d, n))
                if w is None or w.V != n * slope:
                    problems.append(f"d={d}: missing {kind} witness at n={n}")
                else:
                    cmp_ok(w.V, w.m, q, kind == "larman-le", f"{kind} ({d},{n})")
            w = by_kind.get(("margin", d, nl.n_L))
            if w is None or w.V != slope:
                problems.append(f"d={d}: missing margin witness")
            else:
                count += 1
                if not convexity_margin_ok(w.m, q, slope, max_precision):
                    problems.append(f"d={d}: margin witness does not verify")
            if nl.n_start != n_lo:
                problems.append(f"d={d}: n_L search started at {nl.n_start}, expected {n_lo}")
        if (rec.n_lo, rec.n_hi) != (n_lo, n_hi) or rec.pairs_checked != max(0, n_hi - n_lo + 1):
            problems.append(f"{step} d={d}: recorded range [{rec.n_lo},{rec.n_hi}] does not match [{n_lo},{n_hi}]")
        # the tilde blocks must tile [n_lo, n_hi]
        pos = n_lo
        for w in sorted(blocks.get((step, d), []), key=lambda w: w.n_lo):
            if w.n_lo != pos or w.n_hi < w.n_lo:
                problems.append(f"{step} d={d}: witness blocks do not tile the range at n={pos}")
                break
            cmp_ok(w.V, w.m, w.q, True, f"tilde block ({d},{w.n_lo}..{w.n_hi})")
            pos = w.n_hi + 1
        else:
            if pos != n_hi + 1:
                problems.append(f"{step} d={d}: witness blocks end at {pos - 1}, expected {n_hi}")

    if recompute_table:
        problems += _recheck_table(cert, blocks)
    return ReplayResult(ok=not problems, problems=problems, comparisons=count)


def _recheck_table(cert: Certificate, blocks) -> list[str]:
    from .table import DiameterTable, RollingTable

    problems = []
    table = DiameterTable()
    b2 = {}
    for (step, d), ws in blocks.items():
        if step == "B2":
            b2[d] = ws
            continue
        for w in ws:
            row = table.ensure(d, w.n_hi - d + 1)
            if max(row[w.n_lo - d:w.n_hi - d + 1]) > w.V:
                problems.append(f"table exceeds witness bound in ({d},{w.n_lo}..{w.n_hi})")
    if b2:
        rolling = RollingTable(cert.params.step2_width)
        for d in sorted(b2):
            rolling.advance_to(d)
            for w in b2[d]:
                if rolling.first_exceeding(w.n_lo - d, w.n_hi - d + 1, w.V) is not None:
                    problems.append(f"table exceeds witness bound in ({d},{w.n_lo}..{w.n_hi})")
    return problems
