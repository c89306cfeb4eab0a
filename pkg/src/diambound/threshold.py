"""Certified dimension threshold d(alpha, beta) for the inductive step.

With D = beta + d/alpha, the sufficient condition for the inductive
inequality is

    (1 - 1/(alpha D))^(2a+1) + 2/D + 2 D^-(2a+1) <= 1,

which after multiplying by D^(2a+1) > 0 becomes N(D) <= 0 for

    N(D) = (D - 1/alpha)^(2a+1) - D^(2a+1) + 2 D^(2a) + 2,

a polynomial of degree 2 alpha with leading coefficient -1/alpha.  The
threshold is the least integer d such that N has no real root in
(beta + d/alpha, oo); a Sturm chain certifies the root count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import BoundParams, exponent_base
from .polynomial import (
    RationalPolynomial,
    binomial_power,
    check_chain,
    sign_changes_at,
    sign_changes_at_infinity,
    sturm_chain,
)


def build_threshold_polynomial(p: BoundParams) -> RationalPolynomial:
    k = 2 * p.alpha + 1
    D = RationalPolynomial.x()
    return binomial_power(Fraction(-1, p.alpha), 1, k) - D**k + 2 * D ** (k - 1) + 2


def substituted_polynomial(p: BoundParams) -> RationalPolynomial:
    """N(beta + x/alpha) * alpha^(2a+1): the same condition as a polynomial in d.

    For beta = 0 this has integer coefficients, e.g.
    -d^4 + 10 d^3 - 10 d^2 + 5 d + 63 for (2, 0).
    """
    k = 2 * p.alpha + 1
    return build_threshold_polynomial(p).compose_linear(p.beta, Fraction(1, p.alpha)) * (p.alpha**k)


def minimum_valid_dimension(p: BoundParams) -> int:
    """Smallest d >= 2 with beta + d/alpha > 1.

    Below this the transposed power form used by the inductive step does not
    apply (it needs D >= 1 and 0 < 1 - 1/(alpha D) < 1).
    """
    return max(2, p.alpha - p.alpha * p.beta + 1)


@dataclass(frozen=True)
class SturmCertificate:
    polynomial: RationalPolynomial
    chain: tuple[RationalPolynomial, ...]
    threshold: Fraction
    sign_changes_at_D0: int
    sign_changes_at_infinity: int
    value_at_D0: Fraction

    @property
    def roots_above(self) -> int:
        return self.sign_changes_at_D0 - self.sign_changes_at_infinity

    def is_valid(self) -> bool:
        return self.roots_above == 0 and self.value_at_D0 <= 0 and self.polynomial.leading < 0

    def verify(self) -> bool:
        """Recheck everything from the stored data alone."""
        if not self.chain or self.chain[0] != self.polynomial.squarefree_part():
            return False
        if not check_chain(self.chain):
            return False
        if sign_changes_at(self.chain, self.threshold) != self.sign_changes_at_D0:
            return False
        if sign_changes_at_infinity(self.chain) != self.sign_changes_at_infinity:
            return False
        if self.polynomial(self.threshold) != self.value_at_D0:
            return False
        return self.is_valid()

    def to_dict(self) -> dict:
        return {
            "polynomial": self.polynomial.to_strings(),
            "chain": [c.to_strings() for c in self.chain],
            "D0": _frac_str(self.threshold),
            "sign_changes_at_D0": self.sign_changes_at_D0,
            "sign_changes_at_infinity": self.sign_changes_at_infinity,
            "value_at_D0": _frac_str(self.value_at_D0),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SturmCertificate":
        return cls(
            polynomial=RationalPolynomial.from_strings(data["polynomial"]),
            chain=tuple(RationalPolynomial.from_strings(c) for c in data["chain"]),
            threshold=Fraction(data["D0"]),
            sign_changes_at_D0=int(data["sign_changes_at_D0"]),
            sign_changes_at_infinity=int(data["sign_changes_at_infinity"]),
            value_at_D0=Fraction(data["value_at_D0"]),
        )


@dataclass(frozen=True)
class DabResult:
    d_ab: int
    D0: Fraction
    certificate: SturmCertificate
    params: BoundParams = field(default=None)


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def sturm_certificate(poly: RationalPolynomial, threshold: Fraction, chain=None) -> SturmCertificate:
    chain = tuple(chain or sturm_chain(poly))
    return SturmCertificate(
        polynomial=poly,
        chain=chain,
        threshold=Fraction(threshold),
        sign_changes_at_D0=sign_changes_at(chain, Fraction(threshold)),
        sign_changes_at_infinity=sign_changes_at_infinity(chain),
        value_at_D0=poly(Fraction(threshold)),
    )


def certify_dab(p: BoundParams) -> DabResult:
    """Least certified threshold d(alpha, beta), with its Sturm certificate."""
    poly = build_threshold_polynomial(p)
    chain = sturm_chain(poly)
    at_inf = sign_changes_at_infinity(chain)

    def clear(d: int) -> bool:
        return sign_changes_at(chain, exponent_base(p, d)) == at_inf

    lo = minimum_valid_dimension(p)
    # d with beta + d/alpha above the Cauchy root bound is always clear
    hi = max(lo, -(-p.alpha * (poly.cauchy_bound() - p.beta) // 1))
    hi = int(hi)
    while not clear(hi):  # cannot loop: hi is past every root
        hi *= 2
    if clear(lo):
        d_ab = lo
    else:
        # invariant: clear(hi) and not clear(lo); root counts fall as d grows
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if clear(mid):
                hi = mid
            else:
                lo = mid
        d_ab = hi
    D0 = exponent_base(p, d_ab)
    cert = sturm_certificate(poly, D0, chain)
    if not cert.is_valid():
        raise AssertionError(f"Sturm certificate for {p} at d={d_ab} is not valid")
    return DabResult(d_ab=d_ab, D0=D0, certificate=cert, params=p)


def certify_dab_override(p: BoundParams, d_ab: int) -> DabResult:
    """Validate a user-supplied threshold; raises ValueError when it is not sound."""
    from .compare import threshold_holds_at

    if d_ab < minimum_valid_dimension(p):
        raise ValueError(f"d(alpha,beta)={d_ab} is below the minimum valid dimension {minimum_valid_dimension(p)}")
    if not threshold_holds_at(p, d_ab):
        raise ValueError(f"d(alpha,beta)={d_ab} fails the threshold inequality for {p}")
    poly = build_threshold_polynomial(p)
    cert = sturm_certificate(poly, exponent_base(p, d_ab))
    if not cert.is_valid():
        raise ValueError(f"d(alpha,beta)={d_ab}: the threshold polynomial has roots above D={cert.threshold}")
    return DabResult(d_ab=d_ab, D0=cert.threshold, certificate=cert, params=p)
