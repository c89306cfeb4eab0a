"""Univariate polynomials with exact rational coefficients, and Sturm chains."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class RationalPolynomial:
    """Coefficients low-to-high: ``coefficients[k]`` multiplies x**k."""

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable = ()):
        object.__setattr__(self, "coefficients", _trim(coefficients))

    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "RationalPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else Fraction(0)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coefficients), len(other.coefficients))
        return RationalPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coefficients)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = RationalPolynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def sign_at_infinity(self) -> int:
        return (self.leading > 0) - (self.leading < 0)

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(k * c for k, c in enumerate(self.coefficients) if k)

    def divmod(self, other: "RationalPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(0, len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            quot[k - dq] = c
            if c:
                for j, b in enumerate(other.coefficients):
                    rem[k - dq + j] -= c * b
        return RationalPolynomial(quot), RationalPolynomial(rem[:dq] if dq > 0 else [])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "RationalPolynomial":
        if self.is_zero():
            return self
        return RationalPolynomial(c / self.leading for c in self.coefficients)

    def gcd(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self) -> "RationalPolynomial":
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self
        return self.divmod(g)[0]

    def compose_linear(self, a, b) -> "RationalPolynomial":
        """self(a + b*x)."""
        lin = RationalPolynomial((a, b))
        acc = RationalPolynomial()
        for c in reversed(self.coefficients):
            acc = acc * lin + c
        return acc

    def cauchy_bound(self) -> Fraction:
        """All real roots lie in (-B, B) with B = 1 + max |c_k / c_lead|."""
        if self.degree < 1:
            return Fraction(0)
        lead = abs(self.leading)
        return 1 + max(abs(c) / lead for c in self.coefficients[:-1])

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            mag = abs(c)
            coef = str(mag) if (mag != 1 or k == 0) else ""
            sep = "*" if coef and mono else ""
            terms.append(("-" if c < 0 else "+") + coef + sep + mono)
        s = " ".join(terms)
        return s[1:] if s.startswith("+") else s

    def to_strings(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coefficients]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "RationalPolynomial":
        return cls(Fraction(s) for s in items)


def _coerce(x) -> RationalPolynomial:
    return x if isinstance(x, RationalPolynomial) else RationalPolynomial.constant(x)


def binomial_power(a, b, k: int) -> RationalPolynomial:
    """(a + b x)^k expanded exactly."""
    a, b = Fraction(a), Fraction(b)
    return RationalPolynomial(comb(k, j) * a ** (k - j) * b**j for j in range(k + 1))


def sturm_chain(poly: RationalPolynomial) -> list[RationalPolynomial]:
    """Sturm sequence of the square-free part of ``poly``."""
    if poly.is_zero():
        raise ValueError("zero polynomial has no Sturm chain")
    p0 = poly.squarefree_part()
    chain = [p0]
    if p0.degree < 1:
        return chain
    chain.append(p0.derivative())
    while True:
        r = -(chain[-2] % chain[-1])
        if r.is_zero():
            break
        chain.append(r)
    return chain


def sign_changes(signs: Iterable[int]) -> int:
    seq = [s for s in signs if s]
    return sum(1 for a, b in zip(seq, seq[1:]) if a != b)


def sign_changes_at(chain: Sequence[RationalPolynomial], x) -> int:
    return sign_changes(p.sign_at(x) for p in chain)


def sign_changes_at_infinity(chain: Sequence[RationalPolynomial]) -> int:
    return sign_changes(p.sign_at_infinity() for p in chain)


def sign_changes_at_neg_infinity(chain: Sequence[RationalPolynomial]) -> int:
    return sign_changes(p.sign_at_infinity() * (-1 if p.degree % 2 else 1) for p in chain)


def count_roots_above(poly: RationalPolynomial, x0) -> int:
    """Number of distinct real roots of ``poly`` in the open interval (x0, oo)."""
    chain = sturm_chain(poly)
    return sign_changes_at(chain, Fraction(x0)) - sign_changes_at_infinity(chain)


def count_roots_between(poly: RationalPolynomial, a, b) -> int:
    """Distinct real roots in (a, b]."""
    chain = sturm_chain(poly)
    return sign_changes_at(chain, Fraction(a)) - sign_changes_at(chain, Fraction(b))


def check_chain(chain: Sequence[RationalPolynomial]) -> bool:
    """Verify each remainder step: p_{k-1} = Q p_k - p_{k+1} with deg p_{k+1} < deg p_k."""
    if len(chain) >= 2 and chain[1] != chain[0].derivative():
        return False
    for k in range(1, len(chain) - 1):
        _, rem = chain[k - 1].divmod(chain[k])
        if rem != -chain[k + 1] or chain[k + 1].degree >= chain[k].degree:
            return False
    if len(chain) >= 2:
        # the chain must stop exactly when the next remainder vanishes
        if not (chain[-2] % chain[-1]).is_zero():
            return False
    return True
