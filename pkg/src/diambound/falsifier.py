"""Search for pairs where a polynomial candidate bound breaks the inductive step.

For a polynomial p(d, n) the step needs

    p(d-1, n-1) + 2 p(d, n // 2) + 2 <= p(d, n),

and no polynomial satisfies this for all large d and n.  ``find_violation``
probes a doubling grid and returns the first pair where it fails; each
returned pair is certified by exact rational evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import NotFound


@dataclass(frozen=True)
class BivariatePolynomial:
    """Sum of c * d^i * n^j over ``terms`` {(i, j): c}, exact rational c."""

    terms: tuple[tuple[int, int, Fraction], ...]

    def __init__(self, terms: Iterable = ()):
        acc: dict[tuple[int, int], Fraction] = {}
        for i, j, c in terms:
            if int(i) != i or int(j) != j or i < 0 or j < 0:
                raise ValueError(f"exponents must be nonnegative integers, got ({i}, {j})")
            if isinstance(c, float):
                raise TypeError("coefficients must be exact (int, Fraction or 'num/den')")
            acc[(int(i), int(j))] = acc.get((int(i), int(j)), Fraction(0)) + Fraction(c)
        object.__setattr__(self, "terms", tuple(sorted((i, j, c) for (i, j), c in acc.items() if c)))

    @classmethod
    def parse(cls, text: str) -> "BivariatePolynomial":
        """Parse whitespace-separated ``i:j:c`` triples, e.g. "0:1:1 1:0:-1" for n - d."""
        terms = []
        for tok in text.replace(",", " ").split():
            parts = tok.split(":")
            if len(parts) != 3:
                raise ValueError(f"bad term {tok!r}; expected i:j:c")
            try:
                terms.append((int(parts[0]), int(parts[1]), Fraction(parts[2])))
            except ValueError as exc:
                raise ValueError(f"bad term {tok!r}: {exc}") from None
            if "." in parts[2] or "e" in parts[2].lower():
                raise ValueError(f"coefficient {parts[2]!r} must be an integer or num/den")
        return cls(terms)

    @property
    def n_degree(self) -> int:
        return max((j for _, j, _ in self.terms), default=0)

    def g(self, j: int) -> dict[int, Fraction]:
        """Coefficient polynomial of n^j, as {i: c}."""
        return {i: c for i, jj, c in self.terms if jj == j}

    def __call__(self, d, n) -> Fraction:
        return sum((c * Fraction(d) ** i * Fraction(n) ** j for i, j, c in self.terms), Fraction(0))

    def scale(self, c) -> "BivariatePolynomial":
        c = Fraction(c)
        return BivariatePolynomial((i, j, c * k) for i, j, k in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " ".join(f"{i}:{j}:{c}" for i, j, c in self.terms)


def evaluate_inductive_gap(p: BivariatePolynomial, d: int, n: int) -> Fraction:
    """p(d-1, n-1) + 2 p(d, n // 2) + 2 - p(d, n); positive means the step fails."""
    if d < 1 or n < 2 * d:
        raise ValueError(f"need n >= 2d >= 2, got (d, n) = ({d}, {n})")
    return p(d - 1, n - 1) + 2 * p(d, n // 2) + 2 - p(d, n)


def probe_pairs(d_min: int, n_min: int) -> Iterator[tuple[int, int]]:
    """Doubling grid d = d_min 2^a, n = max(n_min, 2d) 2^b, swept by a + b."""
    s = 0
    while True:
        for a in range(s + 1):
            d = d_min << a
            yield d, max(n_min, 2 * d) << (s - a)
        s += 1


def find_violation(p: BivariatePolynomial, d_min: int = 1, n_min: int = 2, budget: int = 10_000) -> tuple[int, int]:
    if budget <= 0:
        raise ValueError("budget must be positive")
    if d_min < 1:
        raise ValueError("d_min must be >= 1")
    for k, (d, n) in enumerate(probe_pairs(d_min, n_min)):
        if k >= budget:
            break
        if evaluate_inductive_gap(p, d, n) > 0:
            return d, n
    raise NotFound(f"no violation for {p} within {budget} probes")
