"""Exact integer polynomials in ``t`` and the descent-polynomial identities.

Everything is computed with Python ints; there is no fixed-width fast path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from . import kernels
from .combinatorics import MultisetSpec, check_size


@dataclass(frozen=True)
class IntPolynomial:
    """Dense coefficient vector, ``coeffs[i]`` multiplies ``t**i``.

    Trailing zeros are stripped on construction, so the zero polynomial is
    ``IntPolynomial(())`` and equality is coefficient-wise.
    """

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def from_counts(cls, counts) -> "IntPolynomial":
        """Build from a ``{exponent: coefficient}`` mapping."""
        counts = dict(counts)
        if not counts:
            return cls(())
        c = [0] * (max(counts) + 1)
        for e, v in counts.items():
            c[e] += v
        return cls(tuple(c))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def valuation(self) -> int:
        """Multiplicity of the root ``t = 0``."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero polynomial has no valuation")

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    def __neg__(self):
        return IntPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(other * x for x in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = IntPolynomial((1,))
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def shift_down(self, k: int) -> "IntPolynomial":
        """Divide by ``t**k`` (the low ``k`` coefficients must be zero)."""
        if any(self.coeffs[:k]):
            raise ValueError(f"not divisible by t^{k}")
        return IntPolynomial(self.coeffs[k:])

    def to_text(self) -> str:
        """Descending form, e.g. ``4*t^3 + 7*t^2 + t``."""
        if not self.coeffs:
            return "0"
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c:
                terms.append((c, e))
        return _join_terms(terms, star=True)

    def pretty(self) -> str:
        """Ascending form matching the usual notation, e.g. ``t + 7t^2 + 4t^3``."""
        if not self.coeffs:
            return "0"
        terms = [(c, e) for e, c in enumerate(self.coeffs) if c]
        return _join_terms(terms, star=False)

    def __str__(self):
        return self.pretty()


def _join_terms(terms, star):
    out = []
    for idx, (c, e) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = "t" if e == 1 else f"t^{e}"
            if a == 1:
                body = mono
            else:
                body = f"{a}*{mono}" if star else f"{a}{mono}"
        if idx == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def binomial(a: int, b: int) -> int:
    """``C(a, b)``; zero when ``b < 0`` or ``b > a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


# ---------------------------------------------------------------------------
# descent polynomials

WORDS = "words"
TREES = "trees"


def _from_distribution(counts) -> IntPolynomial:
    return IntPolynomial(tuple(counts))


def quasi_stirling_polynomial(M: MultisetSpec, method: str = WORDS,
                              cap: Optional[int] = None) -> IntPolynomial:
    """Generating polynomial of ``des`` over quasi-Stirling words of ``M``.

    ``method="words"`` enumerates permutations through the kernel,
    ``method="trees"`` sums ``t**cdes`` over the labeled-tree family.
    """
    check_size(M, cap)
    if method == WORDS:
        return _from_distribution(kernels.descent_distribution(M.mult, kernels.QUASI_STIRLING))
    if method == TREES:
        from .trees import tree_polynomial
        return tree_polynomial(M, cap=cap)
    raise ValueError(f"unknown method {method!r}")


def stirling_polynomial(M: MultisetSpec, cap: Optional[int] = None) -> IntPolynomial:
    check_size(M, cap)
    return _from_distribution(kernels.descent_distribution(M.mult, kernels.STIRLING))


def eulerian_polynomial(n: int) -> IntPolynomial:
    """``A_n(t)`` with ``des`` counted "+1", so ``A_1 = t`` and ``A_n(1) = n!``.

    Uses the Eulerian-number recurrence rather than enumeration.
    """
    if n < 1:
        raise ValueError("n must be positive")
    row = [1]  # classical Eulerian numbers A(1, k)
    for size in range(2, n + 1):
        new = [0] * size
        for k in range(size):
            if k < len(row):
                new[k] += (k + 1) * row[k]
            if 0 < k <= len(row):
                new[k] += (size - k) * row[k - 1]
        row = new
    return IntPolynomial((0,) + tuple(row))


# ---------------------------------------------------------------------------
# series

@dataclass(frozen=True)
class SeriesPrefix:
    """Coefficients ``c_0..c_mmax`` of ``P(t) / (1 - t)**denominator_power``."""

    coeffs: Tuple[int, ...]
    denominator_power: int

    def __getitem__(self, m):
        return self.coeffs[m]

    def __len__(self):
        return len(self.coeffs)


def expand_series(P: IntPolynomial, K: int, m_max: int) -> SeriesPrefix:
    """Expand ``P(t) / (1 - t)**(K + 1)`` up to ``t**m_max``.

    ``1/(1-t)^(K+1) = sum_i C(K+i, K) t^i``, so each coefficient is a finite
    convolution with ``P``.
    """
    out = []
    for m in range(m_max + 1):
        out.append(sum(c * binomial(K + m - j, K)
                       for j, c in enumerate(P.coeffs[:m + 1]) if c))
    return SeriesPrefix(tuple(out), K + 1)


def closed_form_coefficient(M: MultisetSpec, m: int) -> int:
    """``m^(n-1) * C(K-n+m, K-n+1)``, equal to ``m^n/(K-n+1) * C(K-n+m, m)``."""
    n, K = M.n, M.K
    return m ** (n - 1) * binomial(K - n + m, K - n + 1)


@dataclass
class IdentityRow:
    m: int
    series: int
    closed_form: int

    @property
    def ok(self) -> bool:
        return self.series == self.closed_form


@dataclass
class IdentityReport:
    multiset: MultisetSpec
    m_max: int
    polynomial: IntPolynomial
    methods_agree: bool
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.methods_agree and all(r.ok for r in self.rows)

    def to_dict(self) -> dict:
        M = self.multiset
        return {
            "multiset": M.to_text(),
            "K": M.K,
            "n": M.n,
            "m_max": self.m_max,
            "polynomial": self.polynomial.to_text(),
            "methods_agree": self.methods_agree,
            "rows": [{"m": r.m, "series": r.series, "closed_form": r.closed_form, "ok": r.ok}
                     for r in self.rows],
            "pass": self.passed,
        }


def verify_main_identity(M: MultisetSpec, m_max: int,
                         cap: Optional[int] = None) -> IdentityReport:
    """Compare the series of ``Qbar_M(t)/(1-t)^(K+1)`` with the closed form."""
    by_words = quasi_stirling_polynomial(M, WORDS, cap)
    by_trees = quasi_stirling_polynomial(M, TREES, cap)
    series = expand_series(by_words, M.K, m_max)
    rows = [IdentityRow(m, series[m], closed_form_coefficient(M, m)) for m in range(m_max + 1)]
    return IdentityReport(M, m_max, by_words, by_words == by_trees, rows)


def lemma_sum_identity(n: int, m: int) -> bool:
    """``sum_{l=1..m} l*C(n+m-l-1, n-1) == C(n+m, n+1)``; always True."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    lhs = sum(l * binomial(n + m - l - 1, n - 1) for l in range(1, m + 1))
    return lhs == binomial(n + m, n + 1)
