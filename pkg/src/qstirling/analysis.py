"""Exact real-rootedness and coefficient-shape checks for integer polynomials.

Real roots are counted with Sturm chains built from pseudo-remainders over
the integers; content is divided out at every step so nothing is ever
rounded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import List, Optional

from .combinatorics import MultisetSpec
from .errors import DomainError
from .polynomial import IntPolynomial, quasi_stirling_polynomial, stirling_polynomial


def content(P: IntPolynomial) -> int:
    return reduce(math.gcd, P.coeffs, 0)


def primitive(P: IntPolynomial) -> IntPolynomial:
    """Divide out the content and make the leading coefficient positive."""
    if P.is_zero():
        return P
    g = content(P)
    if P.leading() < 0:
        g = -g
    return IntPolynomial(tuple(c // g for c in P.coeffs))


def pseudo_remainder(A: IntPolynomial, B: IntPolynomial) -> IntPolynomial:
    """``lc(B)^(deg A - deg B + 1) * A  mod  B``."""
    if B.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    r = list(A.coeffs)
    db, lb = B.degree, B.leading()
    delta = A.degree - db + 1
    if delta <= 0:
        return A
    for _ in range(delta):
        if len(r) - 1 >= db and r:
            lead = r[-1]
            shift = len(r) - 1 - db
            r = [lb * x for x in r]
            for i, b in enumerate(B.coeffs):
                r[i + shift] -= lead * b
            r.pop()
        else:
            r = [lb * x for x in r]
        while r and r[-1] == 0:
            r.pop()
    return IntPolynomial(tuple(r))


def poly_gcd(A: IntPolynomial, B: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Q (primitive pseudo-remainder sequence)."""
    a, b = primitive(A), primitive(B)
    while not b.is_zero():
        a, b = b, primitive(pseudo_remainder(a, b))
    return primitive(a)


def exact_quotient(A: IntPolynomial, B: IntPolynomial) -> IntPolynomial:
    """``A / B`` when ``B`` divides ``A`` exactly over the integers."""
    r = list(A.coeffs)
    db = B.degree
    q = [0] * (A.degree - db + 1)
    for shift in range(len(q) - 1, -1, -1):
        lead = r[shift + db]
        if lead % B.leading():
            raise ArithmeticError("division is not exact")
        c = lead // B.leading()
        q[shift] = c
        for i, b in enumerate(B.coeffs):
            r[i + shift] -= c * b
    if any(r):
        raise ArithmeticError("division is not exact")
    return IntPolynomial(tuple(q))


def squarefree_part(P: IntPolynomial) -> IntPolynomial:
    """``P / gcd(P, P')`` in primitive form."""
    if P.is_zero():
        raise DomainError("the zero polynomial has no squarefree part")
    if P.degree == 0:
        return IntPolynomial((1,))
    g = poly_gcd(P, P.derivative())
    return primitive(exact_quotient(primitive(P), g))


def sturm_chain(P: IntPolynomial) -> List[IntPolynomial]:
    chain = [P, P.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        a, b = chain[-2], chain[-1]
        r = pseudo_remainder(a, b)
        # prem = lc(b)^delta * rem; keep the sign of -rem
        delta = a.degree - b.degree + 1
        sign = -1 if (b.leading() < 0 and delta % 2) else 1
        r = r * (-sign)
        if r.is_zero():
            break
        g = content(r)
        chain.append(IntPolynomial(tuple(c // g for c in r.coeffs)))
    return [p for p in chain if not p.is_zero()]


def _sign_changes(values) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _at_pos_inf(chain):
    return _sign_changes([p.leading() for p in chain])


def _at_neg_inf(chain):
    return _sign_changes([p.leading() * (-1) ** p.degree for p in chain])


def _at(chain, x):
    return _sign_changes([p(x) for p in chain])


def _require_squarefree(P: IntPolynomial):
    if P.is_zero():
        raise DomainError("the zero polynomial has infinitely many roots")
    if P.degree > 0 and poly_gcd(P, P.derivative()).degree > 0:
        raise DomainError(f"{P.to_text()} is not squarefree")


def count_distinct_real_roots(P: IntPolynomial) -> int:
    """Number of distinct real roots of a squarefree polynomial (Sturm)."""
    _require_squarefree(P)
    if P.degree <= 0:
        return 0
    chain = sturm_chain(P)
    return _at_neg_inf(chain) - _at_pos_inf(chain)


def count_positive_roots(P: IntPolynomial) -> int:
    """Distinct roots in ``(0, +inf)`` of a squarefree ``P`` with ``P(0) != 0``."""
    _require_squarefree(P)
    if P.coeff(0) == 0:
        raise DomainError("P(0) must be nonzero")
    if P.degree <= 0:
        return 0
    chain = sturm_chain(P)
    return _at(chain, 0) - _at_pos_inf(chain)


@dataclass(frozen=True)
class RootReport:
    polynomial: IntPolynomial
    t_valuation: int
    squarefree_degree: int
    distinct_real_roots: int
    all_real: bool
    all_nonpositive: bool


def is_real_rooted(P: IntPolynomial) -> RootReport:
    """Decide whether every root of ``P`` is real, exactly."""
    if P.is_zero():
        raise DomainError("the zero polynomial")
    v = P.valuation
    sf = squarefree_part(P.shift_down(v))
    real = count_distinct_real_roots(sf)
    positive = count_positive_roots(sf)
    return RootReport(P, v, sf.degree, real, sf.degree == real, positive == 0)


def _support(P: IntPolynomial) -> List[int]:
    if P.is_zero():
        raise DomainError("the zero polynomial")
    if any(c < 0 for c in P.coeffs):
        raise DomainError(f"{P.to_text()} has a negative coefficient")
    return list(P.coeffs[P.valuation:])


def has_internal_zeros(P: IntPolynomial) -> bool:
    return 0 in _support(P)


def is_log_concave(P: IntPolynomial) -> bool:
    """``a_i^2 >= a_(i-1) a_(i+1)`` between the lowest and highest nonzero
    coefficients; internal zeros count as a failure."""
    a = _support(P)
    if 0 in a:
        return False
    return all(a[i] ** 2 >= a[i - 1] * a[i + 1] for i in range(1, len(a) - 1))


def is_unimodal(P: IntPolynomial) -> bool:
    a = _support(P)
    i = 0
    while i + 1 < len(a) and a[i] <= a[i + 1]:
        i += 1
    while i + 1 < len(a) and a[i] >= a[i + 1]:
        i += 1
    return i == len(a) - 1


@dataclass(frozen=True)
class Reduction:
    M_prime: MultisetSpec
    equal: bool
    quasi: IntPolynomial
    stirling: IntPolynomial


def reduced_multiset(M: MultisetSpec) -> MultisetSpec:
    """``{1^(K-n+1), 2, ..., n}``."""
    return MultisetSpec((M.K - M.n + 1,) + (1,) * (M.n - 1))


def corollary_reduction(M: MultisetSpec, cap: Optional[int] = None) -> Reduction:
    """Compare the quasi-Stirling polynomial of ``M`` with the Stirling
    polynomial of ``{1^(K-n+1), 2, ..., n}``."""
    Mp = reduced_multiset(M)
    q = quasi_stirling_polynomial(M, cap=cap)
    s = stirling_polynomial(Mp, cap=cap)
    return Reduction(Mp, q == s, q, s)


@dataclass
class AnalysisReport:
    multiset: MultisetSpec
    roots: RootReport
    log_concave: bool
    unimodal: bool
    internal_zeros: bool
    reduction: Reduction

    @property
    def passed(self) -> bool:
        r = self.roots
        return (r.all_real and r.all_nonpositive and self.log_concave
                and self.unimodal and self.reduction.equal)

    def to_dict(self) -> dict:
        return {
            "multiset": self.multiset.to_text(),
            "polynomial": self.roots.polynomial.to_text(),
            "all_real": self.roots.all_real,
            "all_nonpositive": self.roots.all_nonpositive,
            "log_concave": self.log_concave,
            "unimodal": self.unimodal,
            "corollary_M_prime": self.reduction.M_prime.to_text(),
            "corollary_equal": self.reduction.equal,
        }


def analyze(M: MultisetSpec, cap: Optional[int] = None) -> AnalysisReport:
    reduction = corollary_reduction(M, cap)
    P = reduction.quasi
    return AnalysisReport(M, is_real_rooted(P), is_log_concave(P), is_unimodal(P),
                          has_internal_zeros(P), reduction)
