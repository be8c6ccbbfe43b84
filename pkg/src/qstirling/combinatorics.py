"""Multisets, words over them, and the permutation-side statistics.

A multiset ``{1^k1, ..., n^kn}`` is stored as its multiplicity vector.  Words
are plain tuples of ints in ``1..n``; 0 is reserved for tree roots.

``des`` follows the "+1" convention: a word with no strict descent has
``des == 1``, so every descent polynomial built here is divisible by ``t``.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .errors import DomainError, ParseError, SizeLimitError, ValidationError

Word = Tuple[int, ...]

# first(eps) / last(eps); floats so they compare against ints without special cases
POS_INF = math.inf
NEG_INF = -math.inf

DEFAULT_SIZE_CAP = 9
SIZE_CAP_ENV = "QSTIRLING_SIZE_CAP"


@dataclass(frozen=True)
class MultisetSpec:
    """Multiplicity vector ``(k_1, ..., k_n)`` with every ``k_i >= 1``."""

    mult: Tuple[int, ...]

    def __post_init__(self):
        mult = tuple(self.mult)
        if not mult:
            raise ValidationError("a multiset needs at least one value")
        for k in mult:
            if not isinstance(k, int) or isinstance(k, bool) or k < 1:
                raise ValidationError(f"multiplicity must be >= 1, got {k!r}")
        object.__setattr__(self, "mult", mult)

    @property
    def n(self) -> int:
        return len(self.mult)

    @property
    def K(self) -> int:
        return sum(self.mult)

    def k(self, value: int) -> int:
        return self.mult[value - 1]

    @classmethod
    def uniform(cls, n: int, k: int) -> "MultisetSpec":
        return cls((k,) * n)

    def to_text(self) -> str:
        return ",".join(map(str, self.mult))

    def set_notation(self) -> str:
        parts = [str(i) if k == 1 else f"{i}^{k}" for i, k in enumerate(self.mult, 1)]
        return "{" + ", ".join(parts) + "}"

    def __str__(self):
        return self.set_notation()


def parse_multiset(text: str) -> MultisetSpec:
    """Parse ``"k1,k2,...,kn"`` (e.g. ``"1,2,1"`` is ``{1, 2^2, 3}``)."""
    tokens = [tok.strip() for tok in text.split(",")]
    if not text.strip() or not tokens:
        raise ParseError("empty multiplicity list")
    mult = []
    for tok in tokens:
        try:
            k = int(tok)
        except ValueError:
            raise ParseError(f"not an integer multiplicity: {tok!r}") from None
        if k < 1:
            raise ParseError(f"multiplicity must be >= 1: {tok!r}")
        mult.append(k)
    return MultisetSpec(tuple(mult))


def size_cap() -> int:
    """Enumeration cap on K; overridable through ``QSTIRLING_SIZE_CAP``."""
    raw = os.environ.get(SIZE_CAP_ENV)
    if raw is None:
        return DEFAULT_SIZE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ParseError(f"{SIZE_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ParseError(f"{SIZE_CAP_ENV} must be positive, got {cap}")
    return cap


def check_size(M: MultisetSpec, cap: Optional[int] = None) -> None:
    cap = size_cap() if cap is None else cap
    if M.K > cap:
        raise SizeLimitError(M.K, cap)


# ---------------------------------------------------------------------------
# words

def parse_word(text: str) -> Word:
    """Read a word written compactly (``"27175"``) or with dots (``"2.7.1.7.5"``)."""
    text = text.strip()
    if text in ("", "eps", "ε"):
        return ()
    if "." in text:
        tokens = text.split(".")
    else:
        tokens = list(text)
    try:
        word = tuple(int(tok) for tok in tokens)
    except ValueError:
        raise ParseError(f"bad word: {text!r}") from None
    if any(v < 1 for v in word):
        raise ParseError(f"word letters must be positive: {text!r}")
    return word


def format_word(w: Sequence[int]) -> str:
    if not w:
        return "ε"
    if max(w) <= 9:
        return "".join(map(str, w))
    return ".".join(map(str, w))


def word_content(w: Iterable[int]) -> MultisetSpec:
    """The multiset a word is a permutation of; its values must be exactly 1..n."""
    w = tuple(w)
    if not w:
        raise ValidationError("the empty word has no multiset")
    n = max(w)
    counts = [0] * n
    for v in w:
        if v < 1:
            raise ValidationError(f"letter out of range: {v}")
        counts[v - 1] += 1
    return MultisetSpec(tuple(counts))


def validate_word(M: MultisetSpec, w: Sequence[int]) -> None:
    counts = [0] * M.n
    for v in w:
        if not 1 <= v <= M.n:
            raise ValidationError(f"letter {v} outside 1..{M.n}")
        counts[v - 1] += 1
    if tuple(counts) != M.mult:
        raise ValidationError(
            f"word {format_word(w)} has content {tuple(counts)}, expected {M.mult}")


def _next_permutation(a: list) -> bool:
    i = len(a) - 2
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = len(a) - 1
    while a[j] <= a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    a[i + 1:] = reversed(a[i + 1:])
    return True


def enumerate_words(M: MultisetSpec) -> Iterator[Word]:
    """All distinct permutations of ``M`` in lexicographic order."""
    a = [v for v, k in enumerate(M.mult, 1) for _ in range(k)]
    while True:
        yield tuple(a)
        if not _next_permutation(a):
            return


def multinomial(M: MultisetSpec) -> int:
    total = math.factorial(M.K)
    for k in M.mult:
        total //= math.factorial(k)
    return total


def _arcs(w: Sequence[int]):
    last = {}
    arcs = []
    for pos, v in enumerate(w):
        if v in last:
            arcs.append((last[v], pos))
        last[v] = pos
    return arcs


def is_quasi_stirling(w: Sequence[int]) -> bool:
    """True iff ``w`` has no indices i<j<k<l with w_i = w_k and w_j = w_l.

    An ``abab`` occurrence exists exactly when two arcs joining consecutive
    occurrences of a value cross, so the arcs are tested pairwise.
    """
    for (i, k), (j, l) in combinations(_arcs(w), 2):
        if i < j < k < l or j < i < l < k:
            return False
    return True


def is_stirling(w: Sequence[int]) -> bool:
    """Everything strictly between two consecutive copies of a letter is larger than it."""
    for i, k in _arcs(w):
        if any(w[p] <= w[i] for p in range(i + 1, k)):
            return False
    return True


def des(w: Sequence[int]) -> int:
    """Strict descents plus one."""
    if len(w) == 0:
        raise DomainError("des is undefined on the empty word")
    return 1 + sum(1 for a, b in zip(w, w[1:]) if a > b)


def ends(w: Sequence[int]):
    """``(first, last)`` of a word, ``(+inf, -inf)`` for the empty word."""
    if len(w) == 0:
        return POS_INF, NEG_INF
    return w[0], w[-1]


@dataclass(frozen=True)
class SpecialCounts:
    total: Optional[int] = None
    top_des: Optional[int] = None


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def special_counts(M: MultisetSpec) -> SpecialCounts:
    """Closed-form counts known for uniform multisets.

    ``total`` is ``n! C_n`` for ``{1^2,...,n^2}``; ``top_des`` is the number
    of quasi-Stirling words with ``des == n`` for ``{1^k,...,n^k}``, k >= 2.
    """
    k = M.mult[0]
    if k < 2 or any(x != k for x in M.mult):
        return SpecialCounts()
    n = M.n
    top = ((k - 1) * n + 1) ** (n - 1)
    if k == 2:
        return SpecialCounts(total=math.factorial(n) * catalan(n), top_des=top)
    return SpecialCounts(top_des=top)


# ---------------------------------------------------------------------------
# compositions

def weak_compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    # stars and bars: choose where the parts-1 bars go among total+parts-1 slots
    for bars in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def compositions(total: int) -> Iterator[Tuple[int, ...]]:
    """Positive compositions of ``total``."""
    for cuts in range(total):
        for bars in combinations(range(1, total), cuts):
            edges = (0,) + bars + (total,)
            yield tuple(b - a for a, b in zip(edges, edges[1:]))


def multisets_up_to(max_size: int) -> list:
    """Every multiset with ``K <= max_size``, ordered by (K, n, multiplicities)."""
    out = [MultisetSpec(c) for K in range(1, max_size + 1) for c in compositions(K)]
    out.sort(key=lambda M: (M.K, M.n, M.mult))
    return out
