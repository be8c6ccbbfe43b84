"""Ordered labeled trees with cyclic descents and their word encoding.

A tree in the family ``T_M`` has root 0; every odd-level vertex labeled
``i`` has exactly ``k_i - 1`` children, all labeled ``i``; the labels used
are exactly ``{0} + M``.  Text format: ``0(2,7(7(1)),5(5(6,3(3)),5(4)))``,
with ``*`` for an unlabeled leaf.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, List, Optional, Tuple

from .combinatorics import (NEG_INF, POS_INF, MultisetSpec, Word, check_size,
                            format_word, is_quasi_stirling, word_content)
from .errors import ParseError, PatternError, ValidationError
from .polynomial import IntPolynomial


@dataclass(frozen=True)
class Tree:
    label: Optional[int]
    children: Tuple["Tree", ...] = ()

    def to_text(self) -> str:
        head = "*" if self.label is None else str(self.label)
        if not self.children:
            return head
        return head + "(" + ",".join(c.to_text() for c in self.children) + ")"

    def __str__(self):
        return self.to_text()

    def walk(self, level: int = 0):
        """Yield ``(node, level)`` in preorder."""
        yield self, level
        for c in self.children:
            yield from c.walk(level + 1)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


ONE_VERTEX = Tree(0)


# ---------------------------------------------------------------------------
# text format (shared with block trees: '|' separates blocks)

def parse_grouped(text: str):
    """Parse into nested ``(label, [group, ...])`` with groups split on ``|``."""
    s = text.replace(" ", "")
    pos = 0

    def node():
        nonlocal pos
        if pos < len(s) and s[pos] == "*":
            pos += 1
            label = None
        else:
            start = pos
            while pos < len(s) and s[pos].isdigit():
                pos += 1
            if start == pos:
                raise ParseError(f"expected a label at offset {pos} in {text!r}")
            label = int(s[start:pos])
        groups = []
        if pos < len(s) and s[pos] == "(":
            pos += 1
            group = [node()]
            while True:
                if pos >= len(s):
                    raise ParseError(f"unterminated child list in {text!r}")
                ch = s[pos]
                pos += 1
                if ch == ",":
                    group.append(node())
                elif ch == "|":
                    groups.append(group)
                    group = [node()]
                elif ch == ")":
                    groups.append(group)
                    break
                else:
                    raise ParseError(f"unexpected {ch!r} at offset {pos - 1} in {text!r}")
        return label, groups

    result = node()
    if pos != len(s):
        raise ParseError(f"trailing text at offset {pos} in {text!r}")
    return result


def parse_tree(text: str) -> Tree:
    def build(parsed):
        label, groups = parsed
        if len(groups) > 1:
            raise ParseError("block separators are not allowed in a plain tree")
        kids = groups[0] if groups else []
        return Tree(label, tuple(build(k) for k in kids))

    return build(parse_grouped(text))


# ---------------------------------------------------------------------------
# membership

def structure_violation(T: Tree) -> Optional[str]:
    """Check the shape rules that do not depend on a particular ``M``.

    Root labeled 0, odd vertices carry distinct positive labels, and every
    child of an odd vertex repeats its label.  Intermediate trees met while
    encoding satisfy exactly these.
    """
    if T.label != 0:
        return "(ii) root must be labeled 0"
    odd_labels = Counter()
    for node, level in T.walk():
        if node.label is None:
            return "unlabeled vertex in a labeled tree"
        if level == 0:
            continue
        if node.label < 1:
            return f"non-root vertex labeled {node.label}"
        if level % 2 == 1:
            odd_labels[node.label] += 1
            for c in node.children:
                if c.label != node.label:
                    return (f"(iii) odd vertex {node.label} has a child labeled {c.label}")
    repeated = [x for x, c in odd_labels.items() if c > 1]
    if repeated:
        return f"label {repeated[0]} sits on more than one odd vertex"
    return None


def tree_violation(M: MultisetSpec, T: Tree) -> Optional[str]:
    """First violated membership property of ``T_M``, or None."""
    problem = structure_violation(T)
    if problem:
        return problem
    for node, level in T.walk():
        if level % 2 == 1:
            if node.label > M.n:
                return f"(i) label {node.label} outside 1..{M.n}"
            if len(node.children) != M.k(node.label) - 1:
                return (f"(iii) odd vertex {node.label} has {len(node.children)} children, "
                        f"expected {M.k(node.label) - 1}")
    labels = Counter(node.label for node, _ in T.walk())
    expected = Counter({0: 1})
    for i, k in enumerate(M.mult, 1):
        expected[i] = k
    if labels != expected:
        return "(i) labels differ from the multiset {0} + M"
    return None


def validate_tree(M: MultisetSpec, T: Tree) -> bool:
    return tree_violation(M, T) is None


# ---------------------------------------------------------------------------
# enumeration

def _subsets(items: Tuple[int, ...]):
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def enumerate_trees(M: MultisetSpec, cap: Optional[int] = None) -> Iterator[Tree]:
    """Every member of ``T_M`` once, in a fixed recursive order.

    A tree is the root over an ordered sequence of odd subtrees.  An odd
    subtree picks its label ``r``, the set of labels living below it, and
    distributes that set over its ``k_r - 1`` even children, each again an
    ordered sequence of odd subtrees.
    """
    check_size(M, cap)

    @lru_cache(maxsize=None)
    def sequences(labels: Tuple[int, ...]) -> Tuple[Tuple[Tree, ...], ...]:
        # ordered forests of odd subtrees using exactly `labels`
        if not labels:
            return ((),)
        out = []
        for r in labels:
            others = tuple(x for x in labels if x != r)
            for below in _subsets(others):
                rest = tuple(x for x in others if x not in below)
                for evens in fillings(below, M.k(r) - 1):
                    head = Tree(r, tuple(Tree(r, kids) for kids in evens))
                    for tail in sequences(rest):
                        out.append((head,) + tail)
        return tuple(out)

    @lru_cache(maxsize=None)
    def fillings(labels: Tuple[int, ...], slots: int):
        # distribute `labels` over `slots` ordered forests
        if slots == 0:
            return ((),) if not labels else ()
        out = []
        for first in _subsets(labels):
            rest = tuple(x for x in labels if x not in first)
            for forest in sequences(first):
                for more in fillings(rest, slots - 1):
                    out.append((forest,) + more)
        return tuple(out)

    for forest in sequences(tuple(range(1, M.n + 1))):
        yield Tree(0, forest)


# ---------------------------------------------------------------------------
# statistics

def cdes_vertex(u: Tree) -> int:
    """Cyclic descents of ``u v_1 ... v_l`` (label of u, then its children)."""
    seq = [u.label] + [c.label for c in u.children]
    L = len(seq)
    return sum(1 for i in range(L) if seq[i] > seq[(i + 1) % L])


def cdes_tree(T: Tree) -> int:
    if not T.children:
        return 1
    return sum(cdes_vertex(node) for node, _ in T.walk())


def tree_ends(T: Tree):
    if not T.children:
        return POS_INF, NEG_INF
    return T.children[0].label, T.children[-1].label


def tree_polynomial(M: MultisetSpec, cap: Optional[int] = None) -> IntPolynomial:
    """``sum over T in T_M of t**cdes(T)``."""
    return IntPolynomial.from_counts(Counter(cdes_tree(T) for T in enumerate_trees(M, cap)))


# ---------------------------------------------------------------------------
# the bijection with quasi-Stirling words

def _phi(T: Tree) -> List[int]:
    if not T.children:
        return []
    first, rest = T.children[0], Tree(0, T.children[1:])
    r = first.label
    if not first.children:
        return [r] + _phi(rest)
    out = []
    for even in first.children:
        out.append(r)
        out += _phi(Tree(0, even.children))
    out.append(r)
    return out + _phi(rest)


def phi(T: Tree) -> Word:
    """Encode a tree as a quasi-Stirling word.

    The leftmost root child ``r`` is written, then each subtree hanging from
    an even child of ``r`` (rerooted at 0) followed by another ``r``, and
    finally the encoding of what remains of the root.
    """
    problem = structure_violation(T)
    if problem:
        raise ValidationError(problem)
    return tuple(_phi(T))


def _phi_inverse(w: Word) -> Tree:
    if not w:
        return ONE_VERTEX
    r = w[0]
    pos = [i for i, v in enumerate(w) if v == r]
    rest = _phi_inverse(w[pos[-1] + 1:])
    if len(pos) == 1:
        return Tree(0, (Tree(r),) + rest.children)
    segments = [w[a + 1:b] for a, b in zip(pos, pos[1:])]
    seen = set(w[pos[-1] + 1:])
    for seg in segments:
        vals = set(seg)
        # a value split across two r-delimited segments would form r x r x
        if vals & seen:
            raise PatternError(f"value straddles occurrences of {r}")
        seen |= vals
    evens = tuple(Tree(r, _phi_inverse(seg).children) for seg in segments)
    return Tree(0, (Tree(r, evens),) + rest.children)


def phi_inverse(w: Word, M: Optional[MultisetSpec] = None) -> Tree:
    """Decode a quasi-Stirling word back into its tree.

    With ``r = w[0]``, the occurrences of ``r`` cut ``w`` into
    ``r s_1 r s_2 ... r s_0``; each ``s_i`` becomes the forest below the i-th
    even child of ``r`` and ``s_0`` the rest of the root's forest.
    """
    w = tuple(w)
    if not is_quasi_stirling(w):
        raise PatternError(f"{format_word(w)} contains an abab pattern")
    if M is not None and w:
        content = word_content(w)
        if content != M:
            raise ValidationError(f"word content {content.mult} differs from {M.mult}")
    return _phi_inverse(w)
