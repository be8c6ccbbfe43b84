"""Half-edge trees, block trees, and the Pruefer-like code pairs.

Three families are indexed by a multiset ``M`` and a count ``m``:

* half-edge trees ``T*_{M,m}``: a tree of ``T_M`` with ``m`` unlabeled
  leaves hung from even-level vertices as compartment walls;
* block trees ``BT_{M,m}``: the children of each even-level vertex are cut
  into ``m`` blocks in total, each an unlabeled leaf or an increasing run;
* code pairs ``P_{M,m}``: a multiset ``P`` of attachment slots plus a
  sequence ``S`` of ``(slot, block index)`` pairs.

``psi`` maps block trees to half-edge trees and ``theta`` maps block trees to
code pairs; both come with inverses.  A slot is ``(0, 0)`` for the root or
``(x, j)`` for the j-th (1-based) child of the odd vertex labeled ``x``.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, List, Optional, Tuple

from .combinatorics import MultisetSpec, check_size, weak_compositions
from .errors import ParseError, ValidationError
from .polynomial import binomial
from .trees import Tree, enumerate_trees, parse_grouped, tree_violation

HALF = Tree(None)
ROOT_SLOT = (0, 0)
Slot = Tuple[int, int]


# ---------------------------------------------------------------------------
# half-edge trees

def half_edge_count(T: Tree) -> int:
    return sum(1 for node, _ in T.walk() if node.label is None)


def strip_half_edges(T: Tree) -> Tree:
    return Tree(T.label, tuple(strip_half_edges(c) for c in T.children if c.label is not None))


def half_edge_violation(M: MultisetSpec, T: Tree, m: Optional[int] = None) -> Optional[str]:
    for node, level in T.walk():
        if node.label is None and (level % 2 == 0 or node.children):
            return "half-edges must end in a leaf hanging from an even-level vertex"
    problem = tree_violation(M, strip_half_edges(T))
    if problem:
        return problem
    for node, level in T.walk():
        if level % 2 or node.label is None:
            continue
        u = node.label
        compartment = []
        for c in node.children + (HALF,):
            if c.label is None:
                if any(a > b for a, b in zip(compartment, compartment[1:])):
                    return f"compartment {compartment} under {u} is not increasing"
                compartment = []
            else:
                compartment.append(c.label)
        kids = node.children
        labeled = [i for i, c in enumerate(kids) if c.label is not None]
        if labeled:
            first, last = labeled[0], labeled[-1]
            if kids[last].label > u and last == len(kids) - 1:
                return f"missing wall right of {kids[last].label} under {u}"
            if u > kids[first].label and first == 0:
                return f"missing wall left of {kids[first].label} under {u}"
    if m is not None and half_edge_count(T) != m:
        return f"{half_edge_count(T)} half-edges, expected {m}"
    return None


def validate_half_edge_tree(M: MultisetSpec, T: Tree, m: Optional[int] = None) -> bool:
    return half_edge_violation(M, T, m) is None


def _even_vertices(T: Tree):
    return [node for node, level in T.walk() if level % 2 == 0]


def _required_walls(u: Tree) -> List[int]:
    labels = [c.label for c in u.children]
    need = [0] * (len(labels) + 1)
    if labels:
        need[0] = int(u.label > labels[0])
        for i in range(len(labels) - 1):
            need[i + 1] = int(labels[i] > labels[i + 1])
        need[-1] = int(labels[-1] > u.label)
    return need


def insert_half_edges(base: Tree, gaps) -> Tree:
    """Rebuild ``base`` with ``gaps[v][i]`` half-edges before child ``i`` of the
    v-th even vertex (preorder); the last entry counts those after all children."""
    it = iter(gaps)

    def rebuild(node, level):
        if level % 2:
            return Tree(node.label, tuple(rebuild(c, level + 1) for c in node.children))
        counts = next(it)
        kids = []
        for i, c in enumerate(node.children):
            kids += [HALF] * counts[i]
            kids.append(rebuild(c, level + 1))
        kids += [HALF] * counts[len(node.children)]
        return Tree(node.label, tuple(kids))

    return rebuild(base, 0)


def enumerate_half_edge_trees(M: MultisetSpec, m: int,
                              cap: Optional[int] = None) -> Iterator[Tree]:
    """Each member of ``T*_{M,m}`` exactly once.

    Every even vertex ``u`` with children ``v_1..v_l`` has ``l + 1`` gaps;
    a wall is forced at each cyclic descent of ``u v_1 ... v_l`` and the
    remaining half-edges go anywhere, including under childless even vertices.
    """
    check_size(M, cap)
    for base in enumerate_trees(M, cap):
        need = [_required_walls(u) for u in _even_vertices(base)]
        extra = m - sum(map(sum, need))
        if extra < 0:
            continue
        sizes = [len(x) for x in need]
        flat_need = [x for row in need for x in row]
        for comp in weak_compositions(extra, len(flat_need)):
            flat = [a + b for a, b in zip(flat_need, comp)]
            gaps, start = [], 0
            for s in sizes:
                gaps.append(flat[start:start + s])
                start += s
            yield insert_half_edges(base, gaps)


# ---------------------------------------------------------------------------
# block trees

@dataclass(frozen=True)
class BlockTree:
    """Tree whose even-level child lists are cut into blocks.

    ``blocks`` is a tuple of child tuples.  Odd-level vertices keep all their
    children in a single group; an unlabeled leaf has ``label=None``.
    """

    label: Optional[int]
    blocks: Tuple[Tuple["BlockTree", ...], ...] = ()

    @property
    def children(self) -> Tuple["BlockTree", ...]:
        return tuple(c for b in self.blocks for c in b)

    def to_text(self) -> str:
        head = "*" if self.label is None else str(self.label)
        if not self.blocks:
            return head
        return head + "(" + "|".join(",".join(c.to_text() for c in b) for b in self.blocks) + ")"

    def __str__(self):
        return self.to_text()

    def walk(self, level: int = 0):
        yield self, level
        for c in self.children:
            yield from c.walk(level + 1)

    def block_count(self) -> int:
        return sum(len(node.blocks) for node, level in self.walk() if level % 2 == 0)


TRIVIAL_BLOCK = (BlockTree(None),)


def parse_block_tree(text: str) -> BlockTree:
    def build(parsed, level):
        label, groups = parsed
        if level % 2 and len(groups) > 1:
            raise ParseError("odd-level vertices carry no blocks")
        return BlockTree(label, tuple(tuple(build(c, level + 1) for c in g) for g in groups))

    return build(parse_grouped(text), 0)


def _is_trivial(block) -> bool:
    return len(block) == 1 and block[0].label is None


def block_tree_skeleton(T: BlockTree) -> Tree:
    """The labeled tree left after deleting unlabeled leaves."""
    return Tree(T.label, tuple(block_tree_skeleton(c) for c in T.children if c.label is not None))


def block_tree_violation(M: MultisetSpec, T: BlockTree, m: Optional[int] = None) -> Optional[str]:
    for node, level in T.walk():
        if node.label is None:
            if level % 2 == 0 or node.blocks:
                return "(i) only leaves at odd level may be unlabeled"
            continue
        if level % 2:
            if len(node.blocks) > 1:
                return f"odd vertex {node.label} has blocks"
            if node.blocks and not node.blocks[0]:
                return f"odd vertex {node.label} has an empty child group"
            continue
        for block in node.blocks:
            if not block:
                return f"empty block under {node.label}"
            if any(c.label is None for c in block) and not _is_trivial(block):
                return f"(iv) unlabeled leaf shares a block under {node.label}"
            labels = [c.label for c in block]
            if not _is_trivial(block) and any(a >= b for a, b in zip(labels, labels[1:])):
                return f"(iv) block {labels} under {node.label} is not increasing"
    problem = tree_violation(M, block_tree_skeleton(T))
    if problem:
        return problem
    if m is not None and T.block_count() != m:
        return f"{T.block_count()} blocks, expected {m}"
    return None


def validate_block_tree(M: MultisetSpec, T: BlockTree, m: Optional[int] = None) -> bool:
    return block_tree_violation(M, T, m) is None


def _increasing_cuts(labels):
    """Ways to cut a label sequence into consecutive increasing runs."""
    L = len(labels)
    forced = [i for i in range(1, L) if labels[i - 1] > labels[i]]
    optional = [i for i in range(1, L) if labels[i - 1] < labels[i]]
    for r in range(len(optional) + 1):
        for extra in combinations(optional, r):
            cuts = sorted(forced + list(extra))
            edges = [0] + cuts + [L]
            yield [(a, b) for a, b in zip(edges, edges[1:])]


def enumerate_block_trees(M: MultisetSpec, m: int,
                          cap: Optional[int] = None) -> Iterator[BlockTree]:
    """Each member of ``BT_{M,m}`` exactly once.

    For every tree of ``T_M`` and every even vertex: cut its children into
    increasing runs (mandatory cuts at descents), then interleave trivial
    blocks anywhere between runs.
    """
    check_size(M, cap)

    def even(node: Tree, budget: int):
        kids = node.children
        runs_options = list(_increasing_cuts([c.label for c in kids])) if kids else [[]]
        for runs in runs_options:
            b = len(runs)
            if b > budget:
                continue
            for j in range(budget - b + 1):
                for spread in weak_compositions(j, b + 1):
                    for subs, used in odd_list(kids, budget - b - j):
                        blocks = []
                        for pos, (lo, hi) in enumerate(runs):
                            blocks += [TRIVIAL_BLOCK] * spread[pos]
                            blocks.append(tuple(subs[lo:hi]))
                        blocks += [TRIVIAL_BLOCK] * spread[b]
                        yield BlockTree(node.label, tuple(blocks)), b + j + used

    def odd(node: Tree, budget: int):
        if not node.children:
            yield BlockTree(node.label), 0
            return
        for subs, used in even_list(node.children, budget):
            yield BlockTree(node.label, (tuple(subs),)), used

    def chain(fn, nodes, budget):
        if not nodes:
            yield [], 0
            return
        for head, used in fn(nodes[0], budget):
            for tail, more in chain(fn, nodes[1:], budget - used):
                yield [head] + tail, used + more

    def odd_list(nodes, budget):
        return chain(odd, nodes, budget)

    def even_list(nodes, budget):
        return chain(even, nodes, budget)

    for base in enumerate_trees(M, cap):
        for T, used in even(base, m):
            if used == m:
                yield T


# ---------------------------------------------------------------------------
# psi: block trees -> half-edge trees

def _psi(node: BlockTree, level: int) -> Tree:
    if level % 2 or node.label is None:
        return Tree(node.label, tuple(_psi(c, level + 1) for c in node.children))
    u = node.label
    seq = []
    for block in node.blocks:
        if _is_trivial(block):
            seq.append(HALF)
        else:
            seq += [_psi(c, level + 1) for c in block]
            seq.append(HALF)
    if node.blocks and not _is_trivial(node.blocks[0]):
        t = sum(1 for c in node.blocks[0] if c.label < u)
        seq = seq[t:] + seq[:t]
    return Tree(u, tuple(seq))


def psi(T: BlockTree, M: Optional[MultisetSpec] = None) -> Tree:
    """Close every non-trivial block with a half-edge, then move the part of
    the leftmost block smaller than its parent to the end of the child list."""
    if M is not None:
        problem = block_tree_violation(M, T)
        if problem:
            raise ValidationError(problem)
    return _psi(T, 0)


def _psi_inverse(node: Tree, level: int) -> BlockTree:
    if level % 2 or node.label is None:
        kids = tuple(_psi_inverse(c, level + 1) for c in node.children)
        return BlockTree(node.label, (kids,) if kids else ())
    if not node.children:
        return BlockTree(node.label)
    kids = [_psi_inverse(c, level + 1) if c.label is not None else None
            for c in node.children]
    walls = [i for i, c in enumerate(kids) if c is None]
    if not walls:
        raise ValidationError(f"even vertex {node.label} has children but no half-edge")
    last = walls[-1]
    kids = kids[last + 1:] + kids[:last + 1]
    blocks = []
    compartment = []
    for c in kids:
        if c is None:
            blocks.append(tuple(compartment) if compartment else TRIVIAL_BLOCK)
            compartment = []
        else:
            compartment.append(c)
    return BlockTree(node.label, tuple(blocks))


def psi_inverse(T: Tree, M: Optional[MultisetSpec] = None) -> BlockTree:
    """Bring the children right of the last half-edge to the front, then turn
    each non-empty compartment into a block (absorbing the wall to its right)
    and each remaining half-edge into a trivial block."""
    if M is not None:
        problem = half_edge_violation(M, T)
        if problem:
            raise ValidationError(problem)
    return _psi_inverse(T, 0)


# ---------------------------------------------------------------------------
# code pairs

@dataclass(frozen=True)
class CodePair:
    """``P`` as sorted ``(slot, multiplicity)`` pairs, ``S`` as ``(slot, b)`` pairs."""

    P: Tuple[Tuple[Slot, int], ...]
    S: Tuple[Tuple[Slot, int], ...]

    @classmethod
    def make(cls, P, S) -> "CodePair":
        counts = Counter(dict(P)) if not isinstance(P, Counter) else P
        return cls(tuple(sorted((s, c) for s, c in counts.items() if c)),
                   tuple((tuple(a), b) for a, b in S))

    def multiplicity(self, slot: Slot) -> int:
        return dict(self.P).get(slot, 0)

    @property
    def size(self) -> int:
        return sum(c for _, c in self.P)

    def to_text(self) -> str:
        return f"P={format_slot_multiset(self.P)} S={format_sequence(self.S)}"

    def __str__(self):
        return self.to_text()


def format_slot(slot: Slot) -> str:
    return "0" if slot == ROOT_SLOT else f"{slot[0]}_{slot[1]}"


def format_slot_multiset(P) -> str:
    parts = []
    for slot, c in sorted(dict(P).items()):
        parts.append(format_slot(slot) + (f"^{c}" if c > 1 else ""))
    return ",".join(parts)


def format_sequence(S) -> str:
    return "".join(f"({format_slot(a)},{b})" for a, b in S)


def parse_slot(text: str) -> Slot:
    text = text.strip()
    if text == "0":
        return ROOT_SLOT
    match = re.fullmatch(r"(\d+)_(\d+)", text)
    if not match:
        raise ParseError(f"bad slot {text!r}")
    x, j = int(match.group(1)), int(match.group(2))
    if x < 1 or j < 1:
        raise ParseError(f"bad slot {text!r}")
    return x, j


def parse_code_pair(p_text: str, s_text: str) -> CodePair:
    """Read ``"0^2,3_1,5_1^2"`` and ``"(5_1,1)(0,2)"``."""
    counts = Counter()
    for tok in p_text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        slot, _, mult = tok.partition("^")
        try:
            counts[parse_slot(slot)] += int(mult) if mult else 1
        except ValueError:
            raise ParseError(f"bad multiplicity in {tok!r}") from None
    pairs = re.findall(r"\(([^,()]+),\s*(\d+)\)", s_text)
    if re.sub(r"\(([^,()]+),\s*(\d+)\)", "", s_text).strip():
        raise ParseError(f"bad sequence {s_text!r}")
    return CodePair.make(counts, [(parse_slot(a), int(b)) for a, b in pairs])


def slots_of(M: MultisetSpec) -> List[Slot]:
    return [ROOT_SLOT] + [(x, j) for x, k in enumerate(M.mult, 1) for j in range(1, k)]


def code_pair_violation(M: MultisetSpec, c: CodePair, m: Optional[int] = None) -> Optional[str]:
    valid = set(slots_of(M))
    P = dict(c.P)
    for slot, mult in P.items():
        if slot not in valid:
            return f"slot {format_slot(slot)} does not exist for {M}"
        if mult < 1:
            return f"slot {format_slot(slot)} has multiplicity {mult}"
    if m is not None and c.size != m:
        return f"|P| = {c.size}, expected {m}"
    if len(c.S) != M.n:
        return f"S has {len(c.S)} pairs, expected {M.n}"
    for i, (a, b) in enumerate(c.S, 1):
        if a not in P:
            return f"a_{i} = {format_slot(a)} is not in P"
        if not 1 <= b <= P[a]:
            return f"b_{i} = {b} out of range 1..{P[a]}"
    if c.S[-1][0] != ROOT_SLOT:
        return "a_n must be 0"
    return None


def enumerate_code_pairs(M: MultisetSpec, m: int, cap: Optional[int] = None) -> Iterator[CodePair]:
    """Every pair of ``P_{M,m}`` once."""
    check_size(M, cap)
    slots = slots_of(M)
    for comp in weak_compositions(m, len(slots)):
        if comp[0] == 0:
            continue
        P = tuple((s, c) for s, c in zip(slots, comp) if c)
        choices = [(s, b) for s, c in P for b in range(1, c + 1)]
        last = [(ROOT_SLOT, b) for b in range(1, comp[0] + 1)]
        for head in product(choices, repeat=M.n - 1):
            for tail in last:
                yield CodePair(P, head + (tail,))


def count_code_pairs(M: MultisetSpec, m: int) -> int:
    """``|P_{M,m}| = m^(n-1) * C(K-n+m, K-n+1)``."""
    return m ** (M.n - 1) * binomial(M.K - M.n + m, M.K - M.n + 1)


# ---------------------------------------------------------------------------
# theta: block trees -> code pairs

def _slot_table(T: BlockTree):
    """Map each even vertex slot to its blocks, and each odd label to
    ``(parent slot, 1-based block index)``."""
    blocks_at = {}
    position = {}

    def visit_even(node: BlockTree, slot: Slot):
        blocks_at[slot] = node.blocks
        for b, block in enumerate(node.blocks, 1):
            for c in block:
                if c.label is not None:
                    position[c.label] = (slot, b)
                    for j, even_child in enumerate(c.children, 1):
                        visit_even(even_child, (c.label, j))

    visit_even(T, ROOT_SLOT)
    return blocks_at, position


def pruning_order(M: MultisetSpec, position) -> List[int]:
    """Repeatedly remove the largest odd vertex whose children are all leaves."""
    load = Counter(slot for slot, _ in position.values())
    remaining = set(position)
    order = []
    while remaining:
        eligible = [x for x in remaining
                    if all(load[(x, j)] == 0 for j in range(1, M.k(x)))]
        x = max(eligible)
        order.append(x)
        remaining.remove(x)
        load[position[x][0]] -= 1
    return order


def theta(T: BlockTree, M: MultisetSpec) -> CodePair:
    problem = block_tree_violation(M, T)
    if problem:
        raise ValidationError(problem)
    blocks_at, position = _slot_table(T)
    P = Counter({slot: len(blocks) for slot, blocks in blocks_at.items() if blocks})
    order = pruning_order(M, position)
    return CodePair.make(P, [position[x] for x in order])


def theta_inverse(c: CodePair, M: MultisetSpec) -> BlockTree:
    """Rebuild the block tree of a code pair.

    At step ``i`` the label placed is the largest unused one none of whose
    slots is named again in ``a_i..a_n``; it joins block ``b_i`` at slot
    ``a_i``.  Blocks never named in ``S`` become trivial blocks.
    """
    problem = code_pair_violation(M, c)
    if problem:
        raise ValidationError(problem)
    members = {}
    used = set()
    for i, (a, b) in enumerate(c.S):
        later = {slot for slot, _ in c.S[i:]}
        candidates = [x for x in range(1, M.n + 1) if x not in used
                      and all((x, j) not in later for j in range(1, M.k(x)))]
        x = max(candidates)
        used.add(x)
        members.setdefault((a, b), []).append(x)
    P = dict(c.P)

    def even(label: int, slot: Slot) -> BlockTree:
        blocks = []
        for b in range(1, P.get(slot, 0) + 1):
            labels = sorted(members.get((slot, b), []))
            blocks.append(tuple(odd(x) for x in labels) if labels else TRIVIAL_BLOCK)
        return BlockTree(label, tuple(blocks))

    def odd(x: int) -> BlockTree:
        kids = tuple(even(x, (x, j)) for j in range(1, M.k(x)))
        return BlockTree(x, (kids,) if kids else ())

    return even(0, ROOT_SLOT)
