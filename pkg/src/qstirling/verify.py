"""Exhaustive cross-checks of the bijections and the batch sweep."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .analysis import analyze
from .codes import (count_code_pairs, enumerate_block_trees, enumerate_code_pairs,
                    enumerate_half_edge_trees, half_edge_count, half_edge_violation, psi,
                    psi_inverse, theta, theta_inverse)
from .combinatorics import (MultisetSpec, Word, check_size, des, ends, enumerate_words,
                            format_word, is_quasi_stirling, multisets_up_to, word_content)
from .polynomial import verify_main_identity
from .trees import cdes_tree, enumerate_trees, phi, phi_inverse, tree_ends, validate_tree


@dataclass
class PhiReport:
    multiset: MultisetSpec
    trees: int = 0
    words: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.trees == self.words

    def to_dict(self):
        return {"multiset": self.multiset.to_text(), "trees": self.trees,
                "words": self.words, "failures": self.failures, "pass": self.passed}


def check_phi(M: MultisetSpec, cap: Optional[int] = None) -> PhiReport:
    """Tree/word bijection on all of ``T_M``: statistics and both round-trips."""
    check_size(M, cap)
    report = PhiReport(M)
    words = {w for w in enumerate_words(M) if is_quasi_stirling(w)}
    report.words = len(words)
    images = set()
    for T in enumerate_trees(M, cap):
        report.trees += 1
        w = phi(T)
        if w not in words:
            report.failures.append(f"phi({T}) = {format_word(w)} is not quasi-Stirling over M")
            continue
        if (cdes_tree(T),) + tree_ends(T) != (des(w),) + ends(w):
            report.failures.append(f"statistics differ on {T}")
        if phi_inverse(w) != T:
            report.failures.append(f"phi_inverse(phi({T})) != T")
        images.add(w)
    if len(images) != report.trees:
        report.failures.append("phi is not injective")
    for w in words:
        T = phi_inverse(w, M)
        if not validate_tree(M, T) or phi(T) != w:
            report.failures.append(f"phi(phi_inverse({format_word(w)})) != w")
    return report


@dataclass
class SpotReport:
    word: Word
    tree: str
    triple: tuple
    passed: bool

    def to_dict(self):
        return {"word": format_word(self.word), "tree": self.tree,
                "triple": list(self.triple), "pass": self.passed}


def spot_check(w: Word) -> SpotReport:
    T = phi_inverse(w)
    triple = (cdes_tree(T),) + tree_ends(T)
    ok = (validate_tree(word_content(w), T) and phi(T) == tuple(w)
          and triple == (des(w),) + ends(w))
    return SpotReport(tuple(w), T.to_text(), triple, ok)


@dataclass
class CodeReport:
    multiset: MultisetSpec
    m: int
    block_trees: int = 0
    half_edge_trees: int = 0
    code_pairs: int = 0
    closed_form: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and (self.block_trees == self.half_edge_trees
                                      == self.code_pairs == self.closed_form)

    def to_dict(self):
        return {"multiset": self.multiset.to_text(), "m": self.m,
                "block_trees": self.block_trees, "half_edge_trees": self.half_edge_trees,
                "code_pairs": self.code_pairs, "closed_form": self.closed_form,
                "failures": self.failures, "pass": self.passed}


def check_codes(M: MultisetSpec, m: int, cap: Optional[int] = None) -> CodeReport:
    """Cardinalities of the three m-indexed families and both bijections."""
    check_size(M, cap)
    bts = list(enumerate_block_trees(M, m, cap))
    hes = set(enumerate_half_edge_trees(M, m, cap))
    cps = set(enumerate_code_pairs(M, m, cap))
    r = CodeReport(M, m, len(bts), len(hes), len(cps), count_code_pairs(M, m))
    psi_images, theta_images = set(), set()
    for B in bts:
        H = psi(B)
        if half_edge_violation(M, H, m) or half_edge_count(H) != B.block_count():
            r.failures.append(f"psi({B}) = {H} is not a valid half-edge tree")
        if psi_inverse(H) != B:
            r.failures.append(f"psi_inverse(psi({B})) != B")
        psi_images.add(H)
        c = theta(B, M)
        if theta_inverse(c, M) != B:
            r.failures.append(f"theta_inverse(theta({B})) != B")
        theta_images.add(c)
    if psi_images != hes:
        r.failures.append("psi image differs from the half-edge trees")
    if theta_images != cps:
        r.failures.append("theta image differs from the code pairs")
    if len(set(bts)) != len(bts):
        r.failures.append("block-tree enumeration repeats a tree")
    for H in hes:
        if psi(psi_inverse(H)) != H:
            r.failures.append(f"psi(psi_inverse({H})) != H")
    for c in cps:
        if theta(theta_inverse(c, M), M) != c:
            r.failures.append(f"theta(theta_inverse({c})) != c")
    return r


@dataclass
class SweepRow:
    multiset: MultisetSpec
    identity: bool
    analysis: bool
    phi: bool
    codes: bool
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.identity and self.analysis and self.phi and self.codes

    def to_dict(self):
        return {"multiset": self.multiset.to_text(), "identity": self.identity,
                "analysis": self.analysis, "phi": self.phi, "codes": self.codes,
                "notes": self.notes, "pass": self.passed}


def sweep_one(M: MultisetSpec, terms: int, code_m: Sequence[int] = (0, 1, 2),
              cap: Optional[int] = None) -> SweepRow:
    ident = verify_main_identity(M, terms, cap)
    an = analyze(M, cap)
    ph = check_phi(M, cap)
    codes = [check_codes(M, m, cap) for m in code_m]
    notes = ph.failures[:3] + [f for c in codes for f in c.failures[:3]]
    notes += [f"m={c.m}: counts {c.block_trees}/{c.half_edge_trees}/{c.code_pairs} "
              f"vs {c.closed_form}" for c in codes if not c.passed and not c.failures]
    return SweepRow(M, ident.passed, an.passed, ph.passed, all(c.passed for c in codes), notes)


def _sweep_task(args):
    return sweep_one(*args)


def sweep(max_size: int, terms: int, code_m: Sequence[int] = (0, 1, 2),
          cap: Optional[int] = None, jobs: int = 1) -> List[SweepRow]:
    """Run every check on each multiset with ``K <= max_size``; rows come back
    in canonical multiset order whatever ``jobs`` is."""
    multisets = multisets_up_to(max_size)
    if multisets:
        check_size(multisets[-1], cap)
    tasks = [(M, terms, tuple(code_m), cap) for M in multisets]
    if jobs <= 1:
        return [_sweep_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_sweep_task, tasks))
