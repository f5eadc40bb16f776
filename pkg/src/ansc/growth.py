"""Asymptotic growth of a regular language.

The growth class of C_L(n) is decided exactly from the strongly connected
components of the trim DFA: a component is "trivial" (one state, no
self-transition), a "cycle" (every state has within-component
out-multiplicity exactly 1), or "expanding" (anything else). The language is
finite iff all components are trivial, of polynomial growth iff there is a
cycle but nothing expanding, and of exponential growth otherwise. Only the
expanding case needs numerics: the Frobenius root of the component's
submatrix, found by power iteration.

Classification is integer-only on purpose; comparing a floating eigenvalue
against 1.0 would reintroduce tolerance hazards into a trichotomy that is
decidable exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .automata import Dfa
from .errors import FiniteLanguageError, NotTrimmedError

__all__ = [
    "GROWTH_FINITE",
    "GROWTH_POLYNOMIAL",
    "GROWTH_EXPONENTIAL",
    "SCC_TRIVIAL",
    "SCC_CYCLE",
    "SCC_EXPANDING",
    "SccDecomposition",
    "GrowthInfo",
    "CrPrediction",
    "scc_decompose",
    "exact_scc_class",
    "frobenius_root",
    "index",
    "polynomial_index",
    "analyze_growth",
    "predict_cr",
]

GROWTH_FINITE = "finite"
GROWTH_POLYNOMIAL = "polynomial"
GROWTH_EXPONENTIAL = "exponential"

SCC_TRIVIAL = "trivial"
SCC_CYCLE = "cycle"
SCC_EXPANDING = "expanding"

INDEX_MATCH_TOL = 1e-6  # two expanding components count as equal-index within this


@dataclass(frozen=True)
class SccDecomposition:
    """Strongly connected components plus their condensation DAG.

    `components` is in reverse topological order (every component precedes
    the components that can reach it), which is the order Tarjan's algorithm
    emits them in. `edges` holds (src_component, dst_component) pairs of the
    condensation, self-loops excluded.
    """

    component_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    edges: frozenset[tuple[int, int]]


def scc_decompose(dfa: Dfa) -> SccDecomposition:
    """Iterative Tarjan decomposition of a trim DFA's transition graph."""
    if not dfa.trim:
        raise NotTrimmedError("scc_decompose requires a trim automaton")
    n = dfa.n_states
    succ = [sorted({t for t in row if t is not None}) for row in dfa.transitions]
    index_of = [-1] * n
    lowlink = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[tuple[int, ...]] = []
    component_of = [-1] * n
    counter = 0
    for root in range(n):
        if index_of[root] != -1:
            continue
        call: list[tuple[int, int]] = [(root, 0)]
        while call:
            v, i = call.pop()
            if i == 0:
                index_of[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while i < len(succ[v]):
                w = succ[v][i]
                i += 1
                if index_of[w] == -1:
                    call.append((v, i))
                    call.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    lowlink[v] = min(lowlink[v], index_of[w])
            if advanced:
                continue
            if lowlink[v] == index_of[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    component_of[w] = len(components)
                    comp.append(w)
                    if w == v:
                        break
                components.append(tuple(sorted(comp)))
            if call:
                parent = call[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
    edges = set()
    for p in range(n):
        for t in succ[p]:
            if component_of[p] != component_of[t]:
                edges.add((component_of[p], component_of[t]))
    return SccDecomposition(tuple(component_of), tuple(components), frozenset(edges))


def exact_scc_class(members: tuple[int, ...] | list[int], dfa: Dfa) -> str:
    """Integer-only growth class of one component.

    trivial: single state without a self-transition (local index 0).
    cycle: every state has exactly one within-component transition
    (local index exactly 1). expanding: anything else (local index > 1).
    """
    mset = set(members)
    multiplicities = []
    for p in members:
        multiplicities.append(sum(1 for t in dfa.transitions[p] if t in mset))
    if len(members) == 1 and multiplicities[0] == 0:
        return SCC_TRIVIAL
    if all(m == 1 for m in multiplicities):
        return SCC_CYCLE
    return SCC_EXPANDING


def frobenius_root(matrix, tol: float = 1e-9, max_iter: int = 10000) -> float:
    """Largest eigenvalue of an irreducible nonnegative integer matrix.

    Power iteration runs on M + I: the shift defeats the oscillation of
    imprimitive matrices (a bare cycle makes plain power iteration
    circulate), keeps the same eigenvectors, and adds exactly 1 to every
    eigenvalue. Convergence is checked with the two-sided Collatz-Wielandt
    bounds min_i (Av)_i / v_i <= lambda <= max_i (Av)_i / v_i, so the
    returned value is within `tol` of the true root regardless of the
    eigenvalue gap.
    """
    n = len(matrix)
    if n == 1:
        return float(matrix[0][0])
    v = [1.0] * n
    estimate = 0.0
    for _ in range(max_iter):
        w = [sum(matrix[i][j] * v[j] for j in range(n)) + v[i] for i in range(n)]
        ratios = [wi / vi for wi, vi in zip(w, v)]
        lo, hi = min(ratios), max(ratios)
        estimate = (lo + hi) / 2.0
        if hi - lo <= tol:
            break
        norm = max(w)
        v = [x / norm for x in w]
    return estimate - 1.0


def _scc_classes(dfa: Dfa):
    scc = scc_decompose(dfa)
    classes = [exact_scc_class(comp, dfa) for comp in scc.components]
    return scc, classes


def _expanding_roots(scc: SccDecomposition, classes, dfa: Dfa) -> dict[int, float]:
    roots: dict[int, float] = {}
    for ci, comp in enumerate(scc.components):
        if classes[ci] != SCC_EXPANDING:
            continue
        pos = {q: i for i, q in enumerate(comp)}
        sub = [[0] * len(comp) for _ in comp]
        for q in comp:
            for t in dfa.transitions[q]:
                if t in pos:
                    sub[pos[q]][pos[t]] += 1
        roots[ci] = frobenius_root(sub)
    return roots


def index(dfa: Dfa) -> tuple[float, str]:
    """Numeric growth index and growth class of the language.

    The index is exactly 0.0 for finite languages and exactly 1.0 for
    polynomial ones; for exponential languages it is the largest Frobenius
    root over the expanding components, accurate to 1e-9.
    """
    if not dfa.trim:
        raise NotTrimmedError("index requires a trim automaton")
    scc, classes = _scc_classes(dfa)
    if all(c == SCC_TRIVIAL for c in classes):
        return 0.0, GROWTH_FINITE
    roots = _expanding_roots(scc, classes, dfa)
    if not roots:
        return 1.0, GROWTH_POLYNOMIAL
    return max(roots.values()), GROWTH_EXPONENTIAL


def polynomial_index(dfa: Dfa, index_match_tol: float = INDEX_MATCH_TOL) -> int:
    """Degree of the polynomial factor in the growth of C_L(n).

    One less than the maximum number of maximal-index components met along
    a single condensation path; the path may pass through components of
    smaller index between them. Undefined (an error) for finite languages.
    """
    if not dfa.trim:
        raise NotTrimmedError("polynomial_index requires a trim automaton")
    scc, classes = _scc_classes(dfa)
    if all(c == SCC_TRIVIAL for c in classes):
        raise FiniteLanguageError("polynomial index is undefined for a finite language")
    roots = _expanding_roots(scc, classes, dfa)
    if roots:
        top = max(roots.values())
        marked = {ci for ci, r in roots.items() if r >= top - index_match_tol}
    else:
        marked = {ci for ci, c in enumerate(classes) if c == SCC_CYCLE}
    succs: dict[int, list[int]] = {}
    for a, b in scc.edges:
        succs.setdefault(a, []).append(b)
    # components arrive in reverse topological order, so successors are
    # always finished first
    best = [0] * len(scc.components)
    for ci in range(len(scc.components)):
        weight = 1 if ci in marked else 0
        best[ci] = weight + max((best[s] for s in succs.get(ci, ())), default=0)
    return max(best) - 1


@dataclass(frozen=True)
class GrowthInfo:
    """Growth summary of one language.

    `index_tolerance` is 0.0 when the index is exact (finite or polynomial)
    and the power-iteration tolerance otherwise. `polynomial_index` is None
    for finite languages, where it is undefined.
    """

    growth_class: str
    index: float
    index_tolerance: float
    polynomial_index: int | None


def analyze_growth(dfa: Dfa) -> GrowthInfo:
    ind, cls = index(dfa)
    if cls == GROWTH_FINITE:
        return GrowthInfo(cls, ind, 0.0, None)
    pd = polynomial_index(dfa)
    tol = 1e-9 if cls == GROWTH_EXPONENTIAL else 0.0
    return GrowthInfo(cls, ind, tol, pd)


@dataclass(frozen=True)
class CrPrediction:
    """Predicted limit of the compression ratio of a base conversion.

    kind is one of "ratio" (finite limit in `ratio`), "infinite", "zero",
    or "indeterminate-finite" (bounded, but the limit need not exist).
    """

    kind: str
    ratio: float | None = None


def predict_cr(src: GrowthInfo, dst: GrowthInfo) -> CrPrediction:
    """Limit compression ratio of converting src-language strings into the
    dst language, by growth-rate comparison.

    Into an exponential target the ratio tends to log Ind(L) / log Ind(L'),
    which is 0 when the source grows polynomially. An exponential source
    into a polynomial target diverges. Between two polynomial languages the
    polynomial degrees decide: smaller source degree gives 0, larger gives
    infinity, and equal degrees stay within a finite interval without a
    guaranteed limit.
    """
    for info in (src, dst):
        if info.growth_class == GROWTH_FINITE:
            raise FiniteLanguageError("compression ratio needs infinite languages")
    if dst.growth_class == GROWTH_EXPONENTIAL:
        return CrPrediction("ratio", math.log(src.index) / math.log(dst.index))
    if src.growth_class == GROWTH_EXPONENTIAL:
        return CrPrediction("infinite")
    assert src.polynomial_index is not None and dst.polynomial_index is not None
    if src.polynomial_index < dst.polynomial_index:
        return CrPrediction("zero")
    if src.polynomial_index > dst.polynomial_index:
        return CrPrediction("infinite")
    return CrPrediction("indeterminate-finite")
