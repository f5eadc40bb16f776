"""Exact counting of language members through the adjacency matrix.

For a trim DFA with adjacency matrix M, initial row vector V_I, and
accepting column vector V_F, the number of accepted strings of length n is
V_I M^n V_F. Everything here is arbitrary-precision integer arithmetic;
no floating point enters this module.

Counting grows a single shared ladder of suffix vectors u_k = M^k V_F plus
running sum vectors s_k = u_0 + ... + u_k. Ranking and unranking both need
the full ladder anyway, so this trades O(n * |Q|) stored big integers for
strictly fewer multiplications than repeated squaring. Cumulative counts at
ranks far beyond the ladder are served by PowerSums, which evaluates
V_I (sum of M^i) V_F through repeated squaring of an augmented matrix and
never touches the ladder.

Multiplication counters follow one pinned convention: the ladder's u_0 is
free (cached at construction), every ladder extension step is one
matrix-vector product, and every count/cum_count call is one vector-vector
product. Nothing else in count() or cum_count() multiplies.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .automata import Dfa
from .errors import CapacityError, NotTrimmedError

__all__ = [
    "Matrix",
    "Vector",
    "OpCounters",
    "MatrixRep",
    "matrix_rep",
    "mat_mul",
    "mat_vec",
    "vec_dot",
    "identity",
    "mat_pow",
    "CountCache",
    "PowerSums",
    "MAX_LADDER_ENTRIES",
    "MAX_LADDER_BITS",
]

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]

# Guardrails for the shared ladder; beyond them callers fall back to
# PowerSums or fail with CapacityError instead of exhausting memory.
MAX_LADDER_ENTRIES = 1 << 20
MAX_LADDER_BITS = 1 << 31


@dataclass
class OpCounters:
    """Multiplication tallies in the style of a complexity table.

    Counts only ever increase between resets. They are diagnostics, not
    synchronization points; concurrent increments may undercount.
    """

    mat_mat: int = 0
    mat_vec: int = 0
    vec_vec: int = 0

    def reset(self) -> None:
        self.mat_mat = 0
        self.mat_vec = 0
        self.vec_vec = 0

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.mat_mat, self.mat_vec, self.vec_vec)


def mat_mul(a: Matrix, b: Matrix, counters: OpCounters | None = None) -> Matrix:
    if counters is not None:
        counters.mat_mat += 1
    cols = range(len(b[0]))
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, bt[j])) for j in cols)
        for row in a)


def mat_vec(m: Matrix, v: Vector, counters: OpCounters | None = None) -> Vector:
    if counters is not None:
        counters.mat_vec += 1
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def vec_dot(a: Vector, b: Vector, counters: OpCounters | None = None) -> int:
    if counters is not None:
        counters.vec_vec += 1
    return sum(x * y for x, y in zip(a, b))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_pow(m: Matrix, e: int, counters: OpCounters | None = None) -> Matrix:
    """M**e by binary exponentiation.

    Each performed product increments the matrix-matrix counter; e = 0 and
    e = 1 perform none.
    """
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    result: Matrix | None = None
    base = m
    while e:
        if e & 1:
            result = base if result is None else mat_mul(result, base, counters)
        e >>= 1
        if e:
            base = mat_mul(base, base, counters)
    return identity(len(m)) if result is None else result


@dataclass(frozen=True)
class MatrixRep:
    """Adjacency matrix plus initial/accepting indicator vectors.

    matrix[p][q] counts the symbols taking p to q, so every entry is at
    most the alphabet size. `initial` is a 0/1 row vector with exactly one
    1 (the automaton is deterministic); `accepting` is the 0/1 column
    vector of accepting states.
    """

    matrix: Matrix
    initial: Vector
    accepting: Vector


def matrix_rep(dfa: Dfa) -> MatrixRep:
    """Matrix representation of a trim DFA."""
    if not dfa.trim:
        raise NotTrimmedError("matrix_rep requires a trim automaton")
    n = dfa.n_states
    rows = []
    for p in range(n):
        counts = [0] * n
        for t in dfa.transitions[p]:
            if t is not None:
                counts[t] += 1
        rows.append(tuple(counts))
    initial = tuple(1 if q == dfa.initial else 0 for q in range(n))
    accepting = tuple(1 if q in dfa.accepting else 0 for q in range(n))
    return MatrixRep(tuple(rows), initial, accepting)


def _vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


class CountCache:
    """Shared incremental ladder of suffix-count vectors.

    Interior-mutable behind a single-writer lock: extension is serialized,
    while reads of already-cached entries are safe from any thread.
    """

    def __init__(self, rep: MatrixRep):
        self.rep = rep
        self.counters = OpCounters()
        self._u: list[Vector] = [rep.accepting]
        self._sum: list[Vector] = [rep.accepting]
        self._bits = sum(x.bit_length() for x in rep.accepting)
        self._lock = threading.Lock()

    @property
    def high_water(self) -> int:
        """Largest cached length."""
        return len(self._u) - 1

    def ensure(self, n: int) -> None:
        """Extend the ladder so u_0 .. u_n are cached."""
        if n < len(self._u):
            return
        with self._lock:
            u, s = self._u, self._sum
            m = self.rep.matrix
            while len(u) <= n:
                if len(u) >= MAX_LADDER_ENTRIES or self._bits > MAX_LADDER_BITS:
                    raise CapacityError(
                        f"count ladder limit reached at length {len(u) - 1}")
                nxt = mat_vec(m, u[-1], self.counters)
                self._bits += sum(x.bit_length() for x in nxt)
                u.append(nxt)
                s.append(_vec_add(s[-1], nxt))

    def count(self, n: int) -> int:
        """Number of members of length n."""
        if n < 0:
            return 0
        self.ensure(n)
        return vec_dot(self.rep.initial, self._u[n], self.counters)

    def cum_count(self, n: int) -> int:
        """Number of members of length at most n; 0 when n is -1."""
        if n < 0:
            return 0
        self.ensure(n)
        return vec_dot(self.rep.initial, self._sum[n], self.counters)

    def suffix_counts(self, k: int) -> Vector:
        """Entry q is the number of accepted length-k continuations from q."""
        self.ensure(k)
        return self._u[k]


class PowerSums:
    """Cumulative counts at arbitrary lengths via repeated squaring.

    Embeds M in the augmented matrix T = [[M, I], [0, I]], whose (n+1)-th
    power carries sum(M^i, i = 0..n) in its upper-right block. Each
    evaluation costs O(log n) matrix products over the cached squarings
    T^(2^j); no suffix-vector ladder is built, so this is the path for
    astronomically large ranks.
    """

    def __init__(self, rep: MatrixRep, counters: OpCounters | None = None):
        self.rep = rep
        self.counters = counters
        n = len(rep.matrix)
        top = tuple(rep.matrix[i] + identity(n)[i] for i in range(n))
        bottom = tuple((0,) * n + identity(n)[i] for i in range(n))
        self._powers: list[Matrix] = [top + bottom]
        self._n = n

    def _power(self, j: int) -> Matrix:
        while len(self._powers) <= j:
            last = self._powers[-1]
            self._powers.append(mat_mul(last, last, self.counters))
        return self._powers[j]

    def cum_count(self, n: int) -> int:
        if n < 0:
            return 0
        e = n + 1
        acc: Matrix | None = None
        j = 0
        while e:
            if e & 1:
                p = self._power(j)
                acc = p if acc is None else mat_mul(acc, p, self.counters)
            e >>= 1
            j += 1
        assert acc is not None
        m = self._n
        block = tuple(row[m:] for row in acc[:m])
        through = mat_vec(block, self.rep.accepting, self.counters)
        return vec_dot(self.rep.initial, through, self.counters)
