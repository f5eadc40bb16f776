"""Numeration on a regular language: radix order, ranking, unranking.

A numeration system pairs a trim DFA for an infinite regular language with
its ordered alphabet. Members of the language, sorted by radix order (length
first, then symbol order), enumerate the natural numbers: val() maps a
member to its zero-based rank and rep() inverts it.

Both directions run on the shared suffix-count ladder from `counting`: the
rank of w is the number of shorter members plus, at each position, the
number of completions through smaller symbols. Unranking walks the DFA and
peels symbol blocks off the residual rank.

Two structural shortcuts keep near-deterministic languages (single-symbol
cycles, pure rotations) linear in output size instead of quadratic in rank
count: stretches of forced states (out-degree at most one) are consumed and
emitted through precomputed eventually-periodic paths, and rank searches far
beyond the ladder's capacity switch to repeated squaring of the cumulative
counting matrix.
"""

from __future__ import annotations

import bisect
from random import Random

from .automata import Dfa, OrderedAlphabet, compile_pattern, is_infinite
from .counting import CountCache, PowerSums, matrix_rep
from .errors import (AlphabetError, CapacityError, EmptyLanguageError,
                     FiniteLanguageError, NoSuchLengthError, NotInLanguageError,
                     NotTrimmedError)

__all__ = ["Ans", "new_ans", "radix_cmp", "radix_key", "MAX_REP_LENGTH"]

# Materialization guard: rep() refuses to build strings longer than this.
MAX_REP_LENGTH = 1 << 20


def radix_key(w: str, alphabet: OrderedAlphabet) -> tuple[int, tuple[int, ...]]:
    """Sort key realizing radix order: length first, then symbol positions."""
    return (len(w), tuple(alphabet.index(c) for c in w))


def radix_cmp(u: str, v: str, alphabet: OrderedAlphabet) -> int:
    """-1, 0, or 1 as u precedes, equals, or follows v in radix order."""
    for w in (u, v):
        for c in w:
            if c not in alphabet:
                raise AlphabetError(f"symbol {c!r} is not in the alphabet")
    if len(u) != len(v):
        return -1 if len(u) < len(v) else 1
    for x, y in zip(u, v):
        ix, iy = alphabet.index(x), alphabet.index(y)
        if ix != iy:
            return -1 if ix < iy else 1
    return 0


class _ForcedPath:
    """Unique outgoing path from a chain of out-degree-<=1 states.

    `states[i]` is the state before emitting `chars[i]`. The chain either
    cycles (`cycle_start` indexes the revisited state), exits into a
    branching state (`states[-1]`), or dies at a state with no transitions.
    """

    __slots__ = ("chars", "states", "cycle_start", "kind")

    def __init__(self, chars: str, states: tuple[int, ...],
                 cycle_start: int | None, kind: str):
        self.chars = chars
        self.states = states
        self.cycle_start = cycle_start
        self.kind = kind  # "cycle" | "exit" | "dead"

    def state_at(self, r: int) -> int:
        if r < len(self.states):
            return self.states[r]
        cs = self.cycle_start
        assert cs is not None
        period = len(self.states) - 1 - cs
        return self.states[cs + (r - cs) % period]

    def prefix(self, r: int) -> str:
        """First r emitted symbols (cycle unrolled as needed)."""
        if r <= len(self.chars):
            return self.chars[:r]
        cs = self.cycle_start
        assert cs is not None
        cyc = self.chars[cs:]
        reps = (r - cs + len(cyc) - 1) // len(cyc)
        return (self.chars[:cs] + cyc * reps)[:r]


class Ans:
    """A numeration system: trim DFA over an ordered alphabet plus the
    shared count cache used by both ranking directions.

    The language must be infinite; finite and empty languages are rejected
    at construction. Instances are safe to share between threads (cache
    growth is serialized); distinct instances are fully independent.
    """

    def __init__(self, dfa: Dfa):
        if not dfa.trim:
            raise NotTrimmedError("a numeration system needs a trim automaton")
        if not dfa.accepting:
            raise EmptyLanguageError("the language is empty")
        if not is_infinite(dfa):
            raise FiniteLanguageError("a numeration system needs an infinite language")
        self.dfa = dfa
        self.alphabet = dfa.alphabet
        self.cache = CountCache(matrix_rep(dfa))
        self._sym_index = {s: i for i, s in enumerate(dfa.alphabet.symbols)}
        self._row = dfa.transitions
        self._arcs = tuple(
            tuple((a, t) for a, t in enumerate(row) if t is not None)
            for row in dfa.transitions)
        self._forced: dict[int, _ForcedPath] = {}
        self._power_sums: PowerSums | None = None

    @classmethod
    def from_regex(cls, pattern: str, alphabet: OrderedAlphabet | str) -> "Ans":
        return cls(compile_pattern(pattern, alphabet))

    # -- counting passthroughs ------------------------------------------------

    def count(self, n: int) -> int:
        return self.cache.count(n)

    def cum_count(self, n: int) -> int:
        return self.cache.cum_count(n)

    def suffix_counts(self, k: int):
        return self.cache.suffix_counts(k)

    def radix_cmp(self, u: str, v: str) -> int:
        return radix_cmp(u, v, self.alphabet)

    # -- ranking --------------------------------------------------------------

    def val(self, w: str) -> int:
        """Zero-based rank of a member in radix order.

        Rank = members shorter than w, plus for every position the number
        of accepted completions through alphabet-smaller symbols. Membership
        failures distinguish a prefix no member starts with from a string
        that only ever occurs as a proper prefix.
        """
        n = len(w)
        dfa = self.dfa
        if n == 0:
            if dfa.initial in dfa.accepting:
                return 0
            raise NotInLanguageError("empty string is not a member", "non-accepting", 0)
        cache = self.cache
        cache.ensure(n - 1)
        u = cache._u
        row = self._row
        arcs = self._arcs
        sym_index = self._sym_index
        state = dfa.initial
        total = 0
        i = 0
        while i < n:
            a = arcs[state]
            if len(a) <= 1:
                state, i = self._forced_scan(w, i, state)
                continue
            sidx = sym_index.get(w[i])
            if sidx is None:
                raise AlphabetError(f"symbol {w[i]!r} at offset {i} is not in the alphabet")
            urem = u[n - i - 1]
            for s2, tgt in a:
                if s2 >= sidx:
                    break
                total += urem[tgt]
            nxt = row[state][sidx]
            if nxt is None:
                raise NotInLanguageError("no member continues this prefix", "dead-prefix", i)
            state = nxt
            i += 1
        if state not in dfa.accepting:
            raise NotInLanguageError("string only occurs as a proper prefix",
                                     "non-accepting", n)
        return cache.cum_count(n - 1) + total

    def _forced_path(self, q0: int) -> _ForcedPath:
        fp = self._forced.get(q0)
        if fp is not None:
            return fp
        symbols = self.alphabet.symbols
        chars: list[str] = []
        states = [q0]
        seen = {q0: 0}
        while True:
            a = self._arcs[states[-1]]
            if len(a) != 1:
                fp = _ForcedPath("".join(chars), tuple(states), None,
                                 "dead" if not a else "exit")
                break
            sidx, tgt = a[0]
            chars.append(symbols[sidx])
            if tgt in seen:
                states.append(tgt)
                fp = _ForcedPath("".join(chars), tuple(states), seen[tgt], "cycle")
                break
            seen[tgt] = len(states)
            states.append(tgt)
        self._forced[q0] = fp
        return fp

    def _forced_scan(self, w: str, i: int, state: int) -> tuple[int, int]:
        # Consume input along a chain of forced states. No rank contribution
        # is possible there (no smaller sibling transitions exist), so the
        # scan is a plain comparison against the precomputed path.
        n = len(w)
        fp = self._forced_path(state)
        r = n - i
        if fp.cycle_start is None:
            k = len(fp.chars)
            take = min(r, k)
            if not w.startswith(fp.chars[:take], i):
                self._forced_mismatch(w, i, fp.chars[:take])
            if r <= k:
                return fp.states[r], n
            if fp.kind == "dead":
                raise NotInLanguageError("no member continues this prefix",
                                         "dead-prefix", i + k)
            return fp.states[-1], i + k
        expected = fp.prefix(r)
        if not w.startswith(expected, i):
            self._forced_mismatch(w, i, expected)
        return fp.state_at(r), n

    def _forced_mismatch(self, w: str, i: int, expected: str):
        for j, want in enumerate(expected):
            have = w[i + j]
            if have == want:
                continue
            if have not in self._sym_index:
                raise AlphabetError(
                    f"symbol {have!r} at offset {i + j} is not in the alphabet")
            raise NotInLanguageError("no member continues this prefix",
                                     "dead-prefix", i + j)
        raise AssertionError("mismatch scan found no difference")

    # -- unranking ------------------------------------------------------------

    def rep(self, n: int) -> str:
        """The (n+1)-th member of the language in radix order."""
        if n < 0:
            raise ValueError("rank must be nonnegative")
        length, rest = self._locate_length(n)
        if length > MAX_REP_LENGTH:
            raise CapacityError(
                f"representation of rank {n} has length {length}, "
                f"beyond the materialization limit {MAX_REP_LENGTH}")
        cache = self.cache
        if length:
            cache.ensure(length - 1)
        u = cache._u
        arcs = self._arcs
        symbols = self.alphabet.symbols
        out: list[str] = []
        state = self.dfa.initial
        r = length
        while r > 0:
            if rest == 0:
                out.append(self._least_completion(state, r))
                break
            urem = u[r - 1]
            for sidx, tgt in arcs[state]:
                c = urem[tgt]
                if rest < c:
                    out.append(symbols[sidx])
                    state = tgt
                    r -= 1
                    break
                rest -= c
            else:
                raise AssertionError("residual rank exceeds available completions")
        return "".join(out)

    def _least_completion(self, state: int, r: int) -> str:
        # Lexicographically least accepted completion of length r; exists by
        # the caller's invariant (suffix count at (state, r) is positive).
        u = self.cache._u
        arcs = self._arcs
        symbols = self.alphabet.symbols
        parts: list[str] = []
        while r > 0:
            a = arcs[state]
            if len(a) == 1:
                fp = self._forced_path(state)
                if fp.cycle_start is not None or r <= len(fp.chars):
                    parts.append(fp.prefix(r))
                    break
                if fp.kind == "dead":
                    raise AssertionError("dead forced path despite positive count")
                parts.append(fp.chars)
                state = fp.states[-1]
                r -= len(fp.chars)
                continue
            urem = u[r - 1]
            for sidx, tgt in a:
                if urem[tgt] > 0:
                    parts.append(symbols[sidx])
                    state = tgt
                    r -= 1
                    break
            else:
                raise AssertionError("no viable symbol despite positive count")
        return "".join(parts)

    def _locate_length(self, n: int) -> tuple[int, int]:
        """Smallest length whose cumulative count exceeds n, plus the rank
        offset inside that length block. Lengths with no members are
        skipped implicitly by the cumulative counts."""
        cache = self.cache
        i0 = self.dfa.initial
        s = cache._sum
        while s[-1][i0] <= n:
            try:
                cache.ensure(len(s))
            except CapacityError:
                return self._locate_length_far(n)
        length = bisect.bisect_right(s, n, key=lambda vec: vec[i0])
        prev = s[length - 1][i0] if length else 0
        return length, n - prev

    def _locate_length_far(self, n: int) -> tuple[int, int]:
        # Beyond the ladder's caps: bracket the length with repeated
        # squaring, then bisect. Costs O(log^2 length) matrix products and
        # builds no suffix vectors.
        if self._power_sums is None:
            self._power_sums = PowerSums(self.cache.rep)
        ps = self._power_sums
        lo = self.cache.high_water  # cum(lo) <= n, or we would not be here
        hi = max(2 * lo, 1)
        while ps.cum_count(hi) <= n:
            lo = hi
            hi *= 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ps.cum_count(mid) <= n:
                lo = mid
            else:
                hi = mid
        return hi, n - ps.cum_count(hi - 1)

    def rep_length(self, n: int) -> int:
        """Length of rep(n) without materializing it. Unlike rep(), this
        works for ranks whose representation is astronomically long."""
        if n < 0:
            raise ValueError("rank must be nonnegative")
        return self._locate_length(n)[0]

    def max_string(self, n: int) -> str:
        """Radix-maximal member of length exactly n."""
        if self.cache.count(n) == 0:
            raise NoSuchLengthError(f"the language has no member of length {n}")
        return self.rep(self.cache.cum_count(n) - 1)

    def sample(self, length: int, rng: Random) -> str:
        """Uniform random member of the given length (exact integer draw)."""
        total = self.cache.count(length)
        if total == 0:
            raise NoSuchLengthError(f"the language has no member of length {length}")
        return self.rep(self.cache.cum_count(length - 1) + rng.randrange(total))


def new_ans(dfa: Dfa, alphabet: OrderedAlphabet | None = None) -> Ans:
    """Validated numeration system over a trim DFA.

    The alphabet argument, when given, must match the automaton's own; it
    exists so call sites can state the intended order explicitly.
    """
    if alphabet is not None and alphabet.symbols != dfa.alphabet.symbols:
        raise AlphabetError("alphabet does not match the automaton's alphabet")
    return Ans(dfa)
