"""Independent reference implementations used to pin expected values.

Nothing here touches the counting matrices or the ranking arithmetic: the
oracles work by direct enumeration, closed forms, substring sets, and
classical root finding, so they stay independent of the code paths they
check.
"""

from __future__ import annotations

import itertools
import math

from ansc.automata import Dfa, Nfa


def radix_members(dfa: Dfa, max_len: int) -> list[str]:
    """All members of length <= max_len in radix order.

    DFA-guided breadth-first search: prefixes are expanded in lexicographic
    order per length, so the output order is radix order by construction.
    """
    out: list[str] = [""] if dfa.initial in dfa.accepting else []
    level: list[tuple[int, str]] = [(dfa.initial, "")]
    symbols = dfa.alphabet.symbols
    for _ in range(max_len):
        nxt: list[tuple[int, str]] = []
        for state, prefix in level:
            row = dfa.transitions[state]
            for a, sym in enumerate(symbols):
                if row[a] is not None:
                    nxt.append((row[a], prefix + sym))
        level = nxt
        out.extend(p for s, p in level if s in dfa.accepting)
    return out


def brute_count(dfa: Dfa, n: int) -> int:
    """Number of members of length n by filtering the full cube A^n."""
    return sum(
        dfa.accepts("".join(tup))
        for tup in itertools.product(dfa.alphabet.symbols, repeat=n))


def brute_count_cap(alphabet_size: int, budget: int = 100_000, hard: int = 12) -> int:
    """Largest n with alphabet_size**n within the enumeration budget."""
    n = 0
    while n < hard and alphabet_size ** (n + 1) <= budget:
        n += 1
    return n


def suffix_count_walk(dfa: Dfa, state: int, k: int) -> int:
    """Accepted length-k continuations from a state, by explicit walk."""
    if k == 0:
        return 1 if state in dfa.accepting else 0
    return sum(
        suffix_count_walk(dfa, t, k - 1)
        for t in dfa.transitions[state] if t is not None)


def nfa_accepts(nfa: Nfa, word: str) -> bool:
    current = set(nfa.initial)
    for sym in word:
        a = nfa.alphabet.index(sym)
        current = {t for q in current for t in nfa.transitions[q].get(a, ())}
        if not current:
            return False
    return bool(current & set(nfa.accepting))


def fib_closed_form(n: int) -> int:
    """n-th Fibonacci number (F(1) = F(2) = 1) from the Binet formula.

    Exact for n <= 70, where rounding noise stays far below 1/2.
    """
    sqrt5 = math.sqrt(5.0)
    phi = (1.0 + sqrt5) / 2.0
    return round(phi ** n / sqrt5)


def substrings_of(members, max_len: int) -> set[str]:
    out = {""}
    for w in members:
        for i in range(len(w)):
            for j in range(i + 1, min(i + max_len, len(w)) + 1):
                out.add(w[i:j])
    return out


def char_poly(matrix) -> list[int]:
    """Monic characteristic polynomial coefficients, highest power first.

    Supports sizes 1..3, which covers every expanding component the tests
    probe.
    """
    n = len(matrix)
    m = matrix
    if n == 1:
        return [1, -m[0][0]]
    if n == 2:
        tr = m[0][0] + m[1][1]
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        return [1, -tr, det]
    if n == 3:
        tr = m[0][0] + m[1][1] + m[2][2]
        minors = (
            m[1][1] * m[2][2] - m[1][2] * m[2][1]
            + m[0][0] * m[2][2] - m[0][2] * m[2][0]
            + m[0][0] * m[1][1] - m[0][1] * m[1][0])
        det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
               - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
               + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        return [1, -tr, minors, -det]
    raise ValueError("char_poly oracle only handles sizes 1..3")


def largest_real_root(coeffs, hi: float) -> float:
    """Largest real root of a monic polynomial below hi, by scan + bisection."""

    def p(x: float) -> float:
        acc = 0.0
        for c in coeffs:
            acc = acc * x + c
        return acc

    step = 1e-3
    x = hi
    while p(x) > 0:
        x -= step
        if x < -hi:
            raise ValueError("no real root found in range")
    lo, up = x, x + step
    for _ in range(200):
        mid = (lo + up) / 2
        if p(mid) > 0:
            up = mid
        else:
            lo = mid
    return (lo + up) / 2


def refine_partition_blocks(dfa: Dfa) -> int:
    """Number of Myhill-Nerode classes by plain iterated partition
    refinement (Moore's algorithm). Independent check for the minimizer."""
    n = dfa.n_states
    n_syms = len(dfa.alphabet)
    # Complete with a sink so signatures are total.
    sink = n
    delta = [[t if t is not None else sink for t in row] for row in dfa.transitions]
    delta.append([sink] * n_syms)
    block = [1 if q in dfa.accepting else 0 for q in range(n)] + [0]
    while True:
        signatures = {}
        new_block = []
        for q in range(n + 1):
            sig = (block[q],) + tuple(block[delta[q][a]] for a in range(n_syms))
            new_block.append(signatures.setdefault(sig, len(signatures)))
        if new_block == block:
            break
        block = new_block
    classes = set(block[:n])
    classes.discard(block[sink])
    return len(classes)
