"""Finite automata over explicitly ordered alphabets.

Every language handled by this package is represented as a trim DFA built
through the classic pipeline: parse a small regex dialect, build a position
(Glushkov) NFA, determinize by subset construction, trim, and minimize with
Hopcroft's algorithm. Transition maps are partial: there is no explicit dead
state, so trimness and the adjacency-matrix view of the automaton coincide.

The factorial closure of a language (the set of all substrings of members)
is obtained by re-reading the trim DFA as an NFA whose states are all
initial and all accepting, then determinizing and minimizing again.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import AlphabetError, NotTrimmedError, RegexSyntaxError

__all__ = [
    "OrderedAlphabet",
    "RegexAst",
    "Lit",
    "CharSet",
    "Concat",
    "Union",
    "Star",
    "Plus",
    "Opt",
    "Epsilon",
    "Nfa",
    "Dfa",
    "parse_regex",
    "compile",
    "compile_pattern",
    "determinize",
    "trim",
    "minimize",
    "equivalent",
    "factorial_closure",
    "is_factorial",
    "is_infinite",
    "accepts",
    "dump_dfa",
    "parse_dfa",
]


@dataclass(frozen=True)
class OrderedAlphabet:
    """Totally ordered set of distinct byte-valued symbols.

    The order is the declaration order: ``symbols[0]`` is the smallest.
    Symbol comparison throughout the package compares these positions, never
    code points.
    """

    symbols: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not 1 <= len(self.symbols) <= 256:
            raise AlphabetError(f"alphabet must have 1..256 symbols, got {len(self.symbols)}")
        index: dict[str, int] = {}
        for i, sym in enumerate(self.symbols):
            if len(sym) != 1 or ord(sym) > 255:
                raise AlphabetError(f"symbol {sym!r} is not a single byte-valued character")
            if sym in index:
                raise AlphabetError(f"duplicate symbol {sym!r}")
            index[sym] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_string(cls, text: str) -> "OrderedAlphabet":
        return cls(tuple(text))

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlphabetError(f"symbol {symbol!r} is not in the alphabet") from None

    def index_map(self) -> dict[str, int]:
        """Symbol-to-position map (a fresh copy; the alphabet is immutable)."""
        return dict(self._index)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)


# ---------------------------------------------------------------------------
# Pattern syntax tree


class RegexAst:
    """Base class for pattern syntax nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Lit(RegexAst):
    symbol: str


@dataclass(frozen=True)
class CharSet(RegexAst):
    symbols: frozenset[str]


@dataclass(frozen=True)
class Concat(RegexAst):
    parts: tuple[RegexAst, ...]


@dataclass(frozen=True)
class Union(RegexAst):
    parts: tuple[RegexAst, ...]


@dataclass(frozen=True)
class Star(RegexAst):
    inner: RegexAst


@dataclass(frozen=True)
class Plus(RegexAst):
    inner: RegexAst


@dataclass(frozen=True)
class Opt(RegexAst):
    inner: RegexAst


@dataclass(frozen=True)
class Epsilon(RegexAst):
    pass


_METACHARS = set("()[]|*+?\\")


class _Parser:
    # regex  := union
    # union  := concat ('|' concat)*
    # concat := repeat*                  (empty concat is the empty string)
    # repeat := atom ('*' | '+' | '?')*
    # atom   := literal | '\' any | '(' union ')' | '[' items ']'
    # items  := (sym | sym '-' sym)+     (no negation)

    def __init__(self, text: str, alphabet: OrderedAlphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def parse(self) -> RegexAst:
        node = self._union()
        if self.pos < len(self.text):
            raise RegexSyntaxError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return node

    def _peek(self) -> str | None:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def _union(self) -> RegexAst:
        parts = [self._concat()]
        while self._peek() == "|":
            self.pos += 1
            parts.append(self._concat())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def _concat(self) -> RegexAst:
        parts: list[RegexAst] = []
        while True:
            c = self._peek()
            if c is None or c in ")|":
                break
            parts.append(self._repeat())
        if not parts:
            return Epsilon()
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    def _repeat(self) -> RegexAst:
        node = self._atom()
        while True:
            c = self._peek()
            if c == "*":
                node = Star(node)
            elif c == "+":
                node = Plus(node)
            elif c == "?":
                node = Opt(node)
            else:
                return node
            self.pos += 1

    def _atom(self) -> RegexAst:
        c = self._peek()
        if c is None:
            raise RegexSyntaxError("expected an atom", self.pos)
        if c == "(":
            self.pos += 1
            node = self._union()
            if self._peek() != ")":
                raise RegexSyntaxError("unbalanced '('", self.pos)
            self.pos += 1
            return node
        if c == "[":
            return self._char_class()
        if c == "\\":
            if self.pos + 1 >= len(self.text):
                raise RegexSyntaxError("trailing backslash", self.pos)
            sym = self.text[self.pos + 1]
            self._check_symbol(sym, self.pos + 1)
            self.pos += 2
            return Lit(sym)
        if c in _METACHARS:
            raise RegexSyntaxError(f"unexpected {c!r}", self.pos)
        self._check_symbol(c, self.pos)
        self.pos += 1
        return Lit(c)

    def _char_class(self) -> RegexAst:
        open_at = self.pos
        self.pos += 1
        members: set[str] = set()
        while True:
            c = self._peek()
            if c is None:
                raise RegexSyntaxError("unbalanced '['", open_at)
            if c == "]":
                self.pos += 1
                break
            if c == "\\":
                if self.pos + 1 >= len(self.text):
                    raise RegexSyntaxError("trailing backslash", self.pos)
                c = self.text[self.pos + 1]
                self.pos += 2
            elif self.pos + 2 < len(self.text) and self.text[self.pos + 1] == "-" \
                    and self.text[self.pos + 2] != "]":
                lo, hi = c, self.text[self.pos + 2]
                if ord(lo) > ord(hi):
                    raise RegexSyntaxError(f"empty range {lo}-{hi}", self.pos)
                # A range keeps exactly the alphabet symbols inside it.
                picked = [s for s in self.alphabet if ord(lo) <= ord(s) <= ord(hi)]
                if not picked:
                    raise AlphabetError(
                        f"range {lo}-{hi} matches no alphabet symbol (offset {self.pos})")
                members.update(picked)
                self.pos += 3
                continue
            else:
                self.pos += 1
            self._check_symbol(c, self.pos - 1)
            members.add(c)
        if not members:
            raise RegexSyntaxError("empty character class", open_at)
        if len(members) == 1:
            return Lit(next(iter(members)))
        return CharSet(frozenset(members))

    def _check_symbol(self, sym: str, at: int):
        if sym not in self.alphabet:
            raise AlphabetError(f"symbol {sym!r} is not in the alphabet (offset {at})")


def parse_regex(text: str, alphabet: OrderedAlphabet) -> RegexAst:
    """Parse pattern text into a syntax tree.

    Supported: literals, ``\\`` escapes, ``[..]`` classes with ranges,
    ``|``, juxtaposition, ``*``, ``+``, ``?``, and grouping parentheses.
    No anchors and no backreferences, so every pattern denotes a regular
    language. Errors carry the byte offset of the fault.
    """
    return _Parser(text, alphabet).parse()


# ---------------------------------------------------------------------------
# Automata


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton without epsilon transitions.

    ``transitions[q]`` maps a symbol index to a frozenset of target states.
    """

    alphabet: OrderedAlphabet
    transitions: tuple[dict[int, frozenset[int]], ...]
    initial: frozenset[int]
    accepting: frozenset[int]

    @property
    def n_states(self) -> int:
        return len(self.transitions)


@dataclass(frozen=True)
class Dfa:
    """Deterministic automaton with a partial transition map.

    ``transitions[q][a]`` is the target state for symbol index ``a`` or None.
    When ``trim`` is set, every state is reachable from the initial state and
    reaches some accepting state; the sole exception is the canonical
    empty-language automaton (one state, no accepting states).
    """

    alphabet: OrderedAlphabet
    transitions: tuple[tuple[int | None, ...], ...]
    initial: int
    accepting: frozenset[int]
    trim: bool = False

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def step(self, state: int, symbol_index: int) -> int | None:
        return self.transitions[state][symbol_index]

    def rejection(self, word: str) -> tuple[int, str] | None:
        """None if the word is accepted, else (offset, reason)."""
        state = self.initial
        for i, sym in enumerate(word):
            nxt = self.transitions[state][self.alphabet.index(sym)]
            if nxt is None:
                return i, "dead-prefix"
            state = nxt
        if state in self.accepting:
            return None
        return len(word), "non-accepting"

    def accepts(self, word: str) -> bool:
        return self.rejection(word) is None


def accepts(dfa: Dfa, word: str) -> bool:
    """Standard DFA run; a missing transition rejects."""
    return dfa.accepts(word)


def _empty_dfa(alphabet: OrderedAlphabet) -> Dfa:
    # Canonical empty-language automaton. It keeps one (useless) initial
    # state so the structure stays well formed; callers detect emptiness
    # through the empty accepting set.
    return Dfa(alphabet, ((None,) * len(alphabet),), 0, frozenset(), trim=True)


def _position_nfa(ast: RegexAst, alphabet: OrderedAlphabet) -> Nfa:
    # Glushkov construction: one state per symbol occurrence plus a start
    # state, no epsilon transitions.
    positions: list[frozenset[int]] = []  # symbol-index sets, 1-based ids
    follow: dict[int, set[int]] = {}

    def build(node: RegexAst) -> tuple[bool, frozenset[int], frozenset[int]]:
        if isinstance(node, Epsilon):
            return True, frozenset(), frozenset()
        if isinstance(node, (Lit, CharSet)):
            syms = {node.symbol} if isinstance(node, Lit) else node.symbols
            pid = len(positions) + 1
            positions.append(frozenset(alphabet.index(s) for s in syms))
            follow[pid] = set()
            single = frozenset((pid,))
            return False, single, single
        if isinstance(node, Concat):
            nullable, first, last = build(node.parts[0])
            for part in node.parts[1:]:
                p_null, p_first, p_last = build(part)
                for q in last:
                    follow[q].update(p_first)
                first = first | p_first if nullable else first
                last = last | p_last if p_null else p_last
                nullable = nullable and p_null
            return nullable, first, last
        if isinstance(node, Union):
            nullable = False
            first: frozenset[int] = frozenset()
            last: frozenset[int] = frozenset()
            for part in node.parts:
                p_null, p_first, p_last = build(part)
                nullable = nullable or p_null
                first |= p_first
                last |= p_last
            return nullable, first, last
        if isinstance(node, (Star, Plus, Opt)):
            p_null, p_first, p_last = build(node.inner)
            if isinstance(node, (Star, Plus)):
                for q in p_last:
                    follow[q].update(p_first)
            nullable = p_null if isinstance(node, Plus) else True
            return nullable, p_first, p_last
        raise TypeError(f"unknown ast node {node!r}")

    nullable, first, last = build(ast)
    n = len(positions) + 1
    table: list[dict[int, set[int]]] = [{} for _ in range(n)]
    for pid in first:
        for a in positions[pid - 1]:
            table[0].setdefault(a, set()).add(pid)
    for pid, succs in follow.items():
        for q in succs:
            for a in positions[q - 1]:
                table[pid].setdefault(a, set()).add(q)
    transitions = tuple({a: frozenset(t) for a, t in row.items()} for row in table)
    accepting = frozenset(last) | (frozenset((0,)) if nullable else frozenset())
    return Nfa(alphabet, transitions, frozenset((0,)), accepting)


def determinize(nfa: Nfa) -> Dfa:
    """Subset construction; only reachable subsets are materialized."""
    n_syms = len(nfa.alphabet)
    start = frozenset(nfa.initial)
    ids: dict[frozenset[int], int] = {start: 0}
    rows: list[list[int | None]] = [[None] * n_syms]
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        sid = ids[subset]
        for a in range(n_syms):
            targets: set[int] = set()
            for q in subset:
                targets.update(nfa.transitions[q].get(a, ()))
            if not targets:
                continue
            tset = frozenset(targets)
            tid = ids.get(tset)
            if tid is None:
                tid = len(rows)
                ids[tset] = tid
                rows.append([None] * n_syms)
                queue.append(tset)
            rows[sid][a] = tid
    accepting = frozenset(i for s, i in ids.items() if s & nfa.accepting)
    return Dfa(nfa.alphabet, tuple(tuple(r) for r in rows), 0, accepting)


def trim(dfa: Dfa) -> Dfa:
    """Drop states that are unreachable or cannot reach acceptance.

    The language is preserved. An empty language collapses to the canonical
    single-state automaton with no accepting states.
    """
    n = dfa.n_states
    reachable = {dfa.initial}
    queue = deque([dfa.initial])
    while queue:
        q = queue.popleft()
        for t in dfa.transitions[q]:
            if t is not None and t not in reachable:
                reachable.add(t)
                queue.append(t)
    preds: list[list[int]] = [[] for _ in range(n)]
    for q in range(n):
        for t in dfa.transitions[q]:
            if t is not None:
                preds[t].append(q)
    coaccessible = set(dfa.accepting)
    queue = deque(dfa.accepting)
    while queue:
        q = queue.popleft()
        for p in preds[q]:
            if p not in coaccessible:
                coaccessible.add(p)
                queue.append(p)
    keep = sorted(reachable & coaccessible)
    if not keep:
        return _empty_dfa(dfa.alphabet)
    renum = {old: new for new, old in enumerate(keep)}
    rows = []
    for old in keep:
        rows.append(tuple(
            renum[t] if (t is not None and t in renum) else None
            for t in dfa.transitions[old]))
    return Dfa(dfa.alphabet, tuple(rows), renum[dfa.initial],
               frozenset(renum[q] for q in dfa.accepting if q in renum), trim=True)


def minimize(dfa: Dfa) -> Dfa:
    """Unique minimal trim DFA for the language (Hopcroft refinement).

    The partial transition map is completed with an implicit sink before
    refinement; the sink's block is dropped afterwards. States of the result
    are numbered in breadth-first order from the initial state, which makes
    the output canonical: two calls on automata for the same language return
    structurally equal values.
    """
    dfa = dfa if dfa.trim else trim(dfa)
    if not dfa.accepting:
        return _empty_dfa(dfa.alphabet)
    n = dfa.n_states
    n_syms = len(dfa.alphabet)
    sink = n
    total = n + 1
    delta = [[t if t is not None else sink for t in row] for row in dfa.transitions]
    delta.append([sink] * n_syms)

    preds: list[list[list[int]]] = [[[] for _ in range(total)] for _ in range(n_syms)]
    for p in range(total):
        for a in range(n_syms):
            preds[a][delta[p][a]].append(p)

    accepting = set(dfa.accepting)
    non_accepting = set(range(total)) - accepting
    blocks: list[set[int]] = [accepting]
    if non_accepting:
        blocks.append(non_accepting)
    block_of = [0] * total
    for i, blk in enumerate(blocks):
        for q in blk:
            block_of[q] = i
    work = {(i, a) for i in range(len(blocks)) for a in range(n_syms)}
    while work:
        bi, a = work.pop()
        involved: dict[int, set[int]] = {}
        for q in blocks[bi]:
            for p in preds[a][q]:
                involved.setdefault(block_of[p], set()).add(p)
        for bj, inter in involved.items():
            if len(inter) == len(blocks[bj]):
                continue
            rest = blocks[bj] - inter
            blocks[bj] = inter
            new_idx = len(blocks)
            blocks.append(rest)
            for q in rest:
                block_of[q] = new_idx
            for a2 in range(n_syms):
                if (bj, a2) in work:
                    work.add((new_idx, a2))
                elif len(inter) <= len(rest):
                    work.add((bj, a2))
                else:
                    work.add((new_idx, a2))

    sink_block = block_of[sink]
    # Renumber surviving blocks breadth-first from the initial block.
    order: dict[int, int] = {block_of[dfa.initial]: 0}
    queue = deque([block_of[dfa.initial]])
    rows: list[list[int | None]] = []
    reps: list[int] = [next(iter(blocks[block_of[dfa.initial]]))]
    while queue:
        blk = queue.popleft()
        rep = next(iter(blocks[blk]))
        row: list[int | None] = []
        for a in range(n_syms):
            tb = block_of[delta[rep][a]]
            if tb == sink_block:
                row.append(None)
                continue
            if tb not in order:
                order[tb] = len(order)
                reps.append(next(iter(blocks[tb])))
                queue.append(tb)
            row.append(order[tb])
        rows.append(row)
    accepting_blocks = frozenset(
        order[block_of[q]] for q in dfa.accepting if block_of[q] in order)
    return Dfa(dfa.alphabet, tuple(tuple(r) for r in rows), 0, accepting_blocks, trim=True)


def compile(ast: RegexAst, alphabet: OrderedAlphabet) -> Dfa:
    """Trim minimal DFA for the language of the syntax tree."""
    return minimize(trim(determinize(_position_nfa(ast, alphabet))))


def compile_pattern(text: str, alphabet: OrderedAlphabet | str) -> Dfa:
    """Parse and compile in one step; accepts the alphabet as a plain string."""
    if isinstance(alphabet, str):
        alphabet = OrderedAlphabet.from_string(alphabet)
    return compile(parse_regex(text, alphabet), alphabet)


def equivalent(a: Dfa, b: Dfa) -> bool:
    """Language equality by Hopcroft-Karp union-find over paired runs."""
    if a.alphabet.symbols != b.alphabet.symbols:
        raise AlphabetError("cannot compare automata over different alphabets")
    n_syms = len(a.alphabet)
    # States are (side, id); the per-side sink is (side, None).
    parent: dict[tuple[int, int | None], tuple[int, int | None]] = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    def is_accepting(x) -> bool:
        side, q = x
        if q is None:
            return False
        return q in (a.accepting if side == 0 else b.accepting)

    def successor(x, sym):
        side, q = x
        if q is None:
            return (side, None)
        t = (a if side == 0 else b).transitions[q][sym]
        return (side, t)

    stack = [((0, a.initial), (1, b.initial))]
    parent[(1, b.initial)] = (0, a.initial)
    while stack:
        x, y = stack.pop()
        if is_accepting(x) != is_accepting(y):
            return False
        for sym in range(n_syms):
            rx, ry = find(successor(x, sym)), find(successor(y, sym))
            if rx != ry:
                parent[ry] = rx
                stack.append((rx, ry))
    return True


def factorial_closure(dfa: Dfa) -> Dfa:
    """Trim minimal DFA for the set of all substrings of members.

    Built from the NFA that reuses the DFA's transitions but makes every
    state both initial and accepting, then determinizing and minimizing.
    Counting needs an unambiguous automaton, which the determinization
    restores.
    """
    if not dfa.trim:
        raise NotTrimmedError("factorial_closure requires a trim automaton")
    if not dfa.accepting:
        return _empty_dfa(dfa.alphabet)
    n_syms = len(dfa.alphabet)
    table = []
    for row in dfa.transitions:
        table.append({a: frozenset((row[a],)) for a in range(n_syms) if row[a] is not None})
    allstates = frozenset(range(dfa.n_states))
    nfa = Nfa(dfa.alphabet, tuple(table), allstates, allstates)
    return minimize(trim(determinize(nfa)))


def is_factorial(dfa: Dfa) -> bool:
    """True iff the language is closed under taking substrings."""
    if not dfa.trim:
        raise NotTrimmedError("is_factorial requires a trim automaton")
    return equivalent(dfa, factorial_closure(dfa))


def is_infinite(dfa: Dfa) -> bool:
    """True iff the trim automaton contains a cycle."""
    if not dfa.trim:
        raise NotTrimmedError("is_infinite requires a trim automaton")
    color = [0] * dfa.n_states  # 0 unseen, 1 on stack, 2 done
    for root in range(dfa.n_states):
        if color[root]:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        color[root] = 1
        while stack:
            q, i = stack.pop()
            row = dfa.transitions[q]
            advanced = False
            while i < len(row):
                t = row[i]
                i += 1
                if t is None:
                    continue
                if color[t] == 1:
                    return True
                if color[t] == 0:
                    stack.append((q, i))
                    stack.append((t, 0))
                    color[t] = 1
                    advanced = True
                    break
            if not advanced and i >= len(row):
                color[q] = 2
    return False


# ---------------------------------------------------------------------------
# Textual dump format


def dump_dfa(dfa: Dfa) -> str:
    """Line-oriented dump: states/initial/accepting/alphabet headers, then
    one ``src symbol dst`` line per transition."""
    lines = [
        f"states {dfa.n_states}",
        f"initial {dfa.initial}",
        "accepting " + " ".join(str(q) for q in sorted(dfa.accepting)),
        "alphabet " + "".join(dfa.alphabet.symbols),
    ]
    for q in range(dfa.n_states):
        for a, t in enumerate(dfa.transitions[q]):
            if t is not None:
                lines.append(f"{q} {dfa.alphabet.symbols[a]} {t}")
    return "\n".join(lines) + "\n"


def parse_dfa(text: str) -> Dfa:
    """Inverse of dump_dfa. The trim flag is recomputed, not stored."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 4:
        raise ValueError("dump too short")
    n = int(lines[0].split()[1])
    initial = int(lines[1].split()[1])
    accepting = frozenset(int(tok) for tok in lines[2].split()[1:])
    alphabet = OrderedAlphabet.from_string(lines[3].split(" ", 1)[1])
    rows: list[list[int | None]] = [[None] * len(alphabet) for _ in range(n)]
    for ln in lines[4:]:
        src, sym, dst = ln.split()
        rows[int(src)][alphabet.index(sym)] = int(dst)
    dfa = Dfa(alphabet, tuple(tuple(r) for r in rows), initial, accepting)
    trimmed = trim(dfa)
    if trimmed.n_states == n:
        return trimmed
    return dfa
