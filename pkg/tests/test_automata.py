import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ansc import (AlphabetError, CharSet, Concat, Dfa, Epsilon, Lit,
                  OrderedAlphabet, RegexSyntaxError, Star, Union, accepts,
                  compile_pattern, determinize, dump_dfa, equivalent,
                  factorial_closure, is_factorial, is_infinite, minimize,
                  parse_dfa, parse_regex, trim)
from ansc.automata import _position_nfa, compile as compile_ast

from conftest import CORPUS
from oracles import nfa_accepts, radix_members, refine_partition_blocks, substrings_of

AB = OrderedAlphabet.from_string("ab")


def all_strings(symbols, max_len):
    for n in range(max_len + 1):
        for tup in itertools.product(symbols, repeat=n):
            yield "".join(tup)


class TestAlphabet:
    def test_order_is_declaration_order(self):
        sigma = OrderedAlphabet.from_string("ba")
        assert sigma.index("b") == 0 and sigma.index("a") == 1

    def test_duplicates_rejected(self):
        with pytest.raises(AlphabetError):
            OrderedAlphabet.from_string("aba")

    def test_empty_rejected(self):
        with pytest.raises(AlphabetError):
            OrderedAlphabet(())

    def test_multibyte_symbol_rejected(self):
        with pytest.raises(AlphabetError):
            OrderedAlphabet(("Δ",))


class TestParser:
    def test_fib_pattern_shape(self):
        ast = parse_regex("(a|ba)*", AB)
        assert ast == Star(Union((Lit("a"), Concat((Lit("b"), Lit("a"))))))

    def test_single_literal(self):
        assert parse_regex("a", AB) == Lit("a")

    def test_unbalanced_paren_offset(self):
        with pytest.raises(RegexSyntaxError) as exc:
            parse_regex("(a", AB)
        assert exc.value.offset == 2

    def test_empty_pattern_is_epsilon(self):
        assert parse_regex("", AB) == Epsilon()

    def test_class_with_range(self):
        sigma = OrderedAlphabet.from_string("abcz")
        ast = parse_regex("[a-c]", sigma)
        assert ast == CharSet(frozenset("abc"))

    def test_range_keeps_only_alphabet_symbols(self):
        sigma = OrderedAlphabet.from_string("az")
        assert parse_regex("[a-z]", sigma) == CharSet(frozenset("az"))

    def test_escaped_metachar(self):
        sigma = OrderedAlphabet.from_string("a*")
        assert parse_regex(r"\*", sigma) == Lit("*")

    def test_symbol_outside_alphabet(self):
        with pytest.raises(AlphabetError):
            parse_regex("c", AB)

    def test_trailing_backslash(self):
        with pytest.raises(RegexSyntaxError):
            parse_regex("a\\", AB)

    def test_dangling_quantifier(self):
        with pytest.raises(RegexSyntaxError) as exc:
            parse_regex("*a", AB)
        assert exc.value.offset == 0

    def test_empty_class(self):
        with pytest.raises(RegexSyntaxError):
            parse_regex("[]", AB)


class TestCompile:
    def test_fib_two_state_automaton(self):
        dfa = compile_pattern("(a|ba)*", "ab")
        assert dfa.n_states == 2
        assert dfa.initial == 0 and dfa.accepting == frozenset((0,))
        assert dfa.transitions == ((0, 1), (0, None))

    def test_staged_three_states(self):
        dfa = compile_pattern("[ab]*[cd]*[ef][ef]*", "abcdef")
        assert dfa.n_states == 3

    def test_epsilon_only_language(self):
        dfa = compile_pattern("", "ab")
        assert dfa.n_states == 1
        assert dfa.accepts("") and not dfa.accepts("a")

    def test_determinization_preserves_language(self, corpus_dfas):
        for name, pattern, sigma_text in CORPUS:
            sigma = OrderedAlphabet.from_string(sigma_text)
            nfa = _position_nfa(parse_regex(pattern, sigma), sigma)
            dfa = corpus_dfas[name]
            max_len = 8 if len(sigma) <= 2 else 5
            for w in all_strings(sigma.symbols, max_len):
                assert nfa_accepts(nfa, w) == dfa.accepts(w), (name, w)

    def test_minimality_against_refinement_oracle(self, corpus_dfas):
        for name, dfa in corpus_dfas.items():
            unminimized = trim(determinize(_position_nfa(
                parse_regex(CORPUS[[c[0] for c in CORPUS].index(name)][1], dfa.alphabet),
                dfa.alphabet)))
            assert dfa.n_states == refine_partition_blocks(unminimized), name
            assert dfa.n_states <= unminimized.n_states


class TestTrim:
    def _with_extra_states(self, dfa: Dfa) -> Dfa:
        # Append one unreachable state and one reachable dead sink.
        n = dfa.n_states
        sink, unreachable = n, n + 1
        rows = [list(r) for r in dfa.transitions]
        free = next((a for a, t in enumerate(rows[0]) if t is None), None)
        if free is not None:
            rows[0][free] = sink
        rows.append([sink] * len(dfa.alphabet))
        rows.append([dfa.initial] * len(dfa.alphabet))
        return Dfa(dfa.alphabet, tuple(tuple(r) for r in rows), dfa.initial,
                   dfa.accepting, trim=False)

    def test_removes_unreachable_and_dead(self, corpus_dfas):
        for name, dfa in corpus_dfas.items():
            bloated = self._with_extra_states(dfa)
            cleaned = trim(bloated)
            assert cleaned.trim
            assert cleaned.n_states == dfa.n_states
            for w in all_strings(dfa.alphabet.symbols, 6 if len(dfa.alphabet) <= 2 else 4):
                assert bloated.accepts(w) == cleaned.accepts(w), (name, w)

    def test_idempotent_and_structurally_stable(self, corpus_dfas):
        for dfa in corpus_dfas.values():
            assert trim(dfa) == dfa

    def test_empty_language_collapses(self):
        sigma = AB
        dead = Dfa(sigma, ((1, None), (None, None)), 0, frozenset())
        cleaned = trim(dead)
        assert cleaned.trim and not cleaned.accepting and cleaned.n_states == 1


class TestMinimize:
    def test_language_preserved(self, corpus_dfas):
        for name, dfa in corpus_dfas.items():
            again = minimize(dfa)
            assert again.n_states <= dfa.n_states
            assert equivalent(again, dfa)

    def test_canonical_numbering_is_deterministic(self):
        a = compile_pattern("(a|ba)*", "ab")
        b = compile_pattern("(a|ba)*(a|ba)*", "ab")
        assert a == b


class TestFactorialClosure:
    def test_fib_closure_is_no_bb(self):
        fib = compile_pattern("(a|ba)*", "ab")
        closed = factorial_closure(fib)
        members = radix_members(fib, 12)
        allowed = substrings_of(members, 10)
        for w in all_strings("ab", 10):
            assert closed.accepts(w) == (w in allowed), w

    def test_already_factorial_is_fixed_point(self):
        astar = compile_pattern("a*", "a")
        assert equivalent(factorial_closure(astar), astar)

    def test_two_symbol_word(self):
        dfa = compile_pattern("ab", "ab")
        closed = factorial_closure(dfa)
        expected = compile_pattern("|a|b|ab", "ab")
        assert equivalent(closed, expected)

    def test_idempotent(self, corpus_dfas):
        for name, dfa in corpus_dfas.items():
            once = factorial_closure(dfa)
            assert equivalent(factorial_closure(once), once), name

    def test_substring_closed_on_samples(self, corpus_dfas):
        for name, dfa in corpus_dfas.items():
            closed = factorial_closure(dfa)
            for w in radix_members(closed, 8):
                if len(w) > 12:
                    continue
                for i in range(len(w)):
                    for j in range(i, len(w) + 1):
                        assert closed.accepts(w[i:j]), (name, w, i, j)


class TestPredicates:
    def test_is_factorial(self):
        assert is_factorial(compile_pattern("a*b*", "ab"))
        assert not is_factorial(compile_pattern("(a|ba)*", "ab"))
        assert not is_factorial(compile_pattern("ab", "ab"))

    def test_is_infinite(self):
        assert is_infinite(compile_pattern("(a|ba)*", "ab"))
        assert not is_infinite(compile_pattern("ab", "ab"))
        assert is_infinite(compile_pattern("a*", "a"))

    def test_accepts(self):
        fib = compile_pattern("(a|ba)*", "ab")
        assert accepts(fib, "aba")
        assert not accepts(fib, "ab")
        assert accepts(fib, "")
        with pytest.raises(AlphabetError):
            accepts(fib, "ax")


class TestDumpFormat:
    def test_round_trip(self, corpus_dfas):
        for name, dfa in corpus_dfas.items():
            text = dump_dfa(dfa)
            assert text.startswith(f"states {dfa.n_states}\n")
            assert parse_dfa(text) == dfa, name


# Random pattern ASTs rendered to text, cross-checked against the stdlib
# regex engine on every short string.

_ast = st.deferred(lambda: st.one_of(
    st.sampled_from([Lit("a"), Lit("b"), Epsilon(), CharSet(frozenset("ab"))]),
    st.tuples(_ast, _ast).map(lambda p: Concat(p)),
    st.tuples(_ast, _ast).map(lambda p: Union(p)),
    _ast.map(Star),
))


def _render(node) -> str:
    if isinstance(node, Lit):
        return node.symbol
    if isinstance(node, Epsilon):
        return "()"
    if isinstance(node, CharSet):
        return "[" + "".join(sorted(node.symbols)) + "]"
    if isinstance(node, Concat):
        return "".join(f"({_render(p)})" for p in node.parts)
    if isinstance(node, Union):
        return "(" + "|".join(_render(p) for p in node.parts) + ")"
    if isinstance(node, Star):
        return f"({_render(node.inner)})*"
    raise TypeError(node)


@settings(max_examples=60, deadline=None)
@given(_ast)
def test_compile_agrees_with_stdlib_regex(node):
    import re

    pattern = _render(node)
    dfa = compile_pattern(pattern, "ab")
    ref = re.compile(pattern)
    for w in all_strings("ab", 5):
        assert dfa.accepts(w) == bool(ref.fullmatch(w)), (pattern, w)


@settings(max_examples=120, deadline=None)
@given(st.text(alphabet="ab()[]|*+?\\-", max_size=12))
def test_parser_total_on_junk(text):
    try:
        parse_regex(text, AB)
    except (RegexSyntaxError, AlphabetError):
        pass
