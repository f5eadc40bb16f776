import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ansc import Ans, compile_pattern

# Shared language corpus: name, pattern, ordered alphabet. Mixes the two
# worked automata, sparse and dense byte-class languages, purely periodic
# languages with empty length classes, and polynomial growth of degrees
# 0 through 2.
CORPUS = [
    ("fib", "(a|ba)*", "ab"),
    ("binary", "0|1[01]*", "01"),
    ("even-a", "(aa)*", "a"),
    ("ab-poly", "a*b*", "ab"),
    ("staged", "[ab]*[cd]*[ef][ef]*", "abcdef"),
    ("abc-poly", "a*b*c*", "abc"),
    ("rotation", "(abc)*", "abc"),
    ("af-plus", "[af][af]*", "abcdef"),
    ("a-or-bb", "(a|bb)*", "ab"),
]


@pytest.fixture(scope="session")
def corpus_dfas():
    return {name: compile_pattern(pattern, sigma) for name, pattern, sigma in CORPUS}


@pytest.fixture(scope="session")
def corpus_ans(corpus_dfas):
    return {name: Ans(dfa) for name, dfa in corpus_dfas.items()}


@pytest.fixture(scope="session")
def fib_ans(corpus_ans):
    return corpus_ans["fib"]


@pytest.fixture(scope="session")
def binary_ans(corpus_ans):
    return corpus_ans["binary"]
