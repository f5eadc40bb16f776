"""Command line interface.

Verbs: analyze, rank, unrank, convert, compress, decompress, selftest.
Alphabets are passed as ordered character strings (position = rank), which
keeps the symbol order explicit on the command line. The empty word is
printed and accepted as the token ``<eps>``. Diagnostics go to stderr only;
exit codes are 0 success, 1 library error, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from random import Random

from . import __version__
from .ans import Ans
from .automata import compile_pattern, dump_dfa, factorial_closure
from .codec import (Converter, Frame, block_compress, block_decompress,
                    make_block_config, measure_block_cr)
from .errors import AnscError
from .growth import GROWTH_FINITE, analyze_growth, scc_decompose

EPS_TOKEN = "<eps>"


def _word_in(text: str) -> str:
    return "" if text == EPS_TOKEN else text


def _word_out(word: str) -> str:
    return word if word else EPS_TOKEN


def _make_ans(pattern: str, alphabet: str) -> Ans:
    return Ans.from_regex(pattern, alphabet)


def _print_counters(ans_list) -> None:
    mm = sum(a.cache.counters.mat_mat for a in ans_list)
    mv = sum(a.cache.counters.mat_vec for a in ans_list)
    vv = sum(a.cache.counters.vec_vec for a in ans_list)
    print(f"counters: mm={mm} mv={mv} vv={vv}")


def _read_input(path: str | None) -> str:
    data = sys.stdin.buffer.read() if path in (None, "-") else open(path, "rb").read()
    return data.decode("latin-1")


def _write_output(path: str | None, data: bytes) -> None:
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _cmd_analyze(args) -> int:
    dfa = compile_pattern(args.regex, args.alphabet)
    info = analyze_growth(dfa)
    print(f"growth-class: {info.growth_class}")
    print(f"index: {info.index:.12f}")
    if info.polynomial_index is None:
        print("polynomial-index: undefined")
    else:
        print(f"polynomial-index: {info.polynomial_index}")
    print(f"scc-count: {len(scc_decompose(dfa).components)}")
    if info.growth_class == GROWTH_FINITE:
        print("theta-class: finite")
    else:
        print(f"theta-class: n^{info.polynomial_index} * {info.index:.12f}^n")
    if args.counts is not None:
        ans = Ans(dfa)
        for n in range(args.counts + 1):
            print(ans.count(n))
        for n in range(args.counts + 1):
            print(ans.cum_count(n))
    if args.dump_dfa:
        print(dump_dfa(dfa), end="")
    return 0


def _cmd_rank(args) -> int:
    ans = _make_ans(args.regex, args.alphabet)
    print(ans.val(_word_in(args.word)))
    if args.counters:
        _print_counters([ans])
    return 0


def _cmd_unrank(args) -> int:
    ans = _make_ans(args.regex, args.alphabet)
    print(_word_out(ans.rep(args.n)))
    if args.counters:
        _print_counters([ans])
    return 0


def _cmd_convert(args) -> int:
    src = _make_ans(args.src_regex, args.alphabet)
    dst = _make_ans(args.dst_regex, args.dst_alphabet)
    print(_word_out(Converter(src, dst).convert(_word_in(args.word))))
    if args.counters:
        _print_counters([src, dst])
    return 0


def _block_config(args):
    dfa = compile_pattern(args.src_regex, args.alphabet)
    if not args.assume_factorial:
        dfa = factorial_closure(dfa)
    src = Ans(dfa)
    dst = _make_ans(args.dst_regex, args.dst_alphabet)
    return src, dst


def _cmd_compress(args) -> int:
    src, dst = _block_config(args)
    cfg = make_block_config(src, dst, args.block_len)
    text = _read_input(args.infile)
    frame = block_compress(cfg, text, jobs=args.jobs)
    _write_output(args.outfile, frame.to_bytes())
    if args.verbose:
        print(f"blocks={len(frame.blocks)} tail={len(frame.tail)} "
              f"len-band=[{cfg.len_min},{cfg.len_max}] "
              f"cr={measure_block_cr(cfg, frame):.4f}", file=sys.stderr)
    return 0


def _cmd_decompress(args) -> int:
    src, dst = _block_config(args)
    data = sys.stdin.buffer.read() if args.infile in (None, "-") else open(args.infile, "rb").read()
    frame = Frame.from_bytes(data)
    cfg = make_block_config(src, dst, frame.block_length)
    text = block_decompress(cfg, frame, jobs=args.jobs)
    _write_output(args.outfile, text.encode("latin-1"))
    return 0


def _cmd_selftest(args) -> int:
    failures = 0

    def check(name: str, fn) -> None:
        nonlocal failures
        try:
            fn()
            print(f"ok {name}")
        except Exception as exc:  # noqa: BLE001 - report and continue
            failures += 1
            print(f"FAIL {name}: {exc}")

    def fib_counts():
        ans = Ans.from_regex("(a|ba)*", "ab")
        a, b = 1, 1
        for n in range(20):
            assert ans.count(n) == a, (n, ans.count(n), a)
            a, b = b, a + b

    def binary_round_trip():
        ans = Ans.from_regex("0|1[01]*", "01")
        words = ["0", "1", "10", "11", "100"]
        for n, w in enumerate(words):
            assert ans.rep(n) == w and ans.val(w) == n

    def conversion():
        fib = Ans.from_regex("(a|ba)*", "ab")
        binary = Ans.from_regex("0|1[01]*", "01")
        assert Converter(fib, binary).convert("ba") == "11"
        assert Converter(binary, fib).convert("100") == "aaa"

    def block_round_trip():
        fact = Ans(factorial_closure(compile_pattern("(a|ba)*", "ab")))
        binary = Ans.from_regex("0|1[01]*", "01")
        cfg = make_block_config(fact, binary, 8)
        rng = Random(7)
        w = fact.sample(161, rng)
        frame = block_compress(cfg, w)
        assert block_decompress(cfg, Frame.from_bytes(frame.to_bytes())) == w

    def growth_values():
        info = analyze_growth(compile_pattern("(a|ba)*", "ab"))
        assert abs(info.index - 1.6180339887498949) < 1e-6
        assert info.polynomial_index == 0

    check("fibonacci-counts", fib_counts)
    check("binary-goldens", binary_round_trip)
    check("base-conversion", conversion)
    check("block-round-trip", block_round_trip)
    check("growth-values", growth_values)
    if failures:
        print(f"selftest: {failures} check(s) failed")
        return 1
    print("selftest: 5 checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ansc",
        description="Rank, unrank, and losslessly recode strings of regular languages.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    one = argparse.ArgumentParser(add_help=False)
    one.add_argument("--regex", required=True, help="pattern for the language")
    one.add_argument("--alphabet", required=True,
                     help="ordered symbols, position = rank (e.g. 'ab')")

    two = argparse.ArgumentParser(add_help=False)
    two.add_argument("--src-regex", required=True, help="source language pattern")
    two.add_argument("--alphabet", required=True, help="ordered source symbols")
    two.add_argument("--dst-regex", required=True, help="destination language pattern")
    two.add_argument("--dst-alphabet", required=True, help="ordered destination symbols")

    files = argparse.ArgumentParser(add_help=False)
    files.add_argument("--in", dest="infile", default=None, metavar="FILE",
                       help="input path (default stdin)")
    files.add_argument("--out", dest="outfile", default=None, metavar="FILE",
                       help="output path (default stdout)")
    files.add_argument("--assume-factorial", action="store_true",
                       help="treat the source language as already substring closed")
    files.add_argument("--jobs", type=int, default=1,
                       help="convert blocks with this many threads")
    files.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("analyze", parents=[one],
                       help="growth class, index, and polynomial index")
    p.add_argument("--counts", type=int, default=None, metavar="N",
                   help="also print per-length and cumulative counts up to N")
    p.add_argument("--dump-dfa", action="store_true",
                   help="also print the compiled automaton")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("rank", parents=[one], help="rank of a word")
    p.add_argument("--word", required=True, help=f"member word ({EPS_TOKEN} for empty)")
    p.add_argument("--counters", action="store_true",
                   help="append multiplication counts")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("unrank", parents=[one], help="word of a rank")
    p.add_argument("--n", required=True, type=int, help="zero-based rank")
    p.add_argument("--counters", action="store_true",
                   help="append multiplication counts")
    p.set_defaults(func=_cmd_unrank)

    p = sub.add_parser("convert", parents=[two], help="recode one word")
    p.add_argument("--word", required=True, help=f"member word ({EPS_TOKEN} for empty)")
    p.add_argument("--counters", action="store_true",
                   help="append multiplication counts")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("compress", parents=[two, files], help="block-compress a file")
    p.add_argument("--block-len", required=True, type=int, help="source block length")
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("decompress", parents=[two, files], help="invert compress")
    p.set_defaults(func=_cmd_decompress)

    p = sub.add_parser("selftest", help="run built-in sanity checks")
    p.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AnscError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
