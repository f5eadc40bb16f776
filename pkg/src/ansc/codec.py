"""Lossless recoding between two regular languages.

Base conversion sends a member of the source language to the member of the
destination language with the same radix-order rank; it is a bijection and
an order isomorphism, so decoding is conversion in the other direction.

For long inputs the block codec splits the string into fixed-length blocks
and converts each one independently. That is only sound when every block of
a member is itself a member, i.e. when the source language is substring
closed (factorial); callers normally pass the factorial closure of their
language. Converted block lengths fall in a fixed band [len_min, len_max]
determined by the block length, so each block is framed by its length delta
in a fixed number of bits.

Frame layout (all integers little-endian):

    bytes 0..3   magic "ANSC"
    byte  4      version (1)
    bytes 5..24  u32 block_length, len_min, len_field_bits, block_count,
                 tail_length
    body         bitstream, MSB-first within bytes: per block a
                 len_field_bits-wide length delta followed by 8 bits per
                 destination symbol index; zero-padded to a byte boundary
    tail         tail_length raw source symbol bytes, copied verbatim

A frame decodes with nothing but the two numeration systems and round-trips
byte-exactly.
"""

from __future__ import annotations

import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .ans import Ans
from .automata import is_factorial
from .errors import (AlphabetError, BlockMembershipError, FrameFormatError,
                     NoSuchLengthError, NotFactorialError, NotInLanguageError)

__all__ = [
    "Converter",
    "BlockCodecConfig",
    "Frame",
    "FRAME_VERSION",
    "make_block_config",
    "block_compress",
    "block_decompress",
    "measure_block_cr",
]

FRAME_MAGIC = b"ANSC"
FRAME_VERSION = 1
_HEADER = struct.Struct("<5I")


@dataclass(frozen=True)
class Converter:
    """Rank-preserving bijection from the source language onto the
    destination language."""

    src: Ans
    dst: Ans

    def convert(self, w: str) -> str:
        """Member of the destination language with the same rank as w."""
        return self.dst.rep(self.src.val(w))

    def measure_cr(self, w: str) -> float:
        """Output length over input length for one string."""
        if not w:
            raise ValueError("compression ratio of the empty string is undefined")
        return len(self.convert(w)) / len(w)

    def measure_cr_at(self, n: int) -> float:
        """Compression ratio of the radix-maximal length-n source string.

        That string has rank cum_count(n) - 1, so only the output length is
        needed; the output itself is never materialized, which keeps this
        usable when the image is astronomically long.
        """
        if self.src.count(n) == 0:
            raise NoSuchLengthError(f"source language has no member of length {n}")
        rank = self.src.cum_count(n) - 1
        return self.dst.rep_length(rank) / n


@dataclass(frozen=True)
class BlockCodecConfig:
    """Parameters of a block codec between a factorial source language and
    an arbitrary destination system.

    len_min/len_max bound the converted length of any length-block_length
    source block; len_field_bits is the fixed width of each per-block
    length delta, ceil(log2(len_max - len_min + 1)).
    """

    block_length: int
    src_fact: Ans
    dst: Ans
    len_min: int
    len_max: int
    len_field_bits: int


def make_block_config(src: Ans, dst: Ans, block_length: int) -> BlockCodecConfig:
    """Derive the length band and delta width for a block length.

    Ranks of length-block_length source strings fill the contiguous
    interval [cum_count(L-1), cum_count(L)-1] and unranking is radix
    monotone, so the images of the interval endpoints attain the exact
    minimal and maximal converted lengths.
    """
    if block_length <= 0:
        raise ValueError("block length must be positive")
    if not is_factorial(src.dfa):
        raise NotFactorialError("block compression needs a substring-closed source")
    if src.count(block_length) == 0:
        raise NoSuchLengthError(f"source language has no member of length {block_length}")
    len_max = dst.rep_length(src.cum_count(block_length) - 1)
    len_min = dst.rep_length(src.cum_count(block_length - 1))
    bits = (len_max - len_min).bit_length()
    return BlockCodecConfig(block_length, src, dst, len_min, len_max, bits)


class _BitWriter:
    def __init__(self):
        self._out = bytearray()
        self._acc = 0
        self._nbits = 0

    def write(self, value: int, nbits: int) -> None:
        if nbits == 0:
            return
        self._acc = (self._acc << nbits) | value
        self._nbits += nbits
        while self._nbits >= 8:
            self._nbits -= 8
            self._out.append((self._acc >> self._nbits) & 0xFF)
        self._acc &= (1 << self._nbits) - 1

    def getvalue(self) -> bytes:
        if self._nbits:
            return bytes(self._out) + bytes([(self._acc << (8 - self._nbits)) & 0xFF])
        return bytes(self._out)


class _BitReader:
    def __init__(self, data: bytes):
        self._data = data
        self._pos = 0
        self._acc = 0
        self._nbits = 0

    def read(self, nbits: int) -> int:
        if nbits == 0:
            return 0
        while self._nbits < nbits:
            if self._pos >= len(self._data):
                raise FrameFormatError("truncated frame body")
            self._acc = (self._acc << 8) | self._data[self._pos]
            self._pos += 1
            self._nbits += 8
        self._nbits -= nbits
        value = self._acc >> self._nbits
        self._acc &= (1 << self._nbits) - 1
        return value

    @property
    def bytes_consumed(self) -> int:
        return self._pos


@dataclass(frozen=True)
class Frame:
    """Parsed block-codec frame; decodable with nothing but the two
    numeration systems."""

    block_length: int
    len_min: int
    len_field_bits: int
    blocks: tuple[bytes, ...]  # destination symbol indices, one byte each
    tail: bytes                # raw source symbols, copied verbatim
    version: int = FRAME_VERSION

    def source_length(self) -> int:
        return len(self.blocks) * self.block_length + len(self.tail)

    def payload_symbols(self) -> int:
        return sum(len(b) for b in self.blocks)

    def to_bytes(self) -> bytes:
        writer = _BitWriter()
        limit = 1 << self.len_field_bits
        for b in self.blocks:
            delta = len(b) - self.len_min
            if delta < 0 or delta >= limit:
                raise FrameFormatError(
                    f"block length {len(b)} outside the frame's length band")
            writer.write(delta, self.len_field_bits)
            for idx in b:
                writer.write(idx, 8)
        header = FRAME_MAGIC + bytes([self.version]) + _HEADER.pack(
            self.block_length, self.len_min, self.len_field_bits,
            len(self.blocks), len(self.tail))
        return header + writer.getvalue() + self.tail

    @classmethod
    def from_bytes(cls, data: bytes) -> "Frame":
        head_len = len(FRAME_MAGIC) + 1 + _HEADER.size
        if len(data) < head_len:
            raise FrameFormatError("frame shorter than its header")
        if data[:4] != FRAME_MAGIC:
            raise FrameFormatError("bad magic, not a frame")
        version = data[4]
        if version != FRAME_VERSION:
            raise FrameFormatError(f"unsupported frame version {version}")
        block_length, len_min, bits, m, t = _HEADER.unpack_from(data, 5)
        body = data[head_len:]
        reader = _BitReader(body)
        blocks = []
        for _ in range(m):
            length = len_min + reader.read(bits)
            blocks.append(bytes(reader.read(8) for _ in range(length)))
        tail = body[reader.bytes_consumed:]
        if len(tail) != t:
            raise FrameFormatError("truncated frame tail or trailing garbage")
        return cls(block_length, len_min, bits, tuple(blocks), bytes(tail), version)


def _check_block(src: Ans, piece: str, base_offset: int, block_index: int) -> None:
    rejection = src.dfa.rejection(piece)
    if rejection is not None:
        offset, reason = rejection
        raise BlockMembershipError("not in the source language", reason,
                                   base_offset + offset, block_index)


def block_compress(cfg: BlockCodecConfig, w: str, jobs: int = 1) -> Frame:
    """Split w into blocks, convert each, and frame the result.

    Every full block and the shorter raw tail must belong to the source
    language; all of them are validated before any conversion starts, so a
    bad input never yields a partial frame. Inputs whose length is not a
    multiple of the block length keep their remainder as a verbatim tail
    (padding would change ranks).
    """
    src, dst, block_len = cfg.src_fact, cfg.dst, cfg.block_length
    ok = set(src.alphabet.symbols)
    for i, c in enumerate(w):
        if c not in ok:
            raise AlphabetError(f"symbol {c!r} at offset {i} is not in the source alphabet")
    m = len(w) // block_len
    pieces = [w[i * block_len:(i + 1) * block_len] for i in range(m)]
    tail = w[m * block_len:]
    for i, piece in enumerate(pieces):
        _check_block(src, piece, i * block_len, i)
    if tail:
        _check_block(src, tail, m * block_len, m)

    dst_index = {s: i for i, s in enumerate(dst.alphabet.symbols)}

    def encode(piece: str) -> bytes:
        word = dst.rep(src.val(piece))
        if not cfg.len_min <= len(word) <= cfg.len_max:
            raise AssertionError("converted block length outside the configured band")
        return bytes(dst_index[c] for c in word)

    if jobs > 1 and len(pieces) > 1:
        # Pre-grow both ladders so worker threads only read the caches.
        src.cache.ensure(block_len)
        dst.cache.ensure(cfg.len_max)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            blocks = tuple(pool.map(encode, pieces))
    else:
        blocks = tuple(encode(p) for p in pieces)
    return Frame(block_len, cfg.len_min, cfg.len_field_bits, blocks,
                 tail.encode("latin-1"))


def block_decompress(cfg: BlockCodecConfig, frame: Frame, jobs: int = 1) -> str:
    """Exact inverse of block_compress for a frame matching the config."""
    if frame.version != FRAME_VERSION:
        raise FrameFormatError(f"unsupported frame version {frame.version}")
    expected = (cfg.block_length, cfg.len_min, cfg.len_field_bits)
    if (frame.block_length, frame.len_min, frame.len_field_bits) != expected:
        raise FrameFormatError("frame header does not match the codec configuration")
    src, dst = cfg.src_fact, cfg.dst
    symbols = dst.alphabet.symbols
    n_dst = len(symbols)

    def decode(item: tuple[int, bytes]) -> str:
        i, payload = item
        if len(payload) > cfg.len_max:
            raise FrameFormatError(f"block {i}: length {len(payload)} above the maximum")
        for b in payload:
            if b >= n_dst:
                raise FrameFormatError(
                    f"block {i}: symbol index {b} outside the destination alphabet")
        word = "".join(symbols[b] for b in payload)
        try:
            rank = dst.val(word)
        except NotInLanguageError as exc:
            raise FrameFormatError(f"block {i}: payload is not a codeword") from exc
        piece = src.rep(rank)
        if len(piece) != cfg.block_length:
            raise FrameFormatError(f"block {i}: rank does not decode to a full block")
        return piece

    items = list(enumerate(frame.blocks))
    if jobs > 1 and len(items) > 1:
        src.cache.ensure(cfg.block_length)
        dst.cache.ensure(cfg.len_max)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            pieces = list(pool.map(decode, items))
    else:
        pieces = [decode(it) for it in items]
    tail = frame.tail.decode("latin-1")
    for c in tail:
        if c not in src.alphabet:
            raise FrameFormatError(f"tail symbol {c!r} outside the source alphabet")
    return "".join(pieces) + tail


def measure_block_cr(cfg: BlockCodecConfig, frame: Frame) -> float:
    """Compressed size over source size, measured in symbols.

    The converted payload counts one per destination symbol, the raw tail
    one per source symbol, and each per-block length field is charged its
    information content of len_field_bits / log2(destination alphabet size)
    destination symbols. The fixed byte header is container plumbing and is
    excluded; use len(frame.to_bytes()) for the byte-level size.
    """
    cost = float(frame.payload_symbols() + len(frame.tail))
    if cfg.len_field_bits:
        n_dst = len(cfg.dst.alphabet)
        if n_dst < 2:
            raise ValueError("length fields have no symbol cost in a unary alphabet")
        cost += len(frame.blocks) * cfg.len_field_bits / math.log2(n_dst)
    return cost / frame.source_length()
