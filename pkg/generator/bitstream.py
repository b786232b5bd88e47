"""
Bitstream container and the shared file formats.

ASCII: characters '0'/'1', whitespace ignored.
RAW:   packed bytes, most significant bit first; the bit count travels out of band.
"""
import logging
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

logger = logging.getLogger(__name__)

ASCII = "ascii"
RAW = "raw"
FORMATS = (ASCII, RAW)

# ASCII whitespace accepted between bits
_WHITESPACE = np.array([0x09, 0x0A, 0x0B, 0x0C, 0x0D, 0x20], dtype=np.uint32)


class BitstreamFormatError(ValueError):
    """Malformed bitstream input; position is the 0-based character offset"""

    def __init__(self, message: str, position: Optional[int] = None,
                 line: Optional[int] = None, column: Optional[int] = None):
        self.position = position
        self.line = line
        self.column = column
        if position is not None:
            message = f"{message} at offset {position} (line {line}, column {column})"
        super().__init__(message)


class Bitstream:
    """An ordered sequence of n bits backed by a uint8 array"""

    __slots__ = ("bits",)

    def __init__(self, bits: Union[np.ndarray, Sequence[int]]):
        arr = np.array(bits, dtype=np.uint8).ravel()
        if arr.size and arr.max() > 1:
            raise ValueError("Bitstream elements must be 0 or 1")
        arr.setflags(write=False)
        self.bits = arr

    @property
    def n(self) -> int:
        return int(self.bits.size)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Bitstream):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __repr__(self) -> str:
        preview = "".join(map(str, self.bits[:32].tolist()))
        return f"Bitstream(n={self.n}, bits={preview}{'...' if self.n > 32 else ''})"

    def ones(self) -> int:
        return int(np.count_nonzero(self.bits))

    def complement(self) -> "Bitstream":
        return Bitstream(1 - self.bits)

    def concat(self, other: "Bitstream") -> "Bitstream":
        return Bitstream(np.concatenate([self.bits, other.bits]))

    @classmethod
    def from_words(cls, words: Iterable[int], n: Optional[int] = None) -> "Bitstream":
        """32-bit words, each most significant bit first, truncated to n bits"""
        packed = np.array(list(words), dtype=">u4").view(np.uint8)
        bits = np.unpackbits(packed)
        if n is not None:
            if n > bits.size:
                raise ValueError(f"Requested {n} bits from only {bits.size} available")
            bits = bits[:n]
        return cls(bits)

    @classmethod
    def from_string(cls, text: str) -> "Bitstream":
        codes = np.frombuffer(text.encode("utf-32-le"), dtype="<u4")
        is_bit = (codes == 0x30) | (codes == 0x31)
        bad = ~(is_bit | np.isin(codes, _WHITESPACE))
        if bad.any():
            position = int(np.argmax(bad))
            line = text.count("\n", 0, position) + 1
            column = position - (text.rfind("\n", 0, position) + 1) + 1
            raise BitstreamFormatError(
                f"Unexpected character {text[position]!r} in ASCII bitstream",
                position=position, line=line, column=column,
            )
        return cls((codes[is_bit] - 0x30).astype(np.uint8))

    def to_string(self) -> str:
        return (self.bits + 0x30).tobytes().decode("ascii")

    @classmethod
    def from_bytes(cls, data: bytes, n: Optional[int] = None) -> "Bitstream":
        bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
        if n is not None:
            if n < 0 or n > bits.size:
                raise BitstreamFormatError(
                    f"Bit count {n} does not fit in {len(data)} bytes of RAW data"
                )
            bits = bits[:n]
        return cls(bits)

    def to_bytes(self) -> bytes:
        return np.packbits(self.bits).tobytes()


def read_bitstream(path: Union[str, Path], fmt: str = ASCII, n_bits: Optional[int] = None) -> Bitstream:
    """Load a bitstream file; n_bits is required only to trim RAW padding"""
    path = Path(path)
    if fmt == ASCII:
        stream = Bitstream.from_string(path.read_text(encoding="utf-8", errors="replace"))
        if n_bits is not None:
            if n_bits > stream.n:
                raise BitstreamFormatError(f"File holds {stream.n} bits, {n_bits} requested")
            stream = Bitstream(stream.bits[:n_bits])
    elif fmt == RAW:
        stream = Bitstream.from_bytes(path.read_bytes(), n_bits)
    else:
        raise ValueError(f"Unknown bitstream format: {fmt}")

    logger.debug(f"[GENERATOR] Read {stream.n} bits from {path} ({fmt})")
    return stream


def write_bitstream(path: Union[str, Path], stream: Bitstream, fmt: str = ASCII) -> None:
    path = Path(path)
    if fmt == ASCII:
        path.write_text(stream.to_string(), encoding="ascii")
    elif fmt == RAW:
        path.write_bytes(stream.to_bytes())
    else:
        raise ValueError(f"Unknown bitstream format: {fmt}")
    logger.debug(f"[GENERATOR] Wrote {stream.n} bits to {path} ({fmt})")
