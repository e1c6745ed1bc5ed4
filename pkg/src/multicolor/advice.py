"""Advice tape with exact bit accounting, and the three-part self-delimiting
integer code.

A codeword for x >= 0 has three consecutive parts:
  1. the bit-length of the middle part, in unary, terminated by a 0,
  2. the bit-length of the last part, in binary,
  3. x itself in binary, using ceil(log2(x+1)) bits (empty for x = 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TapeUnderrunError


def _value_bits(x: int) -> int:
    # ceil(log2(x+1)); 0 for x = 0
    return x.bit_length()


def enc(x: int) -> list[int]:
    """Self-delimiting encoding of a non-negative integer, MSB first."""
    if x < 0:
        raise ValueError(f"enc expects x >= 0, got {x}")
    last_len = _value_bits(x)
    mid_len = _value_bits(last_len)
    bits = [1] * mid_len + [0]
    bits += _to_fixed(last_len, mid_len)
    bits += _to_fixed(x, last_len)
    return bits


def enc_len(x: int) -> int:
    """|enc(x)| without materializing the bits."""
    if x < 0:
        raise ValueError(f"enc_len expects x >= 0, got {x}")
    last_len = _value_bits(x)
    mid_len = _value_bits(last_len)
    return (mid_len + 1) + mid_len + last_len


def _to_fixed(value: int, width: int) -> list[int]:
    if width == 0:
        return []
    return [(value >> (width - 1 - i)) & 1 for i in range(width)]


@dataclass
class AdviceTape:
    """Append-only bit sequence with a read cursor.

    high_water counts bits consumed; reading past the written prefix raises
    (the oracle must have written enough).
    """

    bits: list[int] = field(default_factory=list)
    cursor: int = 0

    @classmethod
    def from_string(cls, s: str) -> "AdviceTape":
        if any(ch not in "01" for ch in s):
            raise ValueError("tape string must contain only '0'/'1'")
        return cls(bits=[int(ch) for ch in s])

    def to_string(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    @property
    def high_water(self) -> int:
        return self.cursor

    def write(self, bits) -> None:
        self.bits.extend(int(b) for b in bits)

    def write_int(self, x: int) -> None:
        self.write(enc(x))

    def read_bit(self) -> int:
        if self.cursor >= len(self.bits):
            raise TapeUnderrunError(f"read past written prefix at index {self.cursor}")
        b = self.bits[self.cursor]
        self.cursor += 1
        return b

    def read_fixed(self, width: int) -> int:
        if width < 0:
            raise ValueError("width must be >= 0")
        value = 0
        for _ in range(width):
            value = (value << 1) | self.read_bit()
        return value

    def exhausted(self) -> bool:
        return self.cursor == len(self.bits)


def dec(tape: AdviceTape) -> int:
    """Decode one codeword from the tape, advancing the cursor past it."""
    mid_len = 0
    while tape.read_bit() == 1:
        mid_len += 1
    last_len = tape.read_fixed(mid_len)
    return tape.read_fixed(last_len)
