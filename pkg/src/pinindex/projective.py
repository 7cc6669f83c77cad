"""Mod 2 cohomology of RP^q and the pin^- / spin decision procedure.

H^*(RP^q; Z_2) = Z_2[a]/(a^{q+1}); a class is stored as an int bitmask
whose bit j is the coefficient of a^j.

On RP^{4k+2} there are two inequivalent pin^- structures. Nothing here
depends on the choice; the one used elsewhere in this package is the
structure induced from the disk D^{4k+3} with the antipodal involution
lifted by left multiplication with s_{4k+3}.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._kernels import binomial_parities

__all__ = [
    "StructureKind",
    "Z2Poly",
    "admits_pin_minus",
    "pin_obstruction",
    "pin_obstruction_closed_form",
    "structure_kind",
    "sw_total",
    "sw_total_by_powering",
]


@dataclass(frozen=True)
class Z2Poly:
    q: int
    bits: int = 0

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be positive")
        object.__setattr__(self, "bits", self.bits & ((1 << (self.q + 1)) - 1))

    @classmethod
    def from_coeffs(cls, q: int, coeffs) -> "Z2Poly":
        bits = 0
        for j, c in enumerate(coeffs):
            if int(c) % 2:
                bits |= 1 << j
        return cls(q, bits)

    @classmethod
    def gen(cls, q: int) -> "Z2Poly":
        """The generator a of H^1."""
        return cls(q, 0b10)

    def coeff(self, j: int) -> int:
        return (self.bits >> j) & 1

    def coeffs(self) -> list[int]:
        return [self.coeff(j) for j in range(self.q + 1)]

    def part(self, j: int) -> "Z2Poly":
        """Degree-j homogeneous component."""
        return Z2Poly(self.q, self.bits & (1 << j))

    def is_homogeneous(self, j: int) -> bool:
        return self.bits & ~(1 << j) == 0

    def _check(self, other):
        if not isinstance(other, Z2Poly):
            raise TypeError("Z2Poly expected")
        if other.q != self.q:
            raise ValueError(f"classes live in different rings (q={self.q} vs q={other.q})")

    def __add__(self, other: "Z2Poly") -> "Z2Poly":
        self._check(other)
        return Z2Poly(self.q, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "Z2Poly") -> "Z2Poly":
        self._check(other)
        # carry-less product, truncated by __post_init__
        acc, x, y = 0, self.bits, other.bits
        shift = 0
        while y:
            if y & 1:
                acc ^= x << shift
            y >>= 1
            shift += 1
        return Z2Poly(self.q, acc)

    def __pow__(self, e: int) -> "Z2Poly":
        out, base = Z2Poly(self.q, 1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        return self.bits != 0

    def __str__(self):
        terms = [("1" if j == 0 else "a" if j == 1 else f"a^{j}") for j in range(self.q + 1) if self.coeff(j)]
        return " + ".join(terms) or "0"


def sw_total(q: int) -> Z2Poly:
    """w(RP^q) = (1 + a)^{q+1}, coefficients C(q+1, j) mod 2 from Lucas."""
    if q < 1:
        raise ValueError("q must be positive")
    parities = binomial_parities(q + 1, q)
    packed = np.packbits(parities[::-1].astype(np.uint8))
    bits = int.from_bytes(packed.tobytes(), "big") >> (len(packed) * 8 - (q + 1))
    return Z2Poly(q, bits)


def sw_total_by_powering(q: int) -> Z2Poly:
    """Same class by repeated squaring in the truncated ring."""
    return Z2Poly(q, 0b11) ** (q + 1)


def _w1_w2(q: int) -> tuple[Z2Poly, Z2Poly]:
    w = sw_total(q)
    return w.part(1), w.part(2)


def pin_obstruction(q: int) -> int:
    """Coefficient of a^2 in w_1^2 + w_2 of RP^q."""
    if q < 2:
        raise ValueError("q must be >= 2")
    w1, w2 = _w1_w2(q)
    return (w1 * w1 + w2).coeff(2)


def pin_obstruction_closed_form(q: int) -> int:
    return ((q + 1) * (3 * q + 2) // 2) % 2


class StructureKind(enum.Enum):
    SPIN = "spin"
    PIN_MINUS_NONORIENTABLE = "pin- nonorientable"
    NOT_PIN_MINUS = "not pin-"


def structure_kind(q: int) -> StructureKind:
    if q < 2:
        raise ValueError("q must be >= 2")
    if pin_obstruction(q):
        return StructureKind.NOT_PIN_MINUS
    w1, _ = _w1_w2(q)
    return StructureKind.PIN_MINUS_NONORIENTABLE if w1 else StructureKind.SPIN


def admits_pin_minus(w1: Z2Poly, w2: Z2Poly) -> bool:
    """w_1^2 + w_2 == 0, the pin^- criterion for a vector bundle."""
    w1._check(w2)
    if not w1.is_homogeneous(1):
        raise ValueError(f"w1 must be of degree 1, got {w1}")
    if not w2.is_homogeneous(2):
        raise ValueError(f"w2 must be of degree 2, got {w2}")
    return not (w1 * w1 + w2)
