"""Exact arithmetic in the real Clifford algebra c(R^n) with e_i^2 = -1.

Blades are stored as bitmasks: bit ``i - 1`` set means ``e_i`` is a factor,
and a blade always denotes the product of its generators in increasing
order. Coefficients are :class:`fractions.Fraction`; nothing here touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from ._exact import ExactMatrix, _as_fraction
from ._kernels import blade_product_signs

__all__ = [
    "AlgebraType",
    "CliffordElement",
    "CliffordRep",
    "PinWord",
    "build_rep",
    "chi",
    "classify",
    "clifford_mul",
    "equivariance_check",
    "factorization_dim_check",
    "is_central",
    "twisted_adjoint",
    "volume_element",
    "volume_square_sign",
]

MAX_REP_DIM = 12


def _indices_to_mask(indices: Iterable[int], n: int) -> tuple[int, int]:
    """Mask of an index sequence and the sign of reordering it increasingly."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        raise ValueError(f"repeated generator in blade {idx}")
    for i in idx:
        if not 1 <= i <= n:
            raise ValueError(f"generator e_{i} outside 1..{n}")
    inversions = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
    mask = 0
    for i in idx:
        mask |= 1 << (i - 1)
    return mask, -1 if inversions % 2 else 1


def mask_to_indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class CliffordElement:
    """A multivector in c(R^n).

    ``terms`` maps blades to coefficients. A blade key may be a bitmask or a
    tuple of generator indices; tuples that are not increasing are
    reordered with the corresponding sign.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        clean: dict[int, Fraction] = {}
        for key, coeff in (terms or {}).items():
            c = _as_fraction(coeff)
            if isinstance(key, (int, np.integer)):
                mask, sign = int(key), 1
                if mask < 0 or mask >> n:
                    raise ValueError(f"blade mask {mask:b} outside 1..{n}")
            else:
                mask, sign = _indices_to_mask(key, n)
            clean[mask] = clean.get(mask, Fraction(0)) + sign * c
        self._terms = {k: v for k, v in clean.items() if v != 0}

    @classmethod
    def scalar(cls, n: int, c=1):
        return cls(n, {0: c})

    @classmethod
    def generator(cls, n: int, i: int):
        return cls(n, {(i,): 1})

    @classmethod
    def vector(cls, coords: Sequence):
        n = len(coords)
        return cls(n, {1 << i: c for i, c in enumerate(coords)})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def coefficient(self, blade) -> Fraction:
        if isinstance(blade, (int, np.integer)):
            return self._terms.get(int(blade), Fraction(0))
        mask, sign = _indices_to_mask(blade, self.n)
        return sign * self._terms.get(mask, Fraction(0))

    def grades(self) -> set[int]:
        return {bin(k).count("1") for k in self._terms}

    def grade(self, k: int) -> "CliffordElement":
        return CliffordElement(self.n, {m: c for m, c in self._terms.items() if bin(m).count("1") == k})

    def is_zero(self) -> bool:
        return not self._terms

    def vector_coords(self) -> tuple[Fraction, ...]:
        if self.grades() - {1}:
            raise ValueError("element is not a vector")
        return tuple(self._terms.get(1 << i, Fraction(0)) for i in range(self.n))

    def reverse(self) -> "CliffordElement":
        """Reverse the order of factors in every blade."""
        out = {}
        for m, c in self._terms.items():
            k = bin(m).count("1")
            out[m] = -c if (k * (k - 1) // 2) % 2 else c
        return CliffordElement(self.n, out)

    def _check(self, other: "CliffordElement"):
        if not isinstance(other, CliffordElement):
            raise TypeError("CliffordElement expected")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: c(R^{self.n}) vs c(R^{other.n})")

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return CliffordElement(self.n, out)

    def __neg__(self):
        return CliffordElement(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return clifford_mul(self, other)
        c = _as_fraction(other)
        return CliffordElement(self.n, {m: c * v for m, v in self._terms.items()})

    def __rmul__(self, other):
        c = _as_fraction(other)
        return CliffordElement(self.n, {m: c * v for m, v in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=lambda k: (bin(k).count("1"), k)):
            blade = "".join(f"e{i}" for i in mask_to_indices(m)) or "1"
            parts.append(f"{self._terms[m]}*{blade}")
        return " + ".join(parts)


def clifford_mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    """Product in c(R^n) under e_i e_j = -e_j e_i (i != j) and e_i^2 = -1."""
    x._check(y)
    if not x._terms or not y._terms:
        return CliffordElement(x.n)
    xm = list(x._terms)
    ym = list(y._terms)
    signs = blade_product_signs(np.array(xm, dtype=np.int64), np.array(ym, dtype=np.int64))
    out: dict[int, Fraction] = {}
    for r, a in enumerate(xm):
        ca = x._terms[a]
        row = signs[r]
        for c, b in enumerate(ym):
            key = a ^ b
            v = ca * y._terms[b]
            out[key] = out.get(key, Fraction(0)) + (v if row[c] > 0 else -v)
    return CliffordElement(x.n, out)


# -- pin^-(n) -----------------------------------------------------------

@dataclass(frozen=True)
class PinWord:
    """A product of exact-rational unit vectors, an element of pin^-(n)."""

    n: int
    factors: tuple[tuple[Fraction, ...], ...] = ()

    def __post_init__(self):
        clean = []
        for v in self.factors:
            v = tuple(_as_fraction(c) for c in v)
            if len(v) != self.n:
                raise ValueError(f"factor {v} does not lie in R^{self.n}")
            if sum(c * c for c in v) != 1:
                raise ValueError(f"factor {v} is not a unit vector")
            clean.append(v)
        object.__setattr__(self, "factors", tuple(clean))

    @classmethod
    def of_generators(cls, n: int, indices: Iterable[int]):
        """The word e_{i1} e_{i2} ... in basis vectors."""
        facs = []
        for i in indices:
            v = [Fraction(0)] * n
            v[i - 1] = Fraction(1)
            facs.append(tuple(v))
        return cls(n, tuple(facs))

    def __len__(self):
        return len(self.factors)

    def __add__(self, other: "PinWord") -> "PinWord":
        if not isinstance(other, PinWord) or other.n != self.n:
            return NotImplemented
        return PinWord(self.n, self.factors + other.factors)

    def element(self) -> CliffordElement:
        out = CliffordElement.scalar(self.n)
        for v in self.factors:
            out = out * CliffordElement.vector(v)
        return out

    def inverse(self) -> CliffordElement:
        """(-1)^len times the reversed word, since v v = -1 for unit v."""
        out = CliffordElement.scalar(self.n, (-1) ** len(self.factors))
        for v in reversed(self.factors):
            out = out * CliffordElement.vector(v)
        return out


def chi(w: PinWord) -> int:
    """The character pin^-(n) -> O(1): (-1)^(word length)."""
    return -1 if len(w.factors) % 2 else 1


def twisted_adjoint(w: PinWord, v: Sequence) -> tuple[Fraction, ...]:
    """gamma(w)(v): apply v -> u v u for each factor u, innermost factor first."""
    if len(v) != w.n:
        raise ValueError(f"vector of length {len(v)} in R^{w.n}")
    x = CliffordElement.vector([_as_fraction(c) for c in v])
    for u in reversed(w.factors):
        ue = CliffordElement.vector(u)
        x = ue * x * ue
    if x.grades() - {1}:
        raise RuntimeError(f"twisted adjoint left the vector subspace: {x!r}")
    return x.vector_coords()


# -- volume element -------------------------------------------------------

def volume_element(n: int) -> CliffordElement:
    """s_n = e_1 e_2 ... e_n."""
    return CliffordElement(n, {(1 << n) - 1: 1})


def is_central(x: CliffordElement) -> bool:
    for i in range(1, x.n + 1):
        g = CliffordElement.generator(x.n, i)
        if g * x != x * g:
            return False
    return True


def volume_square_sign(n: int) -> int:
    """Sign of s_n^2, read off a direct product."""
    s = volume_element(n)
    sq = s * s
    c = sq.coefficient(0)
    if sq != CliffordElement.scalar(n, c) or abs(c) != 1:
        raise RuntimeError(f"s_{n}^2 is not a unit scalar")
    return int(c)


# -- classification ---------------------------------------------------------

_FIELD_DIM = {"R": 1, "C": 2, "H": 4}
# n mod 8 -> (field, number of simple summands) for c(R^n) with e_i^2 = -1
_TABLE = {
    0: ("R", 1), 1: ("C", 1), 2: ("H", 1), 3: ("H", 2),
    4: ("H", 1), 5: ("C", 1), 6: ("R", 1), 7: ("R", 2),
}


@dataclass(frozen=True)
class AlgebraType:
    """c(R^n) is isomorphic to ``summands`` copies of M_size(field)."""

    n: int
    field: str
    summands: int
    matrix_size: int

    @property
    def irrep_dim(self) -> int:
        """Dimension of an irreducible module over ``field``."""
        return self.matrix_size

    @property
    def irrep_real_dim(self) -> int:
        return self.matrix_size * _FIELD_DIM[self.field]

    @property
    def total_real_dim(self) -> int:
        return self.summands * self.matrix_size ** 2 * _FIELD_DIM[self.field]

    @property
    def kind(self) -> str:
        one = f"M{self.matrix_size}({self.field})" if self.matrix_size > 1 else self.field
        return " + ".join([one] * self.summands)


def classify(n: int) -> AlgebraType:
    if n < 1:
        raise ValueError("n must be positive")
    field, summands = _TABLE[n % 8]
    # 2^n = summands * size^2 * dim(field)
    size_sq = (1 << n) // (summands * _FIELD_DIM[field])
    size = int(round(size_sq ** 0.5))
    while size * size > size_sq:
        size -= 1
    while (size + 1) ** 2 <= size_sq:
        size += 1
    if size * size * summands * _FIELD_DIM[field] != 1 << n:
        raise RuntimeError(f"inconsistent mod-8 table at n={n}")
    return AlgebraType(n, field, summands, size)


def factorization_dim_check(k: int, l: int) -> bool:
    """dim S+(G + E) == dim S+(G) * dim F(E) for dim G = 8k+2, dim E = 8l.

    S+(G) is the irreducible module of c(R + G) = c(R^{8k+3}).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if l < 1:
        raise ValueError("E must have positive dimension (l >= 1)")
    lhs = classify(8 * (k + l) + 3).irrep_real_dim
    rhs = classify(8 * k + 3).irrep_real_dim * classify(8 * l).irrep_real_dim
    return lhs == rhs


# -- explicit representations -----------------------------------------------

def _quaternion_mult_matrices():
    """Left and right multiplication by i, j, k on H = R^4 (basis 1, i, j, k)."""
    # unit products: table[a][b] = (sign, index) of q_a * q_b
    table = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ]
    left, right = [], []
    for u in (1, 2, 3):
        lm = np.zeros((4, 4), dtype=np.int64)
        rm = np.zeros((4, 4), dtype=np.int64)
        for b in range(4):
            s, t = table[u][b]
            lm[t, b] = s
            s, t = table[b][u]
            rm[t, b] = s
        left.append(lm)
        right.append(rm)
    return left, right


_J = np.array([[0, -1], [1, 0]], dtype=np.int64)
_Z = np.array([[1, 0], [0, -1]], dtype=np.int64)
_X = np.array([[0, 1], [1, 0]], dtype=np.int64)


def _seed_generators(n: int) -> list[np.ndarray]:
    """Hand-built irreducible generators for 1 <= n <= 8."""
    if n == 1:
        return [_J.copy()]
    left, right = _quaternion_mult_matrices()
    neg_left = [-a for a in left]
    if n <= 3:
        return neg_left[:n]
    eye4 = np.eye(4, dtype=np.int64)
    gens = [np.kron(a, _Z) for a in neg_left] + [np.kron(eye4, _J)]
    extra = [np.kron(right[1], _X), np.kron(right[2], _X), np.kron(right[0], _X)]
    gens += extra[: n - 4] if n <= 7 else extra
    if n <= 7:
        return gens
    return [np.kron(g, _Z) for g in gens] + [np.kron(np.eye(8, dtype=np.int64), _J)]


@dataclass(frozen=True, eq=False)
class CliffordRep:
    """Generator matrices g_1..g_n of a c(R^n)-module."""

    n: int
    generators: tuple[ExactMatrix, ...]

    @property
    def dim(self) -> int:
        return self.generators[0].shape[0]

    def check_relations(self) -> bool:
        ident = ExactMatrix.identity(self.dim)
        for i, gi in enumerate(self.generators):
            if gi @ gi != -ident:
                return False
            for gj in self.generators[i + 1:]:
                if not (gi @ gj + gj @ gi).is_zero():
                    return False
        return True

    def vector_matrix(self, v: Sequence) -> ExactMatrix:
        if len(v) != self.n:
            raise ValueError("vector dimension mismatch")
        out = ExactMatrix.zeros((self.dim, self.dim))
        for c, g in zip(v, self.generators):
            c = _as_fraction(c)
            if c:
                out = out + g.scale(c)
        return out

    def blade_matrix(self, mask: int) -> ExactMatrix:
        out = ExactMatrix.identity(self.dim)
        for i in mask_to_indices(mask):
            out = out @ self.generators[i - 1]
        return out

    def element_matrix(self, x: CliffordElement) -> ExactMatrix:
        if x.n != self.n:
            raise ValueError("dimension mismatch")
        out = ExactMatrix.zeros((self.dim, self.dim))
        for mask, c in x.terms.items():
            out = out + self.blade_matrix(mask).scale(c)
        return out

    def word_matrix(self, w: PinWord) -> ExactMatrix:
        out = ExactMatrix.identity(self.dim)
        for v in w.factors:
            out = out @ self.vector_matrix(v)
        return out

    def volume_matrix(self) -> ExactMatrix:
        return self.blade_matrix((1 << self.n) - 1)

    def span_rank(self) -> int:
        """Dimension of the span of all 2^n blade matrices."""
        rows = [self.blade_matrix(m).num.toarray().ravel() for m in range(1 << self.n)]
        return ExactMatrix(np.array(rows)).rank()


@lru_cache(maxsize=None)
def build_rep(n: int) -> CliffordRep:
    """Irreducible real representation of c(R^n), n <= 12.

    n <= 8 are built by hand from quaternion and 2x2 blocks; larger n use
    c(R^{n+8}) = c(R^n) (x) M16(R) with generators g_i (x) w and 1 (x) h_j,
    where h_j generate c(R^8) and w = h_1...h_8. For n = 3 (mod 4) the last
    generator is negated if needed so that s_n acts as +Id.
    """
    if not 1 <= n <= MAX_REP_DIM:
        raise ValueError(f"build_rep supports 1 <= n <= {MAX_REP_DIM}, got {n}")
    if n <= 8:
        mats = _seed_generators(n)
    else:
        h = _seed_generators(8)
        omega = np.eye(16, dtype=np.int64)
        for hj in h:
            omega = omega @ hj
        seed = _seed_generators(n - 8)
        d = seed[0].shape[0]
        mats = [np.kron(g, omega) for g in seed] + [np.kron(np.eye(d, dtype=np.int64), hj) for hj in h]
    gens = [ExactMatrix(g) for g in mats]
    rep = CliffordRep(n, tuple(gens))
    if n % 4 == 3:
        vol = rep.volume_matrix()
        if vol == -ExactMatrix.identity(rep.dim):
            gens[-1] = -gens[-1]
            rep = CliffordRep(n, tuple(gens))
    if not rep.check_relations():
        raise RuntimeError(f"generators for n={n} violate the Clifford relations")
    return rep


def equivariance_check(w: PinWord, e: Sequence, rep: CliffordRep) -> bool:
    """Check w (e s) = chi(w) (gamma(w) e) (w s) as a matrix identity."""
    if w.n != rep.n or len(e) != rep.n:
        raise ValueError("dimension mismatch")
    if not rep.check_relations():
        raise ValueError("representation violates the Clifford relations")
    wm = rep.word_matrix(w)
    lhs = wm @ rep.vector_matrix(e)
    rhs = (rep.vector_matrix(twisted_adjoint(w, e)) @ wm).scale(chi(w))
    return lhs == rhs
