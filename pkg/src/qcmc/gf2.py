"""Arithmetic in R_p = GF(2)[x]/(x^p - 1) and on block matrices of circulants.

A p x p binary circulant is identified with the polynomial whose coefficients
form its first row; row s is the first row cyclically shifted right by s.
Under this identification, row-vector-times-circulant equals polynomial
multiplication, so all quasi-cyclic linear algebra reduces to ring operations.

Two representations are used side by side: dense bit-packed Python integers
(bit i = coefficient of x^i) for products and inversions, and sorted index
tuples (SparseSupport) for decoder inner loops where weight << p.

Serialized form of a polynomial: ceil(p/8) bytes, little-endian bit order
(coefficient of x^i lives in bit i mod 8 of byte i // 8), rendered as
lowercase hex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotInvertibleError, ParameterError, SingularMatrixError

__all__ = [
    "BitPolynomial",
    "SparseSupport",
    "QcMatrix",
    "poly_mul",
    "poly_inverse",
    "qc_mul",
    "qc_add",
    "qc_transpose",
    "qc_invert",
    "qc_vec_mul",
    "int_to_bits",
    "bits_to_int",
]


def int_to_bits(value: int, p: int) -> np.ndarray:
    """Bit-packed integer -> uint8 coefficient array of length p."""
    raw = np.frombuffer(value.to_bytes((p + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:p]


def bits_to_int(bits: np.ndarray) -> int:
    """uint8 coefficient array -> bit-packed integer."""
    packed = np.packbits(np.asarray(bits, dtype=np.uint8) & 1, bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


@dataclass(frozen=True)
class BitPolynomial:
    """Element of GF(2)[x]/(x^p - 1), coefficients packed into an int."""

    p: int
    bits: int

    def __post_init__(self):
        if self.p < 1:
            raise ParameterError("p must be positive")
        if not 0 <= self.bits < (1 << self.p):
            raise ParameterError("coefficient mask out of range for modulus degree")

    @classmethod
    def zero(cls, p: int) -> "BitPolynomial":
        return cls(p, 0)

    @classmethod
    def one(cls, p: int) -> "BitPolynomial":
        return cls(p, 1)

    @classmethod
    def monomial(cls, p: int, k: int) -> "BitPolynomial":
        return cls(p, 1 << (k % p))

    @classmethod
    def from_support(cls, p: int, support) -> "BitPolynomial":
        bits = 0
        for i in support:
            bits |= 1 << (i % p)
        return cls(p, bits)

    @classmethod
    def from_coeffs(cls, p: int, coeffs) -> "BitPolynomial":
        arr = np.asarray(coeffs, dtype=np.uint8)
        if arr.shape != (p,):
            raise ParameterError("coefficient sequence must have length p")
        return cls(p, bits_to_int(arr))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def coeffs(self) -> np.ndarray:
        return int_to_bits(self.bits, self.p)

    def support(self) -> tuple[int, ...]:
        bits, out, i = self.bits, [], 0
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)

    def transpose(self) -> "BitPolynomial":
        """Polynomial of the transposed circulant: exponents negated mod p."""
        return BitPolynomial.from_support(self.p, [(-i) % self.p for i in self.support()])

    def shift(self, s: int) -> "BitPolynomial":
        """Multiply by x^s (cyclic shift of the coefficient row)."""
        return BitPolynomial(self.p, _cyclic_shift(self.bits, s % self.p, self.p))

    def to_dense(self) -> np.ndarray:
        """Full p x p circulant expansion (intended for small p)."""
        row = self.coeffs()
        idx = (np.arange(self.p)[None, :] - np.arange(self.p)[:, None]) % self.p
        return row[idx]

    def to_bytes(self) -> bytes:
        return self.bits.to_bytes((self.p + 7) // 8, "little")

    def to_hex(self) -> str:
        return self.to_bytes().hex()

    @classmethod
    def from_hex(cls, p: int, text: str) -> "BitPolynomial":
        raw = bytes.fromhex(text.strip())
        if len(raw) != (p + 7) // 8:
            raise ParameterError(f"expected {(p + 7) // 8} bytes for p={p}, got {len(raw)}")
        value = int.from_bytes(raw, "little")
        if value >> p:
            raise ParameterError("stray bits beyond coefficient p-1")
        return cls(p, value)

    def __add__(self, other: "BitPolynomial") -> "BitPolynomial":
        if self.p != other.p:
            raise ParameterError("mismatched moduli")
        return BitPolynomial(self.p, self.bits ^ other.bits)

    def __mul__(self, other: "BitPolynomial") -> "BitPolynomial":
        return poly_mul(self, other)

    def __bool__(self) -> bool:
        return self.bits != 0


@dataclass(frozen=True)
class SparseSupport:
    """Low-weight ring element stored as its sorted support."""

    p: int
    support: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(self.support))
        if any(not 0 <= i < self.p for i in self.support):
            raise ParameterError("support index out of range")
        if any(a >= b for a, b in zip(self.support, self.support[1:])):
            raise ParameterError("support must be strictly increasing")

    @property
    def weight(self) -> int:
        return len(self.support)

    def to_poly(self) -> BitPolynomial:
        return BitPolynomial.from_support(self.p, self.support)

    @classmethod
    def from_poly(cls, poly: BitPolynomial) -> "SparseSupport":
        return cls(poly.p, poly.support())


def _cyclic_shift(bits: int, s: int, p: int) -> int:
    if s == 0:
        return bits
    mask = (1 << p) - 1
    return ((bits << s) | (bits >> (p - s))) & mask


def poly_mul(a: BitPolynomial, b: BitPolynomial) -> BitPolynomial:
    """Product in R_p, iterating over the sparser operand's support."""
    if a.p != b.p:
        raise ParameterError("mismatched moduli")
    if a.weight > b.weight:
        a, b = b, a
    acc = 0
    bb = b.bits
    for s in a.support():
        acc ^= _cyclic_shift(bb, s, a.p)
    return BitPolynomial(a.p, acc)


def _poly_divmod(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder of GF(2)[x] division of a by b (plain, not mod x^p-1)."""
    db = b.bit_length() - 1
    q = 0
    while a and a.bit_length() - 1 >= db:
        shift = a.bit_length() - 1 - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def _poly_mul_plain(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    acc = 0
    while a:
        low = a & -a
        acc ^= b << (low.bit_length() - 1)
        a ^= low
    return acc


def poly_inverse(a: BitPolynomial) -> BitPolynomial:
    """Inverse in R_p via the extended Euclidean algorithm against x^p - 1.

    Raises NotInvertibleError when gcd(a, x^p - 1) != 1; in particular every
    even-weight element is a multiple of x + 1 and never invertible.
    """
    p = a.p
    modulus = (1 << p) | 1
    r0, r1 = modulus, a.bits
    s0, s1 = 0, 1
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 ^ _poly_mul_plain(q, s1)
    if r0 != 1:
        raise NotInvertibleError("gcd with x^p - 1 is nontrivial")
    _, s0 = _poly_divmod(s0, modulus)
    return BitPolynomial(p, s0)


@dataclass(frozen=True)
class QcMatrix:
    """Grid of circulant blocks, all sharing the same modulus degree p."""

    rows0: int
    cols0: int
    p: int
    blocks: tuple[tuple[BitPolynomial, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(row) for row in self.blocks))
        if len(self.blocks) != self.rows0 or any(len(r) != self.cols0 for r in self.blocks):
            raise ParameterError("block grid shape mismatch")
        if any(blk.p != self.p for row in self.blocks for blk in row):
            raise ParameterError("all blocks must share the same p")

    @classmethod
    def from_blocks(cls, blocks) -> "QcMatrix":
        blocks = tuple(tuple(row) for row in blocks)
        return cls(len(blocks), len(blocks[0]), blocks[0][0].p, blocks)

    @classmethod
    def identity(cls, n: int, p: int) -> "QcMatrix":
        one, zero = BitPolynomial.one(p), BitPolynomial.zero(p)
        return cls(n, n, p, tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)
        ))

    @classmethod
    def zero(cls, rows0: int, cols0: int, p: int) -> "QcMatrix":
        z = BitPolynomial.zero(p)
        return cls(rows0, cols0, p, tuple(tuple(z for _ in range(cols0)) for _ in range(rows0)))

    def block(self, i: int, j: int) -> BitPolynomial:
        return self.blocks[i][j]

    @property
    def total_weight(self) -> int:
        return sum(blk.weight for row in self.blocks for blk in row)

    def expand(self) -> np.ndarray:
        """Dense (rows0*p) x (cols0*p) binary matrix (intended for small p)."""
        out = np.zeros((self.rows0 * self.p, self.cols0 * self.p), dtype=np.uint8)
        for i in range(self.rows0):
            for j in range(self.cols0):
                out[i * self.p:(i + 1) * self.p, j * self.p:(j + 1) * self.p] = \
                    self.blocks[i][j].to_dense()
        return out

    def __add__(self, other: "QcMatrix") -> "QcMatrix":
        return qc_add(self, other)

    def __mul__(self, other: "QcMatrix") -> "QcMatrix":
        return qc_mul(self, other)


def qc_add(a: QcMatrix, b: QcMatrix) -> QcMatrix:
    if (a.rows0, a.cols0, a.p) != (b.rows0, b.cols0, b.p):
        raise ParameterError("shape mismatch")
    return QcMatrix(a.rows0, a.cols0, a.p, tuple(
        tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.blocks, b.blocks)
    ))


def qc_mul(a: QcMatrix, b: QcMatrix) -> QcMatrix:
    """Block matrix product over R_p; equals the dense GF(2) product of expansions."""
    if a.cols0 != b.rows0 or a.p != b.p:
        raise ParameterError("shape mismatch")
    rows = []
    for i in range(a.rows0):
        row = []
        for j in range(b.cols0):
            acc = BitPolynomial.zero(a.p)
            for k in range(a.cols0):
                if a.blocks[i][k] and b.blocks[k][j]:
                    acc = acc + poly_mul(a.blocks[i][k], b.blocks[k][j])
            row.append(acc)
        rows.append(tuple(row))
    return QcMatrix(a.rows0, b.cols0, a.p, tuple(rows))


def qc_transpose(a: QcMatrix) -> QcMatrix:
    return QcMatrix(a.cols0, a.rows0, a.p, tuple(
        tuple(a.blocks[i][j].transpose() for i in range(a.rows0)) for j in range(a.cols0)
    ))


def qc_invert(a: QcMatrix) -> QcMatrix:
    """Inverse by block Gauss-Jordan elimination, pivoting on ring-invertible blocks.

    May reject some invertible matrices: if at some elimination step no
    remaining block in the pivot column is invertible in R_p, the matrix is
    reported singular and the caller is expected to resample.  Any returned
    inverse is exact.
    """
    if a.rows0 != a.cols0:
        raise ParameterError("only square block matrices can be inverted")
    n, p = a.rows0, a.p
    work = [list(row) for row in a.blocks]
    aug = [list(row) for row in QcMatrix.identity(n, p).blocks]
    for col in range(n):
        pivot_row, pivot_inv = None, None
        for r in range(col, n):
            try:
                pivot_inv = poly_inverse(work[r][col])
                pivot_row = r
                break
            except NotInvertibleError:
                continue
        if pivot_row is None:
            raise SingularMatrixError(f"no invertible pivot in block column {col}")
        work[col], work[pivot_row] = work[pivot_row], work[col]
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        work[col] = [poly_mul(pivot_inv, blk) for blk in work[col]]
        aug[col] = [poly_mul(pivot_inv, blk) for blk in aug[col]]
        for r in range(n):
            factor = work[r][col]
            if r == col or not factor:
                continue
            work[r] = [x + poly_mul(factor, y) for x, y in zip(work[r], work[col])]
            aug[r] = [x + poly_mul(factor, y) for x, y in zip(aug[r], aug[col])]
    return QcMatrix(n, n, p, tuple(tuple(row) for row in aug))


def qc_vec_mul(v: np.ndarray, a: QcMatrix) -> np.ndarray:
    """Row vector times expanded matrix, computed blockwise via ring products."""
    v = np.asarray(v, dtype=np.uint8)
    if v.shape != (a.rows0 * a.p,):
        raise ParameterError(f"vector length must be {a.rows0 * a.p}")
    chunks = [bits_to_int(v[i * a.p:(i + 1) * a.p]) for i in range(a.rows0)]
    out = []
    for j in range(a.cols0):
        acc = 0
        for i in range(a.rows0):
            if chunks[i] and a.blocks[i][j]:
                acc ^= poly_mul(BitPolynomial(a.p, chunks[i]), a.blocks[i][j]).bits
        out.append(int_to_bits(acc, a.p))
    return np.concatenate(out)
