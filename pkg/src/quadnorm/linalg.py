"""Dense matrices over a commutative ring and division-free determinants."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, MixedRings, NotSquare
from .rings import Element, Modular, Ring


@dataclass(frozen=True)
class Matrix:
    """Row-major matrix of ring payloads."""

    ring: Ring
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples of payloads

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence]) -> "Matrix":
        """Build from nested lists of ints, Elements or (with ``raw``) payloads."""
        data = []
        for row in rows:
            data.append(tuple(_payload(ring, x) for x in row))
        n = len(data)
        m = len(data[0]) if data else 0
        if any(len(r) != m for r in data):
            raise DimensionMismatch("ragged rows")
        return cls(ring, n, m, tuple(data))

    @classmethod
    def from_payloads(cls, ring: Ring, rows) -> "Matrix":
        rows = tuple(tuple(r) for r in rows)
        return cls(ring, len(rows), len(rows[0]) if rows else 0, rows)

    def __getitem__(self, ij) -> Element:
        i, j = ij
        return Element(self.ring, self.entries[i][j])

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __add__(self, other):
        return mat_add(self, other)

    def transpose(self) -> "Matrix":
        return Matrix(self.ring, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times a column vector of payloads."""
        R = self.ring
        if len(vec) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.rows}x{self.cols}")
        out = []
        for row in self.entries:
            acc = R.zero
            for a, b in zip(row, vec):
                acc = R.add(acc, R.mul(a, b))
            out.append(acc)
        return tuple(out)

    def is_zero(self) -> bool:
        z = self.ring.zero
        return all(x == z for row in self.entries for x in row)

    def to_json(self):
        return [[self.ring.element_to_json(x) for x in row] for row in self.entries]

    def __str__(self):
        return "[" + "; ".join(" ".join(self.ring.format(x) for x in row) for row in self.entries) + "]"


def _payload(ring: Ring, x):
    if isinstance(x, Element):
        if x.ring != ring:
            raise MixedRings(f"entry in {x.ring}, matrix over {ring}")
        return x.value
    return ring.from_int(x)


def identity(ring: Ring, n: int) -> Matrix:
    z, o = ring.zero, ring.one
    return Matrix(ring, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))


def zeros(ring: Ring, n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return Matrix(ring, n, m, tuple((ring.zero,) * m for _ in range(n)))


def _same_ring(a: Matrix, b: Matrix):
    if a.ring is not b.ring and a.ring != b.ring:
        raise MixedRings(f"{a.ring} vs {b.ring}")


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    _same_ring(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.cols} times {b.rows}x{b.cols}")
    R = a.ring
    bt = tuple(zip(*b.entries)) if b.rows else ((),) * b.cols
    out = []
    for row in a.entries:
        new = []
        for col in bt:
            acc = R.zero
            for x, y in zip(row, col):
                acc = R.add(acc, R.mul(x, y))
            new.append(acc)
        out.append(tuple(new))
    return Matrix(R, a.rows, b.cols, tuple(out))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    _same_ring(a, b)
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionMismatch(f"{a.rows}x{a.cols} plus {b.rows}x{b.cols}")
    R = a.ring
    return Matrix(R, a.rows, a.cols, tuple(
        tuple(R.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a.entries, b.entries)
    ))


def mat_scale(c, a: Matrix) -> Matrix:
    R = a.ring
    c = _payload(R, c)
    return Matrix(R, a.rows, a.cols, tuple(tuple(R.mul(c, x) for x in row) for row in a.entries))


def trace(a: Matrix) -> Element:
    if a.rows != a.cols:
        raise NotSquare(f"{a.rows}x{a.cols}")
    R = a.ring
    acc = R.zero
    for i in range(a.rows):
        acc = R.add(acc, a.entries[i][i])
    return Element(R, acc)


def berkowitz(a: Matrix) -> list:
    """Coefficients ``[1, c1, ..., cn]`` of ``det(x I - a)``, highest degree first.

    Division free, so valid over any commutative ring.
    """
    if a.rows != a.cols:
        raise NotSquare(f"{a.rows}x{a.cols}")
    R = a.ring
    A = a.entries
    vect = [R.one]
    for r in range(a.rows):
        # leading r x r block, the new row/column pieces and the corner
        col = [A[i][r] for i in range(r)]
        row = A[r][:r]
        toeplitz = [R.one, R.neg(A[r][r])]
        w = col
        for _ in range(r):
            acc = R.zero
            for x, y in zip(row, w):
                acc = R.add(acc, R.mul(x, y))
            toeplitz.append(R.neg(acc))
            w = [_dot(R, A[i][:r], w) for i in range(r)]
        new = []
        for i in range(r + 2):
            acc = R.zero
            for j in range(min(i + 1, len(vect))):
                acc = R.add(acc, R.mul(toeplitz[i - j], vect[j]))
            new.append(acc)
        vect = new
    return vect


def _dot(R, xs, ys):
    acc = R.zero
    for x, y in zip(xs, ys):
        acc = R.add(acc, R.mul(x, y))
    return acc


def _det_payload(R: Ring, A, n: int):
    if n == 0:
        return R.one
    if n == 1:
        return A[0][0]
    add, mul, sub = R.add, R.mul, R.sub
    if n == 2:
        return sub(mul(A[0][0], A[1][1]), mul(A[0][1], A[1][0]))
    if n == 3:
        a, b, c = A[0]
        d, e, f = A[1]
        g, h, i = A[2]
        t1 = mul(a, sub(mul(e, i), mul(f, h)))
        t2 = mul(b, sub(mul(d, i), mul(f, g)))
        t3 = mul(c, sub(mul(d, h), mul(e, g)))
        return add(sub(t1, t2), t3)
    return None


def det(a: Matrix) -> Element:
    """Determinant: closed forms up to 3x3, Berkowitz beyond."""
    if a.rows != a.cols:
        raise NotSquare(f"{a.rows}x{a.cols}")
    R = a.ring
    small = _det_payload(R, a.entries, a.rows)
    if small is not None:
        return Element(R, small)
    coeffs = berkowitz(a)
    c = coeffs[-1]
    return Element(R, c if a.rows % 2 == 0 else R.neg(c))


def adjugate(a: Matrix) -> Matrix:
    """Classical adjoint via cofactors, so that ``adj(a) a = det(a) I``."""
    if a.rows != a.cols:
        raise NotSquare(f"{a.rows}x{a.cols}")
    n = a.rows
    R = a.ring
    if n == 1:
        return identity(R, 1)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = Matrix.from_payloads(
                R, [[a.entries[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            )
            m = det(minor).value
            out[j][i] = m if (i + j) % 2 == 0 else R.neg(m)
    return Matrix.from_payloads(R, out)


# ---------------------------------------------------------------------------
# batched fast path for Z/m


def det_batch_modular(matrices: Sequence[Matrix]) -> list[Element]:
    """Determinants of many square matrices over one ``Modular`` ring at once.

    Runs the compiled kernel when available; see ``quadnorm._kernels``.
    """
    if not matrices:
        return []
    R = matrices[0].ring
    if not isinstance(R, Modular):
        raise TypeError(f"batched determinants need a Modular ring, got {R}")
    n = matrices[0].rows
    for m in matrices:
        if m.ring != R:
            raise MixedRings(f"{m.ring} vs {R}")
        if m.rows != n or m.cols != n:
            raise DimensionMismatch("all matrices in a batch must share one square shape")
    arr = np.array([m.entries for m in matrices], dtype=np.int64).reshape(len(matrices), n, n)
    dets = _kernels.det_mod_batch(arr, R.modulus)
    return [Element(R, int(d)) for d in dets]
