"""Free rank-n algebras given by structure constants, and the norm law on them.

An algebra ``B`` over ``A`` with basis ``theta_0..theta_{n-1}`` stores
``structure[i][j][k]`` with ``theta_i theta_j = sum_k structure[i][j][k] theta_k``.
Elements of ``B`` are elements of the ring view ``AlgebraRing(B)`` whose
payloads are coordinate tuples, so an algebra can itself serve as the base of
another algebra (towers).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import linalg
from .errors import (
    HomMismatch,
    InvalidAlgebra,
    MixedAlgebras,
    MixedRings,
    NotAUnit,
    ParseError,
    PartitionMismatch,
    TowerMismatch,
)
from .linalg import Matrix
from .rings import (
    Element,
    Polynomial,
    Ring,
    RingHom,
    embedding_hom,
    fresh_names,
    parse_int,
    register_ring_decoder,
    ring_from_json,
)


@dataclass(frozen=True)
class FreeRankNAlgebra:
    base: Ring
    rank: int
    structure: tuple  # structure[i][j][k], payloads of base
    unit: tuple  # coordinates of 1
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.rank < 1:
            raise InvalidAlgebra("rank must be at least 1")
        n = self.rank
        if len(self.unit) != n or len(self.structure) != n:
            raise InvalidAlgebra("structure/unit do not match the rank")
        for row in self.structure:
            if len(row) != n or any(len(v) != n for v in row):
                raise InvalidAlgebra("structure constants must form an n x n x n array")

    def __str__(self):
        return self.name or f"rank-{self.rank} algebra over {self.base}"

    @cached_property
    def ring(self) -> "AlgebraRing":
        return AlgebraRing(self)

    @cached_property
    def _sparse(self):
        """``[(i, j, [(k, c), ...]), ...]`` skipping zero constants."""
        z = self.base.zero
        out = []
        for i in range(self.rank):
            for j in range(self.rank):
                ks = [(k, c) for k, c in enumerate(self.structure[i][j]) if c != z]
                if ks:
                    out.append((i, j, ks))
        return out

    def element(self, coords) -> Element:
        B = self.base
        vals = []
        for x in coords:
            if isinstance(x, Element):
                if x.ring != B:
                    raise MixedRings(f"coordinate in {x.ring}, algebra over {B}")
                vals.append(x.value)
            else:
                vals.append(B.from_int(x))
        if len(vals) != self.rank:
            raise InvalidAlgebra(f"expected {self.rank} coordinates, got {len(vals)}")
        return Element(self.ring, tuple(vals))

    def basis(self, i: int) -> Element:
        B = self.base
        return Element(self.ring, tuple(B.one if k == i else B.zero for k in range(self.rank)))

    def scalar(self, a) -> Element:
        """Image of a base element under the structure map A -> B."""
        a = a if isinstance(a, Element) else self.base(a)
        B = self.base
        return Element(self.ring, tuple(B.mul(a.value, u) for u in self.unit))

    def coords(self, x: Element) -> list[Element]:
        _check_parent(self, x)
        return [Element(self.base, c) for c in x.value]

    def validate(self):
        """Raise ``InvalidAlgebra`` unless commutative, associative and unital."""
        n = self.rank
        S = self.structure
        for i in range(n):
            for j in range(i + 1, n):
                if S[i][j] != S[j][i]:
                    raise InvalidAlgebra(f"not commutative at basis pair ({i}, {j})")
        R = self.ring
        basis = [self.basis(i).value for i in range(n)]
        prods = [[R.mul(basis[i], basis[j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    if R.mul(prods[i][j], basis[l]) != R.mul(basis[i], prods[j][l]):
                        raise InvalidAlgebra(f"not associative at basis triple ({i}, {j}, {l})")
        for i in range(n):
            if R.mul(self.unit, basis[i]) != basis[i]:
                raise InvalidAlgebra(f"unit does not fix basis element {i}")
        return self

    def to_json(self):
        B = self.base
        return {
            "base": B.to_json(),
            "rank": self.rank,
            "structure": [[[B.element_to_json(c) for c in v] for v in row] for row in self.structure],
            "unit": [B.element_to_json(c) for c in self.unit],
        }


def make_algebra(base: Ring, structure, unit=None, name: str = "", validate: bool = True) -> FreeRankNAlgebra:
    """Build an algebra from nested lists of ints/Elements; ``unit`` defaults to ``theta_0``."""

    def p(x):
        if isinstance(x, Element):
            if x.ring != base:
                raise MixedRings(f"{x.ring} vs {base}")
            return x.value
        return base.from_int(x)

    n = len(structure)
    S = tuple(tuple(tuple(p(c) for c in v) for v in row) for row in structure)
    if unit is None:
        unit = [1] + [0] * (n - 1)
    alg = FreeRankNAlgebra(base, n, S, tuple(p(c) for c in unit), name)
    return alg.validate() if validate else alg


def algebra_from_json(obj) -> FreeRankNAlgebra:
    if "algebra" in obj and "structure" not in obj:
        obj = obj["algebra"]
    try:
        base = ring_from_json(obj["base"])
        rank = parse_int(obj["rank"])
        S = tuple(
            tuple(tuple(base.element_from_json(c) for c in v) for v in row) for row in obj["structure"]
        )
        unit = obj.get("unit")
        unit = (
            tuple(base.element_from_json(c) for c in unit)
            if unit is not None
            else tuple(base.one if k == 0 else base.zero for k in range(rank))
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed algebra: {exc}") from None
    if len(S) != rank:
        raise ParseError(f"rank {rank} does not match structure of size {len(S)}")
    try:
        return FreeRankNAlgebra(base, rank, S, unit).validate()
    except InvalidAlgebra as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# the ring view


@dataclass(frozen=True)
class AlgebraRing(Ring):
    algebra: FreeRankNAlgebra
    kind = "algebra"

    def __str__(self):
        return f"<{self.algebra}>"

    @property
    def is_finite(self):
        return self.algebra.base.is_finite

    @property
    def zero(self):
        return (self.algebra.base.zero,) * self.algebra.rank

    @property
    def one(self):
        return self.algebra.unit

    def add(self, a, b):
        B = self.algebra.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.algebra.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.algebra.base
        return tuple(B.neg(x) for x in a)

    def mul(self, a, b):
        alg = self.algebra
        B = alg.base
        z = B.zero
        out = [z] * alg.rank
        for i, j, ks in alg._sparse:
            x, y = a[i], b[j]
            if x == z or y == z:
                continue
            xy = B.mul(x, y)
            for k, c in ks:
                out[k] = B.add(out[k], B.mul(xy, c))
        return tuple(out)

    def from_int(self, k):
        B = self.algebra.base
        c = B.from_int(k)
        return tuple(B.mul(c, u) for u in self.algebra.unit)

    def mul_matrix(self, a) -> Matrix:
        alg = self.algebra
        B = alg.base
        n = alg.rank
        z = B.zero
        M = [[z] * n for _ in range(n)]
        for i, j, ks in alg._sparse:
            x = a[i]
            if x == z:
                continue
            for k, c in ks:
                M[k][j] = B.add(M[k][j], B.mul(x, c))
        return Matrix.from_payloads(B, M)

    def norm(self, a):
        return linalg.det(self.mul_matrix(a)).value

    def is_unit(self, a):
        return self.algebra.base.is_unit(self.norm(a))

    def inverse(self, a):
        B = self.algebra.base
        M = self.mul_matrix(a)
        d = linalg.det(M).value
        if not B.is_unit(d):
            raise NotAUnit(f"{self.format(a)} has non-unit norm")
        d_inv = B.inverse(d)
        v = linalg.adjugate(M).apply(self.one)
        return tuple(B.mul(d_inv, x) for x in v)

    def is_nilpotent(self, a):
        B = self.algebra.base
        return all(B.is_nilpotent(c) for c in linalg.berkowitz(self.mul_matrix(a))[1:])

    def elements(self):
        return itertools.product(list(self.algebra.base.elements()), repeat=self.algebra.rank)

    @property
    def size(self):
        return self.algebra.base.size ** self.algebra.rank

    def random(self, rng):
        B = self.algebra.base
        return tuple(B.random(rng) for _ in range(self.algebra.rank))

    def format(self, a):
        B = self.algebra.base
        return "[" + ", ".join(B.format(x) for x in a) + "]"

    def to_json(self):
        return {"kind": "algebra", "algebra": self.algebra.to_json()}

    def element_to_json(self, a):
        B = self.algebra.base
        return [B.element_to_json(x) for x in a]

    def element_from_json(self, obj):
        B = self.algebra.base
        if isinstance(obj, (int, str)) and not isinstance(obj, bool):
            return self.from_int(parse_int(obj))
        if not isinstance(obj, list) or len(obj) != self.algebra.rank:
            raise ParseError(f"expected {self.algebra.rank} coordinates, got {obj!r}")
        return tuple(B.element_from_json(x) for x in obj)


register_ring_decoder("algebra", lambda obj: algebra_from_json(obj["algebra"]).ring)


# ---------------------------------------------------------------------------
# element operations


def _check_parent(alg: FreeRankNAlgebra, x: Element):
    if not isinstance(x.ring, AlgebraRing) or (x.ring.algebra is not alg and x.ring.algebra != alg):
        raise MixedAlgebras(f"element of {x.ring} used with {alg}")


def parent(x: Element) -> FreeRankNAlgebra:
    if not isinstance(x.ring, AlgebraRing):
        raise MixedAlgebras(f"{x.ring} is not an algebra")
    return x.ring.algebra


def _same_parent(x: Element, y: Element) -> FreeRankNAlgebra:
    alg = parent(x)
    _check_parent(alg, y)
    return alg


def alg_mul(x: Element, y: Element) -> Element:
    _same_parent(x, y)
    return x * y


def alg_add(x: Element, y: Element) -> Element:
    _same_parent(x, y)
    return x + y


def scalar_mul(a, x: Element) -> Element:
    alg = parent(x)
    a = a if isinstance(a, Element) else alg.base(a)
    if a.ring != alg.base:
        raise MixedRings(f"scalar in {a.ring}, algebra over {alg.base}")
    B = alg.base
    return Element(x.ring, tuple(B.mul(a.value, c) for c in x.value))


def mul_matrix(x: Element) -> Matrix:
    """Matrix ``M`` with ``M @ coords(y) == coords(x * y)``."""
    parent(x)
    return x.ring.mul_matrix(x.value)


def norm_sn(x: Element) -> Element:
    """Determinant of multiplication by ``x``."""
    return linalg.det(mul_matrix(x))


def trace(x: Element) -> Element:
    return linalg.trace(mul_matrix(x))


def base_change(alg: FreeRankNAlgebra, f: RingHom) -> FreeRankNAlgebra:
    """``C (x)_A B`` for ``f: A -> C``; same basis, constants mapped by ``f``."""
    if f.source != alg.base:
        raise HomMismatch(f"hom starts at {f.source}, algebra is over {alg.base}")
    fn = f.fn
    S = tuple(tuple(tuple(fn(c) for c in v) for v in row) for row in alg.structure)
    return FreeRankNAlgebra(f.target, alg.rank, S, tuple(fn(c) for c in alg.unit), alg.name)


def extend_hom(alg: FreeRankNAlgebra, f: RingHom) -> tuple[FreeRankNAlgebra, RingHom]:
    """Base change together with the induced map ``B -> C (x)_A B``."""
    new = base_change(alg, f)
    fn = f.fn
    return new, RingHom(alg.ring, new.ring, lambda a: tuple(fn(c) for c in a), "bc")


def push(x: Element, f: RingHom) -> Element:
    """Push an algebra element forward along a base-ring hom."""
    new, h = extend_hom(parent(x), f)
    return h(x)


# ---------------------------------------------------------------------------
# polarized forms


def norm_polynomial(xs: Sequence[Element], names: Sequence[str] | None = None) -> Element:
    """``s_n(lam_1 x_1 + ... + lam_m x_m)`` as a polynomial over the base."""
    if not xs:
        raise PartitionMismatch("need at least one element")
    alg = parent(xs[0])
    for x in xs[1:]:
        _check_parent(alg, x)
    B = alg.base
    if names is None:
        names = fresh_names(B, len(xs))
    P = Polynomial(B, tuple(names))
    algP = base_change(alg, embedding_hom(P))
    m = len(xs)
    coords = []
    for j in range(alg.rank):
        d = {}
        for i, x in enumerate(xs):
            c = x.value[j]
            if c != B.zero:
                e = tuple(1 if k == i else 0 for k in range(m))
                d[e] = c
        coords.append(P._canon(d))
    return norm_sn(Element(algP.ring, tuple(coords)))


def polarized(parts: Sequence[tuple[int, Element]]) -> Element:
    """``s_{k_1..k_m}(x_1..x_m)``: the coefficient of ``lam^k`` in the norm polynomial."""
    parts = list(parts)
    if not parts:
        raise PartitionMismatch("empty partition")
    alg = parent(parts[0][1])
    ks = [k for k, _ in parts]
    if any(k < 0 for k in ks) or sum(ks) != alg.rank:
        raise PartitionMismatch(f"parts {ks} do not sum to rank {alg.rank}")
    poly = norm_polynomial([x for _, x in parts])
    return Element(alg.base, poly.ring.coefficient(poly.value, tuple(ks)))


def polarized_two(x: Element, y: Element) -> list[Element]:
    """``[s_{k, n-k}(x, y) for k in 0..n]`` from a single norm polynomial."""
    alg = parent(x)
    poly = norm_polynomial([x, y])
    n = alg.rank
    return [Element(alg.base, poly.ring.coefficient(poly.value, (k, n - k))) for k in range(n + 1)]


def char_poly_coeffs(x: Element) -> list[Element]:
    """Coefficients of ``s_n(lam - x)`` in increasing powers of ``lam``."""
    alg = parent(x)
    n = alg.rank
    vals = polarized_two(alg.ring.one_element(), x)
    return [vals[k] if (n - k) % 2 == 0 else -vals[k] for k in range(n + 1)]


def binomial(ring: Ring, a: int, b: int) -> Element:
    return ring(math.comb(a, b))


# ---------------------------------------------------------------------------
# constructions


def trivial_algebra(base: Ring) -> FreeRankNAlgebra:
    return FreeRankNAlgebra(base, 1, (((base.one,),),), (base.one,), f"{base} over itself")


def product_algebra(a1: FreeRankNAlgebra, a2: FreeRankNAlgebra) -> FreeRankNAlgebra:
    """``a1 x a2`` with block-diagonal structure constants."""
    if a1.base != a2.base:
        raise MixedRings(f"{a1.base} vs {a2.base}")
    B = a1.base
    n1, n2 = a1.rank, a2.rank
    n = n1 + n2
    z = B.zero
    S = [[[z] * n for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            for k in range(n1):
                S[i][j][k] = a1.structure[i][j][k]
    for i in range(n2):
        for j in range(n2):
            for k in range(n2):
                S[n1 + i][n1 + j][n1 + k] = a2.structure[i][j][k]
    S = tuple(tuple(tuple(v) for v in row) for row in S)
    return FreeRankNAlgebra(B, n, S, a1.unit + a2.unit, f"({a1}) x ({a2})")


def split_algebra(base: Ring, n: int) -> FreeRankNAlgebra:
    """``A^n`` on the idempotent basis."""
    alg = trivial_algebra(base)
    for _ in range(n - 1):
        alg = product_algebra(alg, trivial_algebra(base))
    return FreeRankNAlgebra(base, n, alg.structure, alg.unit, f"({base})^{n}")


def monogenic_algebra(base: Ring, coeffs: Sequence, name: str = "") -> FreeRankNAlgebra:
    """``A[y]/(y^n + c_{n-1} y^{n-1} + ... + c_0)`` on the basis ``1, y, .., y^{n-1}``."""
    B = base
    c = [x.value if isinstance(x, Element) else B.from_int(x) for x in coeffs]
    n = len(c)
    z = B.zero
    # powers[s] = coordinates of y^s for s < 2n - 1
    powers = []
    for s in range(2 * n - 1):
        if s < n:
            powers.append(tuple(B.one if k == s else z for k in range(n)))
        else:
            prev = powers[-1]
            top = prev[n - 1]
            shifted = (z,) + prev[:-1]
            powers.append(tuple(B.sub(shifted[k], B.mul(top, c[k])) for k in range(n)))
    S = tuple(tuple(powers[i + j] for j in range(n)) for i in range(n))
    return FreeRankNAlgebra(B, n, S, powers[0], name)


def change_basis(alg: FreeRankNAlgebra, P: Matrix) -> FreeRankNAlgebra:
    """Re-express ``alg`` on the basis given by the columns of ``P`` (old coordinates)."""
    B = alg.base
    n = alg.rank
    d = linalg.det(P)
    if not d.is_unit():
        raise NotAUnit("change of basis matrix is not invertible")
    d_inv = d.inverse().value
    Pinv = linalg.mat_scale(Element(B, d_inv), linalg.adjugate(P))
    cols = [tuple(P.entries[r][j] for r in range(n)) for j in range(n)]
    R = alg.ring
    S = tuple(
        tuple(Pinv.apply(R.mul(cols[i], cols[j])) for j in range(n)) for i in range(n)
    )
    return FreeRankNAlgebra(B, n, S, Pinv.apply(alg.unit), alg.name)


def tower_compose(b_over_a: FreeRankNAlgebra, c_over_b: FreeRankNAlgebra) -> FreeRankNAlgebra:
    """``C`` as an algebra over ``A``; basis ``phi_i theta_a`` at index ``i * n + a``."""
    if not isinstance(c_over_b.base, AlgebraRing) or c_over_b.base.algebra != b_over_a:
        raise TowerMismatch(f"{c_over_b} is not an algebra over {b_over_a}")
    A = b_over_a.base
    BR = b_over_a.ring
    n, m = b_over_a.rank, c_over_b.rank
    theta = [b_over_a.basis(a).value for a in range(n)]
    tt = [[BR.mul(theta[a], theta[b]) for b in range(n)] for a in range(n)]
    N = m * n
    z = A.zero
    S = [[[z] * N for _ in range(N)] for _ in range(N)]
    for i in range(m):
        for j in range(m):
            for k in range(m):
                dijk = c_over_b.structure[i][j][k]
                if dijk == BR.zero:
                    continue
                for a in range(n):
                    for b in range(n):
                        prod = BR.mul(tt[a][b], dijk)
                        for e in range(n):
                            S[i * n + a][j * n + b][k * n + e] = prod[e]
    S = tuple(tuple(tuple(v) for v in row) for row in S)
    unit = tuple(itertools.chain.from_iterable(c_over_b.unit))
    return FreeRankNAlgebra(A, N, S, unit, f"({c_over_b}) over {A}")


def tower_flatten_hom(b_over_a: FreeRankNAlgebra, c_over_b: FreeRankNAlgebra,
                      tower: FreeRankNAlgebra | None = None) -> RingHom:
    """Identify elements of ``C`` over ``B`` with elements of ``C`` over ``A``."""
    tower = tower or tower_compose(b_over_a, c_over_b)
    return RingHom(
        c_over_b.ring, tower.ring, lambda a: tuple(itertools.chain.from_iterable(a)), "flatten"
    )
