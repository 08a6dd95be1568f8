"""Seeded random generators for rings, algebras, quadratics, homs, towers and descent data."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .algebra import (
    FreeRankNAlgebra,
    base_change,
    change_basis,
    monogenic_algebra,
    product_algebra,
    split_algebra,
    trivial_algebra,
)
from .descent import Cover, datum_from_global, make_cover
from .errors import GenerationExhausted, InvalidAlgebra
from .linalg import Matrix
from .quadratic import BasedQuadratic, QuadHom, hom_from_target, make_quad
from .rings import Element, Integers, Localized, Modular, Product, Ring

MODULI = (2, 3, 4, 5, 6, 7, 8, 9, 12)
ALGEBRA_KINDS = ("split", "monogenic", "product", "rebased")
REJECTION_CAP = 50


def default_family() -> list[Ring]:
    rings: list[Ring] = [Modular(m) for m in MODULI]
    rings += [Product((Modular(2), Modular(3))), Product((Modular(4), Modular(5)))]
    rings.append(Integers())
    return rings


def finite_family() -> list[Ring]:
    return [r for r in default_family() if r.is_finite]


@dataclass
class VerifyConfig:
    seed: int = 0
    cases_per_law: int = 200
    ring_family: list = field(default_factory=default_family)
    laws: str | list = "all"

    def __post_init__(self):
        if self.cases_per_law < 1:
            raise ValueError("cases_per_law must be at least 1")


# ---------------------------------------------------------------------------
# algebras


def _random_monic(rng, base: Ring, n: int) -> FreeRankNAlgebra:
    return monogenic_algebra(base, [Element(base, base.random(rng)) for _ in range(n)])


def _random_unitriangular(rng, base: Ring, n: int) -> Matrix:
    rows = []
    for i in range(n):
        rows.append([base.one if i == j else (base.random(rng) if j > i else base.zero) for j in range(n)])
    # mix in a lower factor so the new basis is not just a flag refinement
    lower = []
    for i in range(n):
        lower.append([base.one if i == j else (base.random(rng) if j < i else base.zero) for j in range(n)])
    U = Matrix.from_payloads(base, rows)
    L = Matrix.from_payloads(base, lower)
    return U @ L


def random_algebra(rng: random.Random, base: Ring, rank: int, kind: str | None = None) -> FreeRankNAlgebra:
    """A random rank-``rank`` algebra; always passes ``validate``."""
    if kind is not None and kind not in ALGEBRA_KINDS:
        raise ValueError(f"unknown algebra kind {kind!r}")
    for _ in range(REJECTION_CAP):
        k = kind or rng.choice(["split", "monogenic", "monogenic", "product", "rebased"])
        if rank == 1:
            alg = trivial_algebra(base)
        elif k == "split":
            alg = split_algebra(base, rank)
        elif k == "monogenic":
            alg = _random_monic(rng, base, rank)
        elif k == "product":
            r1 = rng.randint(1, rank - 1)
            alg = product_algebra(
                random_algebra(rng, base, r1, "monogenic"), random_algebra(rng, base, rank - r1, "monogenic")
            )
        else:
            inner = random_algebra(rng, base, rank, rng.choice(["monogenic", "product"]))
            alg = change_basis(inner, _random_unitriangular(rng, base, rank))
        try:
            return alg.validate()
        except InvalidAlgebra:
            continue
    raise GenerationExhausted(f"no valid rank-{rank} algebra over {base} in {REJECTION_CAP} tries")


def random_element(rng: random.Random, alg: FreeRankNAlgebra) -> Element:
    return Element(alg.ring, alg.ring.random(rng))


def random_scalar(rng: random.Random, base: Ring) -> Element:
    return Element(base, base.random(rng))


def random_unit(rng: random.Random, ring: Ring) -> Element:
    for _ in range(REJECTION_CAP * 4):
        x = Element(ring, ring.random(rng))
        if x.is_unit():
            return x
    return ring.one_element() if rng.random() < 0.5 else -ring.one_element()


# ---------------------------------------------------------------------------
# quadratics and homs


def random_quad(rng: random.Random, ring: Ring) -> BasedQuadratic:
    return make_quad(ring, Element(ring, ring.random(rng)), Element(ring, ring.random(rng)))


def random_hom(rng: random.Random, ring: Ring, iso: bool = False, target: BasedQuadratic | None = None) -> QuadHom:
    """Valid by construction: pick the target and ``(U, C)``, then solve for the source."""
    target = target or random_quad(rng, ring)
    u = random_unit(rng, ring) if iso or rng.random() < 0.5 else Element(ring, ring.random(rng))
    c = Element(ring, ring.random(rng))
    return hom_from_target(target, u, c)


def random_chain(rng: random.Random, ring: Ring):
    """Composable ``(f, g)`` with ``f.target == g.source``."""
    g = random_hom(rng, ring)
    f = random_hom(rng, ring, target=g.source)
    return f, g


# ---------------------------------------------------------------------------
# towers


def gaussian_tower():
    """``Z -> Z[i] -> Z[i][y]/(y^2 - i)``."""
    Z = Integers()
    Zi = monogenic_algebra(Z, [1, 0], name="Z[i]").validate()
    i = Zi.basis(1)
    C = monogenic_algebra(Zi.ring, [-i, 0], name="Z[i][y]/(y^2-i)").validate()
    return Zi, C


def split_tower(base: Ring):
    """``A -> A^2 -> (A^2)^2``."""
    B = split_algebra(base, 2)
    return B, split_algebra(B.ring, 2)


def random_tower(rng: random.Random, base: Ring, n: int | None = None, m: int | None = None):
    n = n or rng.randint(1, 2)
    m = m or rng.randint(1, 2)
    B = random_algebra(rng, base, n)
    C = random_algebra(rng, B.ring, m, rng.choice(["split", "monogenic"]))
    return B, C


# ---------------------------------------------------------------------------
# descent


def integer_cover() -> Cover:
    return make_cover(Integers(), [2, 3])


def modular_cover(m: int = 12) -> Cover:
    """Idempotent-style cover of ``Z/m`` by two coprime prime-power parts."""
    from .rings import prime_factors

    ps = prime_factors(m)
    if len(ps) < 2:
        return make_cover(Modular(m), [1])
    p = ps[0]
    a = 1
    while m % (a * p) == 0:
        a *= p
    b = m // a
    return make_cover(Modular(m), [a, b])


def _local_unit(rng, R: Ring) -> Element:
    if isinstance(R, Localized):
        p = rng.choice([2, 3, 5, 6])
        f = Fraction(rng.choice([1, -1])) * Fraction(p) ** rng.randint(-2, 2)
        x = R.from_fraction(f)
        if x is not None and R.is_unit(x):
            return Element(R, x)
        return R.one_element()
    return random_unit(rng, R)


def random_descent(rng: random.Random, cover: Cover, algebra: FreeRankNAlgebra) -> tuple:
    """Datum from a random global quadratic with random local generator changes."""
    q = random_quad(rng, algebra.ring)
    changes = []
    for i in range(cover.size):
        R = base_change(algebra, cover.from_base((i,))).ring
        u_scalar = _local_unit(rng, R.algebra.base)
        u = Element(R, tuple(R.algebra.base.mul(u_scalar.value, e) for e in R.algebra.unit))
        if rng.random() < 0.5:
            # occasionally multiply by a unit of the algebra itself
            v = random_unit(rng, R) if R.is_finite else R.one_element()
            u = u * v
        c = Element(R, R.random(rng))
        changes.append((u, c))
    d, witnesses = datum_from_global(cover, algebra, q, changes)
    return q, d, witnesses


# ---------------------------------------------------------------------------
# streams


def random_fixtures(config: VerifyConfig) -> Iterator[dict]:
    """Endless reproducible stream of fixtures of every kind."""
    rng = random.Random(f"fixtures:{config.seed}")
    family = list(config.ring_family)
    kinds = ["algebra", "quad", "hom", "tower", "descent"]
    while True:
        kind = rng.choice(kinds)
        base = rng.choice(family)
        if kind == "algebra":
            yield {"kind": kind, "value": random_algebra(rng, base, rng.randint(1, 4))}
        elif kind == "quad":
            alg = random_algebra(rng, base, rng.randint(1, 4))
            yield {"kind": kind, "algebra": alg, "value": random_quad(rng, alg.ring)}
        elif kind == "hom":
            alg = random_algebra(rng, base, rng.randint(1, 3))
            yield {"kind": kind, "algebra": alg, "value": random_hom(rng, alg.ring)}
        elif kind == "tower":
            yield {"kind": kind, "value": gaussian_tower() if rng.random() < 0.2 else random_tower(rng, base)}
        else:
            if rng.random() < 0.5:
                cover = integer_cover()
            else:
                cover = modular_cover(rng.choice([6, 12]))
            alg = random_algebra(rng, cover.base, rng.randint(1, 3))
            q, d, _ = random_descent(rng, cover, alg)
            yield {"kind": kind, "algebra": alg, "global": q, "value": d}
