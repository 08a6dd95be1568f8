"""Randomized verification of the algebraic laws over concrete small rings.

Every law draws its own cases from ``random.Random(f"{seed}:{law}")`` so the
outcome of one law never depends on which other laws ran, and reports are
bit-identical for a fixed seed (timings are only included on request).
"""
from __future__ import annotations

import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from . import fixtures as fx
from .algebra import (
    base_change,
    char_poly_coeffs,
    extend_hom,
    mul_matrix,
    norm_polynomial,
    norm_sn,
    polarized,
    split_algebra,
    tower_compose,
    tower_flatten_hom,
    trace,
)
from .descent import (
    det_bundle,
    disc_compatible,
    disc_form,
    glue_norm,
    line_norm,
    make_cover,
    make_datum,
    refine_datum,
    sub_datum,
)
from .errors import NotFound
from .linalg import Matrix, det, identity, mat_add, mat_scale, zeros
from .norm import Extension, norm_hom, norm_quad, norm_tower_check, norm_tower_check_hom
from .quadratic import (
    compose,
    discriminant,
    find_isomorphism,
    hom_algebra_map,
    as_rank2_algebra,
    identity_hom,
    is_valid_hom,
    make_quad,
    push_hom,
    push_quad,
    star,
    swap_hom,
)
from .rings import (
    Element,
    Integers,
    Modular,
    Product,
    Ring,
    RingHom,
    diagonal_hom,
    identity_hom as ring_identity,
    localize,
    projection_hom,
    reduction_hom,
    specialize,
    zero_hom,
)
from .serialize import to_jsonable


class LawFailed(Exception):
    def __init__(self, message, **inputs):
        super().__init__(message)
        self.inputs = inputs


def expect(cond: bool, message: str, **inputs):
    if not cond:
        raise LawFailed(message, **inputs)


@dataclass
class LawResult:
    name: str
    passed: int = 0
    failed: int = 0
    counterexample: dict | None = None
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    def to_json(self, timings: bool = False):
        out = {"passed": str(self.passed), "failed": str(self.failed)}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.notes:
            out["notes"] = {k: str(v) for k, v in sorted(self.notes.items())}
        if timings:
            out["seconds"] = f"{self.seconds:.3f}"
        return out


@dataclass
class VerifyReport:
    seed: int
    cases_per_law: int
    results: dict

    @property
    def ok(self) -> bool:
        return all(r.failed == 0 for r in self.results.values())

    def to_json(self, timings: bool = False):
        return {
            "seed": str(self.seed),
            "cases_per_law": str(self.cases_per_law),
            "ok": self.ok,
            "laws": {k: self.results[k].to_json(timings) for k in sorted(self.results)},
        }


LAWS: dict[str, Callable] = {}


def law(name):
    def deco(fn):
        LAWS[name] = fn
        return fn

    return deco


# ---------------------------------------------------------------------------
# shared helpers


def laplace_det(m: Matrix) -> Element:
    """Cofactor expansion along the first row; exponential, for cross-checks only."""
    R = m.ring

    def rec(rows):
        if not rows:
            return R.one
        if len(rows) == 1:
            return rows[0][0]
        total = R.zero
        for j, a in enumerate(rows[0]):
            if a == R.zero:
                continue
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = R.mul(a, rec(minor))
            total = R.add(total, term) if j % 2 == 0 else R.sub(total, term)
        return total

    return Element(R, rec([list(r) for r in m.entries]))


def random_matrix(rng, ring: Ring, n: int) -> Matrix:
    return Matrix.from_payloads(ring, [[ring.random(rng) for _ in range(n)] for _ in range(n)])


def random_ring_hom(rng, ring: Ring) -> RingHom:
    """A homomorphism out of ``ring`` to some other test ring."""
    if isinstance(ring, Modular):
        m = ring.modulus
        divisors = [d for d in range(1, m + 1) if m % d == 0]
        choice = rng.random()
        if choice < 0.6:
            return reduction_hom(ring, rng.choice(divisors))
        if choice < 0.8:
            return diagonal_hom(ring, 2)
        return zero_hom(ring)
    if isinstance(ring, Integers):
        choice = rng.random()
        if choice < 0.6:
            return reduction_hom(ring, rng.randint(2, 12))
        if choice < 0.8:
            return localize(ring, 6)[1]
        return ring_identity(ring)
    if isinstance(ring, Product):
        if rng.random() < 0.7:
            return projection_hom(ring, rng.randrange(len(ring.factors)))
        return ring_identity(ring)
    return ring_identity(ring)


def pick_base(rng, family, finite=False, small=False) -> Ring:
    pool = [r for r in family if (r.is_finite or not finite)]
    if small:
        pool = [r for r in pool if not r.is_finite or r.size <= 13] or pool
    return rng.choice(pool)


def pick_rank(rng, base: Ring, low=1, high=4) -> int:
    if not base.is_finite:
        high = min(high, 3)
    return rng.randint(low, high)


def random_setup(rng, family, finite=False, low=1, high=4):
    base = pick_base(rng, family, finite)
    alg = fx.random_algebra(rng, base, pick_rank(rng, base, low, high))
    return base, alg


def compositions(n: int, m: int):
    if m == 1:
        yield (n,)
        return
    for k in range(n + 1):
        for rest in compositions(n - k, m - 1):
            yield (k,) + rest


# ---------------------------------------------------------------------------
# rings and matrices


@law("ring_axioms")
def _ring_axioms(rng, family, notes):
    R = pick_base(rng, family)
    x, y, z = (Element(R, R.random(rng)) for _ in range(3))
    ctx = dict(ring=R, x=x, y=y, z=z)
    expect((x + y) + z == x + (y + z), "addition not associative", **ctx)
    expect(x * y == y * x, "multiplication not commutative", **ctx)
    expect((x * y) * z == x * (y * z), "multiplication not associative", **ctx)
    expect(x * (y + z) == x * y + x * z, "not distributive", **ctx)
    expect(R.one_element() * x == x and x + R.zero_element() == x, "identity laws fail", **ctx)
    expect(Element(R, R.element_from_json(x.to_json())) == x, "JSON round trip fails", **ctx)
    if x.is_unit():
        expect(x * x.inverse() == 1, "inverse is wrong", **ctx)


@law("ring_hom")
def _ring_hom(rng, family, notes):
    R = pick_base(rng, family)
    f = random_ring_hom(rng, R)
    x, y = (Element(R, R.random(rng)) for _ in range(2))
    ctx = dict(ring=R, target=f.target, x=x, y=y)
    expect(f(x + y) == f(x) + f(y), "hom does not preserve addition", **ctx)
    expect(f(x * y) == f(x) * f(y), "hom does not preserve multiplication", **ctx)
    expect(f(R.one_element()) == f.target.one_element(), "hom does not preserve 1", **ctx)


@law("det_multiplicative")
def _det_mult(rng, family, notes):
    R = pick_base(rng, family)
    n = rng.randint(1, 4)
    a, b = random_matrix(rng, R, n), random_matrix(rng, R, n)
    ctx = dict(ring=R, a=a, b=b)
    expect(det(a @ b) == det(a) * det(b), "det(ab) != det(a) det(b)", **ctx)
    expect(det(a.transpose()) == det(a), "det(a^T) != det(a)", **ctx)


@law("det_laplace")
def _det_laplace(rng, family, notes):
    R = pick_base(rng, family)
    n = rng.randint(1, 5)
    a = random_matrix(rng, R, n)
    expect(det(a) == laplace_det(a), "det disagrees with cofactor expansion", ring=R, a=a)


# ---------------------------------------------------------------------------
# norms on algebras


@law("sn_multiplicative")
def _sn_mult(rng, family, notes):
    _, alg = random_setup(rng, family)
    x, y = fx.random_element(rng, alg), fx.random_element(rng, alg)
    ctx = dict(algebra=alg, x=x, y=y)
    expect(norm_sn(x * y) == norm_sn(x) * norm_sn(y), "s_n(xy) != s_n(x) s_n(y)", **ctx)
    expect(mul_matrix(x * y) == mul_matrix(x) @ mul_matrix(y), "mul_matrix not multiplicative", **ctx)
    expect(norm_sn(alg.ring.one_element()) == 1, "s_n(1) != 1", **ctx)
    a = fx.random_scalar(rng, alg.base)
    expect(norm_sn(alg.scalar(a) * x) == a ** alg.rank * norm_sn(x), "s_n(ax) != a^n s_n(x)", a=a, **ctx)


@law("sn_base_change")
def _sn_base_change(rng, family, notes):
    base, alg = random_setup(rng, family)
    f = random_ring_hom(rng, base)
    new, h = extend_hom(alg, f)
    x = fx.random_element(rng, alg)
    expect(f(norm_sn(x)) == norm_sn(h(x)), "s_n does not commute with base change", algebra=alg, x=x)


@law("sn_transitive")
def _sn_transitive(rng, family, notes):
    if rng.random() < 0.25:
        B, C = fx.gaussian_tower()
    else:
        B, C = fx.random_tower(rng, pick_base(rng, family, finite=True))
    T = tower_compose(B, C).validate()
    flat = tower_flatten_hom(B, C, T)
    c = fx.random_element(rng, C)
    expect(norm_sn(norm_sn(c)) == norm_sn(flat(c)), "s_n(s_m(c)) != s_mn(c)", lower=B, upper=C, c=c)


@law("trace_polarized")
def _trace(rng, family, notes):
    _, alg = random_setup(rng, family)
    x = fx.random_element(rng, alg)
    one = alg.ring.one_element()
    t = trace(x)
    ctx = dict(algebra=alg, x=x)
    expect(t == polarized([(1, x), (alg.rank - 1, one)]), "trace != s_{1,n-1}(x, 1)", **ctx)
    cp = char_poly_coeffs(x)
    expect(cp[alg.rank] == 1 and cp[alg.rank - 1] == -t, "char poly top coefficients wrong", **ctx)
    expect(cp[0] == (-1) ** alg.rank * norm_sn(x), "char poly constant term wrong", **ctx)


@law("cayley_hamilton")
def _cayley(rng, family, notes):
    _, alg = random_setup(rng, family)
    x = fx.random_element(rng, alg)
    M = mul_matrix(x)
    R = alg.base
    acc = zeros(R, alg.rank)
    power = identity(R, alg.rank)
    for c in char_poly_coeffs(x):
        acc = mat_add(acc, mat_scale(c, power))
        power = power @ M
    expect(acc.is_zero(), "char poly does not annihilate mul_matrix(x)", algebra=alg, x=x)


def _polar_setup(rng, family, slots):
    _, alg = random_setup(rng, family)
    xs = [fx.random_element(rng, alg) for _ in range(slots)]
    ks = rng.choice(list(compositions(alg.rank, slots)))
    return alg, xs, list(ks)


@law("polar_reorder")
def _polar_reorder(rng, family, notes):
    alg, xs, ks = _polar_setup(rng, family, rng.randint(2, 3))
    perm = list(range(len(xs)))
    rng.shuffle(perm)
    a = polarized(list(zip(ks, xs)))
    b = polarized([(ks[p], xs[p]) for p in perm])
    expect(a == b, "polarized form depends on slot order", algebra=alg, xs=xs, ks=ks, perm=perm)


@law("polar_combine")
def _polar_combine(rng, family, notes):
    alg, xs, ks = _polar_setup(rng, family, rng.randint(2, 3))
    xs[1] = xs[0]
    lhs = polarized(list(zip(ks, xs)))
    merged = [(ks[0] + ks[1], xs[0])] + list(zip(ks[2:], xs[2:]))
    rhs = alg.base(math.comb(ks[0] + ks[1], ks[0])) * polarized(merged)
    expect(lhs == rhs, "combination identity fails", algebra=alg, xs=xs, ks=ks)


@law("polar_homogeneity")
def _polar_homog(rng, family, notes):
    alg, xs, ks = _polar_setup(rng, family, rng.randint(1, 3))
    a = fx.random_scalar(rng, alg.base)
    scaled = [alg.scalar(a) * xs[0]] + xs[1:]
    lhs = polarized(list(zip(ks, scaled)))
    rhs = a ** ks[0] * polarized(list(zip(ks, xs)))
    expect(lhs == rhs, "homogeneity fails", algebra=alg, xs=xs, ks=ks, a=a)


@law("polar_degeneracy")
def _polar_degen(rng, family, notes):
    alg, xs, ks = _polar_setup(rng, family, rng.randint(1, 2))
    lhs = polarized([(0, fx.random_element(rng, alg))] + list(zip(ks, xs)))
    expect(lhs == polarized(list(zip(ks, xs))), "a zero slot is not dropped", algebra=alg, xs=xs, ks=ks)


@law("polar_multiplicative")
def _polar_mult(rng, family, notes):
    alg, xs, ks = _polar_setup(rng, family, rng.randint(1, 3))
    b = fx.random_element(rng, alg)
    lhs = polarized([(k, b * x) for k, x in zip(ks, xs)])
    rhs = norm_sn(b) * polarized(list(zip(ks, xs)))
    expect(lhs == rhs, "multiplicativity of polarized forms fails", algebra=alg, xs=xs, ks=ks, b=b)


@law("polar_completeness")
def _polar_complete(rng, family, notes):
    _, alg = random_setup(rng, family)
    A = alg.base
    slots = rng.randint(1, 3)
    xs = [fx.random_element(rng, alg) for _ in range(slots)]
    poly = norm_polynomial(xs)
    P = poly.ring
    # spot-check the extraction against the public operation
    ks = rng.choice(list(compositions(alg.rank, slots)))
    expect(
        polarized(list(zip(ks, xs))) == Element(A, P.coefficient(poly.value, ks)),
        "polarized disagrees with the norm polynomial", algebra=alg, xs=xs, ks=list(ks),
    )
    if A.is_finite and A.size <= 3:
        tuples = list(itertools.product(list(A.elements()), repeat=slots))
    else:
        tuples = [tuple(A.random(rng) for _ in range(slots)) for _ in range(5)]
    coeffs = {k: Element(A, P.coefficient(poly.value, k)) for k in compositions(alg.rank, slots)}
    for lam in tuples:
        lam_e = [Element(A, v) for v in lam]
        total = A.zero_element()
        for k, c in coeffs.items():
            term = c
            for v, e in zip(lam_e, k):
                term = term * v ** e
            total = total + term
        combo = alg.ring.zero_element()
        for v, x in zip(lam_e, xs):
            combo = combo + alg.scalar(v) * x
        expect(total == norm_sn(combo), "polarization does not reassemble s_n", algebra=alg, xs=xs, lam=lam_e)
        expect(specialize(poly, dict(zip(P.variables, lam_e))) == total, "specialization mismatch", algebra=alg)


# ---------------------------------------------------------------------------
# quadratic algebras


@law("hom_push_forward")
def _hom_push(rng, family, notes):
    base = pick_base(rng, family)
    h = fx.random_hom(rng, base)
    f = random_ring_hom(rng, base)
    expect(is_valid_hom(push_hom(h, f)), "pushed-forward hom is not norm-preserving", hom=h, target=f.target)


@law("hom_preserves_norm_trace")
def _hom_norm_trace(rng, family, notes):
    base = pick_base(rng, family)
    h = fx.random_hom(rng, base)
    phi = hom_algebra_map(h)
    src = as_rank2_algebra(h.source)
    for _ in range(20):
        b = fx.random_element(rng, src)
        img = phi(b)
        expect(norm_sn(b) == norm_sn(img), "s_2 not preserved", hom=h, b=b)
        expect(trace(b) == trace(img), "trace not preserved", hom=h, b=b)
        b2 = fx.random_element(rng, src)
        expect(phi(b * b2) == img * phi(b2), "map is not multiplicative", hom=h, b=b, b2=b2)


@law("star_monoid")
def _star(rng, family, notes):
    base = pick_base(rng, family)
    p, q, r = (fx.random_quad(rng, base) for _ in range(3))
    ctx = dict(p=p, q=q, r=r)
    expect(star(p, q) == star(q, p), "star not commutative", **ctx)
    expect(star(star(p, q), r) == star(p, star(q, r)), "star not associative", **ctx)
    expect(star(make_quad(base, 1, 0), p) == p, "split algebra is not the identity", **ctx)
    expect(star(make_quad(base, 0, 0), p) == make_quad(base, 0, 0), "dual numbers do not absorb", **ctx)
    expect(discriminant(star(p, q)) == discriminant(p) * discriminant(q), "disc not multiplicative", **ctx)


@law("compose_substitution")
def _compose(rng, family, notes):
    base = pick_base(rng, family)
    f, g = fx.random_chain(rng, base)
    h = compose(g, f)
    expect(is_valid_hom(h), "composite is not norm-preserving", f=f, g=g)
    # substitute x' = u_g x + c_g into x'' -> u_f x' + c_f inside the rank-2 algebras
    phi = hom_algebra_map(f).then(hom_algebra_map(g))
    x = as_rank2_algebra(f.source).basis(1)
    expect(phi(x).value == (h.c.value, h.u.value), "composite differs from substitution", f=f, g=g)


# ---------------------------------------------------------------------------
# the norm


@law("norm_product")
def _norm_product(rng, family, notes):
    base = pick_base(rng, family)
    AA = split_algebra(base, 2)
    S, M, T, N = (fx.random_scalar(rng, base) for _ in range(4))
    q = make_quad(AA.ring, AA.element([S, T]), AA.element([M, N]))
    lhs = norm_quad(Extension(AA), q)
    rhs = star(make_quad(base, S, M), make_quad(base, T, N))
    expect(lhs == rhs, "norm over A x A is not the star product", q=q)


@law("norm_sqrt")
def _norm_sqrt(rng, family, notes):
    _, alg = random_setup(rng, family, high=3)
    D = fx.random_element(rng, alg)
    q = make_quad(alg.ring, 0, -D)
    got = norm_quad(Extension(alg), q)
    want = make_quad(alg.base, 0, -(4 ** (alg.rank - 1)) * norm_sn(D))
    expect(got == want, "norm of <0, -D> is wrong", algebra=alg, D=D)


@law("norm_split")
def _norm_split(rng, family, notes):
    _, alg = random_setup(rng, family)
    ext = Extension(alg)
    expect(norm_quad(ext, make_quad(alg.ring, 1, 0)) == make_quad(alg.base, 1, 0), "split not preserved", algebra=alg)
    expect(norm_quad(ext, make_quad(alg.ring, 0, 0)) == make_quad(alg.base, 0, 0), "dual numbers not preserved", algebra=alg)


@law("swap_parity")
def _swap(rng, family, notes):
    base = pick_base(rng, family)
    n = rng.randint(1, 4)
    alg = split_algebra(base, n) if rng.random() < 0.5 else fx.random_algebra(rng, base, n)
    got = norm_hom(Extension(alg), swap_hom(alg.ring))
    want = (base(1), base(0)) if n % 2 == 0 else (base(-1), base(1))
    expect(got.pair() == want, "norm of the swap has the wrong parity", algebra=alg)


@law("disc_identity")
def _disc(rng, family, notes):
    _, alg = random_setup(rng, family)
    q = fx.random_quad(rng, alg.ring)
    t, m = norm_quad(Extension(alg), q).pair()
    expect(t * t - 4 * m == norm_sn(discriminant(q)), "t^2 - 4m != s_n(T^2 - 4N)", algebra=alg, q=q)


@law("functoriality")
def _functorial(rng, family, notes):
    _, alg = random_setup(rng, family, high=3)
    ext = Extension(alg)
    f, g = fx.random_chain(rng, alg.ring)
    lhs = norm_hom(ext, compose(g, f))
    rhs = compose(norm_hom(ext, g), norm_hom(ext, f))
    expect(lhs == rhs, "norm does not respect composition", algebra=alg, f=f, g=g)
    q = f.source
    expect(norm_hom(ext, identity_hom(q)) == identity_hom(norm_quad(ext, q)), "identity not preserved", algebra=alg)


@law("norm_base_change")
def _norm_bc(rng, family, notes):
    base, alg = random_setup(rng, family, high=3)
    f = random_ring_hom(rng, base)
    new, h = extend_hom(alg, f)
    q = fx.random_quad(rng, alg.ring)
    lhs = push_quad(norm_quad(Extension(alg), q), f)
    rhs = norm_quad(Extension(new), push_quad(q, h))
    expect(lhs == rhs, "norm does not commute with base change", algebra=alg, q=q, target=f.target)
    k = fx.random_hom(rng, alg.ring)
    lhs = push_hom(norm_hom(Extension(alg), k), f)
    rhs = norm_hom(Extension(new), push_hom(k, h))
    expect(lhs == rhs, "norm of homs does not commute with base change", algebra=alg, hom=k)


def _tower_fixture(rng, family):
    r = rng.random()
    if r < 0.25:
        return fx.gaussian_tower()
    if r < 0.5:
        return fx.split_tower(pick_base(rng, family, finite=True))
    return fx.random_tower(rng, pick_base(rng, family, finite=True))


@law("tower_quad")
def _tower_quad(rng, family, notes):
    B, C = _tower_fixture(rng, family)
    q = fx.random_quad(rng, C.ring)
    direct, stepwise = norm_tower_check(B, C, q)
    expect(direct == stepwise, "norm is not transitive", lower=B, upper=C, q=q)


@law("tower_hom")
def _tower_hom(rng, family, notes):
    B, C = _tower_fixture(rng, family)
    f = fx.random_hom(rng, C.ring)
    direct, stepwise = norm_tower_check_hom(B, C, f)
    expect(direct == stepwise, "norm of homs is not transitive", lower=B, upper=C, hom=f)


@law("monoid_hom")
def _monoid(rng, family, notes):
    _, alg = random_setup(rng, family, finite=True, high=3)
    ext = Extension(alg)
    q, r = fx.random_quad(rng, alg.ring), fx.random_quad(rng, alg.ring)
    lhs = norm_quad(ext, star(q, r))
    rhs = star(norm_quad(ext, q), norm_quad(ext, r))
    if lhs == rhs:
        notes["exact_equal"] = notes.get("exact_equal", 0) + 1
    try:
        find_isomorphism(lhs, rhs)
    except NotFound:
        raise LawFailed("norm(q*r) is not isomorphic to norm(q)*norm(r)", algebra=alg, q=q, r=r) from None


@law("etale")
def _etale(rng, family, notes):
    _, alg = random_setup(rng, family)
    q = fx.random_quad(rng, alg.ring)
    if discriminant(q).is_unit():
        notes["unit_disc_cases"] = notes.get("unit_disc_cases", 0) + 1
        expect(discriminant(norm_quad(Extension(alg), q)).is_unit(), "etale algebra has non-etale norm", algebra=alg, q=q)


@law("norm_of_iso")
def _norm_iso(rng, family, notes):
    _, alg = random_setup(rng, family, high=3)
    f = fx.random_hom(rng, alg.ring, iso=True)
    if f.u.is_unit():
        expect(norm_hom(Extension(alg), f).u.is_unit(), "norm of an isomorphism is not one", algebra=alg, f=f)


# ---------------------------------------------------------------------------
# descent


def _descent_fixture(rng, family, rank_high=3):
    if rng.random() < 0.5:
        cover = fx.integer_cover()
        base = cover.base
    else:
        cover = fx.modular_cover(rng.choice([6, 12, 18]))
        base = cover.base
    alg = fx.random_algebra(rng, base, rng.randint(1, rank_high if not base.is_finite else 3))
    q, d, wit = fx.random_descent(rng, cover, alg)
    return q, d, wit


@law("descent_cocycle")
def _descent_cocycle(rng, family, notes):
    _, d, _ = _descent_fixture(rng, family)
    g = glue_norm(d)  # validates, raising on a broken cocycle
    expect(disc_compatible(d) and disc_compatible(g), "discriminants do not transform by U^2")


@law("descent_det")
def _descent_det(rng, family, notes):
    _, d, _ = _descent_fixture(rng, family)
    lhs = det_bundle(glue_norm(d)).transitions
    rhs = line_norm(det_bundle(d).validate()).transitions
    expect(lhs == rhs, "det bundle of the norm != norm of the det bundle", datum=d)


@law("descent_disc")
def _descent_disc(rng, family, notes):
    _, d, _ = _descent_fixture(rng, family)
    glued = disc_form(glue_norm(d))
    for i, x in enumerate(disc_form(d)):
        expect(glued[i] == norm_sn(x), "disc of the glued norm != s_n(disc)", datum=d, piece=i)


@law("descent_well_defined")
def _descent_wd(rng, family, notes):
    q, d, wit = _descent_fixture(rng, family)
    g = glue_norm(d)
    P = d.pieces
    Nq = norm_quad(Extension(d.algebra), q)
    for i, w in enumerate(wit):
        phi = norm_hom(P.extension((i,)), w)
        expect(phi.source == push_quad(Nq, d.cover.from_base((i,))), "norm of witness starts elsewhere", datum=d)
        expect(phi.target == g.locals[i] and phi.u.is_unit(), "norm of witness is not an isomorphism", datum=d)
    for (i, j), t in g.transitions.items():
        S = (i, j)
        wi = push_hom(norm_hom(P.extension((i,)), wit[i]), d.cover.restriction((i,), S))
        wj = push_hom(norm_hom(P.extension((j,)), wit[j]), d.cover.restriction((j,), S))
        expect(compose(t, wi) == wj, "glued transitions are not induced by the witnesses", datum=d)


@law("descent_refinement")
def _descent_refine(rng, family, notes):
    cover = make_cover(Integers(), [2, 3, 5])
    alg = fx.random_algebra(rng, cover.base, rng.randint(1, 2))
    q, d, _ = fx.random_descent(rng, cover, alg)
    g = glue_norm(d)
    expect(sub_datum(g, [0, 1]).locals == glue_norm(sub_datum(d, [0, 1])).locals, "restriction and gluing disagree")
    expect(
        sub_datum(g, [0, 1]).transitions == glue_norm(sub_datum(d, [0, 1])).transitions,
        "restricted transitions disagree",
    )
    d2 = sub_datum(d, [0, 1])
    p = rng.randrange(2)
    r1 = glue_norm(refine_datum(d2, p, 5))
    r2 = refine_datum(glue_norm(d2), p, 5)
    expect(r1.locals == r2.locals and r1.transitions == r2.transitions, "gluing does not commute with refinement")


@law("descent_etale_parity")
def _descent_parity(rng, family, notes):
    cover = fx.integer_cover() if rng.random() < 0.5 else fx.modular_cover(rng.choice([6, 12]))
    n = rng.randint(1, 4)
    alg = split_algebra(cover.base, n)
    d = make_datum(cover, alg, [make_quad(d_ring, 1, 0) for d_ring in
                                (base_change(alg, cover.from_base((i,))).ring for i in range(cover.size))],
                   {(0, 1): swap_hom(base_change(alg, cover.from_base((0, 1))).ring)})
    g = glue_norm(d)
    expect(all(x.is_unit() for x in disc_form(g)), "split data should stay etale")
    t = g.transitions[(0, 1)]
    R = t.u.ring
    want = (R(1), R(0)) if n % 2 == 0 else (R(-1), R(1))
    expect(t.pair() == want, "glued swap has the wrong parity", rank=n)


# ---------------------------------------------------------------------------
# driver


def law_names() -> list[str]:
    return sorted(LAWS)


def run_law(name: str, seed: int, cases: int, family=None) -> LawResult:
    family = family or fx.default_family()
    rng = random.Random(f"{seed}:{name}")
    fn = LAWS[name]
    res = LawResult(name)
    start = time.perf_counter()
    for case in range(cases):
        try:
            fn(rng, family, res.notes)
            res.passed += 1
        except LawFailed as exc:
            res.failed += 1
            if res.counterexample is None:
                res.counterexample = {"case": str(case), "message": str(exc), "inputs": to_jsonable(exc.inputs)}
        except Exception as exc:  # an exception inside a law is a failure of that case
            res.failed += 1
            if res.counterexample is None:
                res.counterexample = {"case": str(case), "message": f"{type(exc).__name__}: {exc}"}
    res.seconds = time.perf_counter() - start
    return res


def _run_law_args(args):
    return run_law(*args)


def run_verify(seed: int = 0, cases: int = 200, laws="all", jobs: int = 1, family=None) -> VerifyReport:
    names = law_names() if laws in ("all", None) else list(laws)
    unknown = [n for n in names if n not in LAWS]
    if unknown:
        raise KeyError(f"unknown laws: {', '.join(unknown)}")
    if jobs > 1 and family is None:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_law_args, [(n, seed, cases) for n in names]))
    else:
        results = [run_law(n, seed, cases, family) for n in names]
    return VerifyReport(seed, cases, {r.name: r for r in results})
