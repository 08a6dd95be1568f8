"""Based quadratic algebras ``A[x]/(x^2 - t x + n)`` and their homomorphisms.

A hom ``(u, c)`` from ``<t', n'>`` to ``<t, n>`` sends ``x' -> u x + c``; it
respects the norm exactly when ``t' = u t + 2c`` and
``n' = u^2 n + u c t + c^2``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import FreeRankNAlgebra, monogenic_algebra
from .errors import (
    BaseMismatch,
    ChainMismatch,
    InfiniteRing,
    MixedRings,
    NotAUnit,
    NotFound,
    NotNormPreserving,
)
from .rings import Element, Modular, Product, Ring, RingHom


@dataclass(frozen=True)
class BasedQuadratic:
    base: Ring
    t: Element
    n: Element

    def __str__(self):
        return f"<{self.t}, {self.n}> over {self.base}"

    def pair(self):
        return (self.t, self.n)


@dataclass(frozen=True)
class QuadHom:
    source: BasedQuadratic
    target: BasedQuadratic
    u: Element
    c: Element

    def __str__(self):
        return f"x -> ({self.u}) x + ({self.c})"

    def pair(self):
        return (self.u, self.c)


def _coerce(base: Ring, x) -> Element:
    if isinstance(x, Element):
        if x.ring != base:
            raise MixedRings(f"{x.ring} is not {base}")
        return x
    return base(x)


def make_quad(base: Ring, t, n) -> BasedQuadratic:
    return BasedQuadratic(base, _coerce(base, t), _coerce(base, n))


def as_rank2_algebra(q: BasedQuadratic) -> FreeRankNAlgebra:
    """Rank-2 algebra on the basis ``1, x`` with ``x^2 = t x - n``."""
    return monogenic_algebra(q.base, [q.n, -q.t], name=f"<{q.t}, {q.n}>")


def generator(q: BasedQuadratic) -> Element:
    return as_rank2_algebra(q).basis(1)


def _hom_defects(source: BasedQuadratic, target: BasedQuadratic, u: Element, c: Element):
    t_eq = source.t - (u * target.t + 2 * c)
    n_eq = source.n - (u * u * target.n + u * c * target.t + c * c)
    return t_eq, n_eq


def make_hom(source: BasedQuadratic, target: BasedQuadratic, u, c) -> QuadHom:
    """Validated hom ``x_source -> u x_target + c``."""
    if source.base != target.base:
        raise BaseMismatch(f"{source.base} vs {target.base}")
    u = _coerce(source.base, u)
    c = _coerce(source.base, c)
    t_eq, n_eq = _hom_defects(source, target, u, c)
    if not t_eq.is_zero():
        raise NotNormPreserving(f"t' = u t + 2c fails (defect {t_eq})", equation="trace")
    if not n_eq.is_zero():
        raise NotNormPreserving(f"n' = u^2 n + u c t + c^2 fails (defect {n_eq})", equation="norm")
    return QuadHom(source, target, u, c)


def is_valid_hom(f: QuadHom) -> bool:
    t_eq, n_eq = _hom_defects(f.source, f.target, f.u, f.c)
    return t_eq.is_zero() and n_eq.is_zero()


def hom_from_target(target: BasedQuadratic, u, c) -> QuadHom:
    """The unique source making ``(u, c)`` a valid hom into ``target``."""
    base = target.base
    u = _coerce(base, u)
    c = _coerce(base, c)
    src = BasedQuadratic(base, u * target.t + 2 * c, u * u * target.n + u * c * target.t + c * c)
    return QuadHom(src, target, u, c)


def identity_hom(q: BasedQuadratic) -> QuadHom:
    return QuadHom(q, q, q.base.one_element(), q.base.zero_element())


def compose(g: QuadHom, f: QuadHom) -> QuadHom:
    """``g`` after ``f``; needs ``f.target == g.source``.

    Substituting ``x' = u_g x + c_g`` into ``x'' -> u_f x' + c_f`` gives
    ``u = u_f u_g`` and ``c = u_f c_g + c_f``.
    """
    if f.target != g.source:
        raise ChainMismatch(f"cannot follow a hom into {f.target} by one out of {g.source}")
    return QuadHom(f.source, g.target, f.u * g.u, f.u * g.c + f.c)


def is_isomorphism(f: QuadHom) -> bool:
    return f.u.is_unit()


def inverse_hom(f: QuadHom) -> QuadHom:
    if not f.u.is_unit():
        raise NotAUnit(f"hom with u = {f.u} is not invertible")
    v = f.u.inverse()
    return QuadHom(f.target, f.source, v, -(v * f.c))


def star(p: BasedQuadratic, q: BasedQuadratic) -> BasedQuadratic:
    """``<s,m> * <t,n> = <st, m t^2 + n s^2 - 4mn>``."""
    if p.base != q.base:
        raise MixedRings(f"{p.base} vs {q.base}")
    s, m = p.t, p.n
    t, n = q.t, q.n
    return BasedQuadratic(p.base, s * t, m * t * t + n * s * s - 4 * m * n)


def discriminant(q: BasedQuadratic) -> Element:
    return q.t * q.t - 4 * q.n


def split_quad(base: Ring) -> BasedQuadratic:
    return make_quad(base, 1, 0)


def dual_numbers_quad(base: Ring) -> BasedQuadratic:
    return make_quad(base, 0, 0)


def swap_hom(base: Ring) -> QuadHom:
    """``x -> 1 - x`` on the split algebra."""
    q = split_quad(base)
    return make_hom(q, q, -1, 1)


# ---------------------------------------------------------------------------
# isomorphism search


def _search_payloads(ring: Ring, p_t, p_n, q_t, q_n):
    """Payload pair ``(u, c)`` with ``u`` a unit and the hom equations holding."""
    if isinstance(ring, Product):
        parts = []
        for k, f in enumerate(ring.factors):
            r = _search_payloads(f, p_t[k], p_n[k], q_t[k], q_n[k])
            if r is None:
                return None
            parts.append(r)
        return tuple(u for u, _ in parts), tuple(c for _, c in parts)
    if isinstance(ring, Modular):
        m = ring.modulus
        units = [u for u in range(m) if ring.is_unit(u)]
        for u in units:
            # 2c = p_t - u q_t
            rhs = (p_t - u * q_t) % m
            for c in range(m):
                if (2 * c - rhs) % m:
                    continue
                if (u * u * q_n + u * c * q_t + c * c - p_n) % m == 0:
                    return u, c
        return None
    elems = list(ring.elements())
    for u in elems:
        if not ring.is_unit(u):
            continue
        for c in elems:
            cand_t = ring.add(ring.mul(u, q_t), ring.add(c, c))
            if cand_t != p_t:
                continue
            cand_n = ring.add(
                ring.add(ring.mul(ring.mul(u, u), q_n), ring.mul(ring.mul(u, c), q_t)),
                ring.mul(c, c),
            )
            if cand_n == p_n:
                return u, c
    return None


def find_isomorphism(p: BasedQuadratic, q: BasedQuadratic) -> QuadHom:
    """An isomorphism ``p -> q`` by exhaustive search over a finite base."""
    if p.base != q.base:
        raise BaseMismatch(f"{p.base} vs {q.base}")
    ring = p.base
    if not ring.is_finite:
        raise InfiniteRing(f"cannot search for isomorphisms over {ring}")
    found = _search_payloads(ring, p.t.value, p.n.value, q.t.value, q.n.value)
    if found is None:
        raise NotFound(f"no isomorphism {p} -> {q}")
    u, c = found
    return make_hom(p, q, Element(ring, u), Element(ring, c))


def are_isomorphic(p: BasedQuadratic, q: BasedQuadratic) -> bool:
    try:
        find_isomorphism(p, q)
    except NotFound:
        return False
    return True


def all_isomorphisms(p: BasedQuadratic, q: BasedQuadratic):
    """Every isomorphism ``p -> q`` (finite bases, used as a test oracle)."""
    ring = p.base
    elems = list(ring.elements())
    for u, c in itertools.product(elems, elems):
        if not ring.is_unit(u):
            continue
        f = QuadHom(p, q, Element(ring, u), Element(ring, c))
        if is_valid_hom(f):
            yield f


# ---------------------------------------------------------------------------
# base change


def push_quad(q: BasedQuadratic, f: RingHom) -> BasedQuadratic:
    if f.source != q.base:
        raise BaseMismatch(f"hom starts at {f.source}, quadratic lives over {q.base}")
    return BasedQuadratic(f.target, f(q.t), f(q.n))


def push_hom(h: QuadHom, f: RingHom) -> QuadHom:
    return QuadHom(push_quad(h.source, f), push_quad(h.target, f), f(h.u), f(h.c))


def hom_algebra_map(h: QuadHom) -> RingHom:
    """The algebra map ``a + b x' -> (a + b c) + b u x`` between rank-2 views."""
    src = as_rank2_algebra(h.source)
    tgt = as_rank2_algebra(h.target)
    R = h.source.base
    u, c = h.u.value, h.c.value

    def fn(v):
        a, b = v
        return (R.add(a, R.mul(b, c)), R.mul(b, u))

    return RingHom(src.ring, tgt.ring, fn, "quad-hom")
