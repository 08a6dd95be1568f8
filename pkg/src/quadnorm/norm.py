"""The norm of based quadratic algebras and of their homomorphisms.

For ``B`` free of rank ``n`` over ``A`` and ``<T, N>`` over ``B``::

    Nm<T, N> = < s_n(T), sum_{k=1}^{n} (-4)^(k-1) s_{k,n-k}(N, T^2) >

and a hom ``x' -> U x + C`` into ``<T, N>`` goes to
``x' -> s_n(U) x + sum_{k=1}^{n} 2^(k-1) s_{k,n-k}(C, U T)``.

Each sum is also the value at ``lam = -4`` (resp. ``lam = 2``) of the exact
quotient ``(s_n(lam X + Y) - s_n(Y)) / lam`` in ``A[lam]``.  Both paths run
on every call unless ``QUADNORM_CROSS_CHECK=0``; a disagreement raises
``InternalContradiction``.
"""
from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass

from . import algebra as alg_mod
from .algebra import AlgebraRing, FreeRankNAlgebra, base_change, extend_hom, norm_sn
from .errors import BaseMismatch, InternalContradiction, TowerMismatch
from .quadratic import BasedQuadratic, QuadHom, is_valid_hom, push_hom, push_quad
from .rings import Element, Polynomial, RingHom, exact_divide_by_variable, fresh_names, specialize

# calls / cross-checks performed, read by the acceptance suite
STATS: Counter = Counter()


def cross_check_enabled() -> bool:
    return os.environ.get("QUADNORM_CROSS_CHECK", "1") != "0"


@dataclass(frozen=True)
class Extension:
    algebra: FreeRankNAlgebra

    @property
    def base(self):
        return self.algebra.base

    @property
    def ring(self) -> AlgebraRing:
        return self.algebra.ring

    @property
    def rank(self) -> int:
        return self.algebra.rank

    def __str__(self):
        return str(self.algebra)


def _as_extension(ext) -> Extension:
    return ext if isinstance(ext, Extension) else Extension(ext)


def _check_over(ext: Extension, q: BasedQuadratic):
    if q.base != ext.ring:
        raise BaseMismatch(f"quadratic over {q.base}, extension is {ext.ring}")


def weighted_polar_sum(x: Element, y: Element, weight: int) -> Element:
    """``sum_{k=1}^{n} weight^(k-1) s_{k,n-k}(x, y)`` from the closed expansion."""
    A = alg_mod.parent(x).base
    vals = alg_mod.polarized_two(x, y)
    total = A.zero_element()
    for k in range(1, len(vals)):
        total = total + A(weight ** (k - 1)) * vals[k]
    return total


def fraction_form(x: Element, y: Element, at: int) -> Element:
    """``((s_n(lam x + y) - s_n(y)) / lam)`` evaluated at ``lam = at``."""
    alg = alg_mod.parent(x)
    A = alg.base
    (name,) = fresh_names(A, 1)
    P = Polynomial(A, (name,))
    algP, lift = extend_hom(alg, RingHom(A, P, P.constant, "embed"))
    lam = Element(P, P.monomial((1,)))
    lam_x = Element(algP.ring, tuple(P.mul(lam.value, c) for c in lift(x).value))
    top = norm_sn(lam_x + lift(y))
    low = Element(P, P.constant(norm_sn(y).value))
    quotient = exact_divide_by_variable(top - low, name)
    return specialize(quotient, {name: A(at)})


def _checked_sum(x: Element, y: Element, weight: int, what: str) -> Element:
    closed = weighted_polar_sum(x, y, weight)
    if cross_check_enabled():
        STATS[f"{what}_checked"] += 1
        frac = fraction_form(x, y, weight)
        if frac != closed:
            STATS[f"{what}_mismatch"] += 1
            raise InternalContradiction(
                f"{what}: closed sum {closed} differs from fraction form {frac}"
            )
    return closed


def norm_quad(ext, q: BasedQuadratic) -> BasedQuadratic:
    ext = _as_extension(ext)
    _check_over(ext, q)
    STATS["norm_quad_calls"] += 1
    t = norm_sn(q.t)
    m = _checked_sum(q.n, q.t * q.t, -4, "norm_quad")
    return BasedQuadratic(ext.base, t, m)


def norm_quad_fraction(ext, q: BasedQuadratic) -> BasedQuadratic:
    """The same norm computed only through the fraction in ``A[lam]``."""
    ext = _as_extension(ext)
    _check_over(ext, q)
    return BasedQuadratic(ext.base, norm_sn(q.t), fraction_form(q.n, q.t * q.t, -4))


def norm_hom(ext, f: QuadHom) -> QuadHom:
    ext = _as_extension(ext)
    _check_over(ext, f.source)
    _check_over(ext, f.target)
    STATS["norm_hom_calls"] += 1
    u = norm_sn(f.u)
    c = _checked_sum(f.c, f.u * f.target.t, 2, "norm_hom")
    out = QuadHom(norm_quad(ext, f.source), norm_quad(ext, f.target), u, c)
    if not is_valid_hom(out):
        raise InternalContradiction(f"norm of {f} is not norm-preserving")
    if f.u.is_unit() and not u.is_unit():
        raise InternalContradiction("norm of an isomorphism is not an isomorphism")
    return out


def push_extension(ext, f: RingHom) -> Extension:
    return Extension(base_change(_as_extension(ext).algebra, f))


def push_over_extension(ext, f: RingHom):
    """Base-change ``ext`` along ``f: A -> A'`` with the induced map ``B -> B'``."""
    new, h = extend_hom(_as_extension(ext).algebra, f)
    return Extension(new), h


def _tower(a_to_b, b_to_c):
    a_to_b, b_to_c = _as_extension(a_to_b), _as_extension(b_to_c)
    if b_to_c.base != a_to_b.ring:
        raise TowerMismatch(f"{b_to_c} does not sit over {a_to_b}")
    tower = alg_mod.tower_compose(a_to_b.algebra, b_to_c.algebra)
    flat = alg_mod.tower_flatten_hom(a_to_b.algebra, b_to_c.algebra, tower)
    return a_to_b, b_to_c, Extension(tower), flat


def norm_tower_check(a_to_b, b_to_c, q: BasedQuadratic):
    """``(Nm_{C/A}(q), Nm_{B/A}(Nm_{C/B}(q)))``; equal when the norm is transitive."""
    a_to_b, b_to_c, tower, flat = _tower(a_to_b, b_to_c)
    direct = norm_quad(tower, push_quad(q, flat))
    stepwise = norm_quad(a_to_b, norm_quad(b_to_c, q))
    return direct, stepwise


def norm_tower_check_hom(a_to_b, b_to_c, f: QuadHom):
    a_to_b, b_to_c, tower, flat = _tower(a_to_b, b_to_c)
    direct = norm_hom(tower, push_hom(f, flat))
    stepwise = norm_hom(a_to_b, norm_hom(b_to_c, f))
    return direct, stepwise
