import random
from fractions import Fraction

import pytest

from oracles import crt_pair
from quadnorm import fixtures as fx
from quadnorm.algebra import norm_sn, split_algebra, trivial_algebra
from quadnorm.descent import (
    QuadDescentDatum,
    datum_from_global,
    det_bundle,
    disc_compatible,
    disc_form,
    globalize,
    glue_norm,
    line_norm,
    make_cover,
    make_datum,
    make_line_datum,
    refine_datum,
    restrict_global,
    sub_datum,
)
from quadnorm.errors import (
    CocycleViolation,
    CoverError,
    NotGlobalizable,
    UnsupportedBase,
)
from quadnorm.norm import Extension, norm_hom, norm_quad
from quadnorm.quadratic import (
    dual_numbers_quad,
    identity_hom,
    is_valid_hom,
    make_hom,
    make_quad,
    split_quad,
    swap_hom,
)
from quadnorm.rings import Element, Integers, Localized, Modular

Z = Integers()


def same_datum(a: QuadDescentDatum, b: QuadDescentDatum):
    assert a.cover == b.cover
    assert a.locals == b.locals
    assert a.transitions == b.transitions


def scalar(R, f: Fraction):
    return Element(R, R.from_fraction(f))


def descent_fixtures():
    """(cover, algebra) pairs used by the property tests."""
    rng = random.Random("descent-fixtures")
    return [
        (fx.integer_cover(), trivial_algebra(Z)),
        (fx.integer_cover(), fx.gaussian_tower()[0]),
        (fx.integer_cover(), fx.random_algebra(rng, Z, 2, "rebased")),
        (make_cover(Z, [2, 3, 5]), fx.random_algebra(rng, Z, 2)),
        (make_cover(Z, [6, 35]), split_algebra(Z, 3)),
        (fx.modular_cover(12), fx.random_algebra(rng, Modular(12), 2)),
        (fx.modular_cover(30), fx.random_algebra(rng, Modular(30), 3)),
        (make_cover(Modular(12), [2, 3]), split_algebra(Modular(12), 2)),
    ]


FIXTURES = descent_fixtures()


def many_data(count=24):
    rng = random.Random("descent-data")
    out = []
    for k in range(count):
        cover, alg = FIXTURES[k % len(FIXTURES)]
        out.append(fx.random_descent(rng, cover, alg))
    return out


DATA = many_data()


# -- covers


def test_cover_basics():
    c = fx.integer_cover()
    assert c.size == 2
    assert c.ring((0,)) == Localized(Z, 2)
    assert c.ring((1,)) == Localized(Z, 3)
    assert c.ring((0, 1)) == Localized(Z, 6)
    assert c.ring(()) == Z
    r = c.witnesses
    assert r[0] * 2 + r[1] * 3 == 1


def test_cover_errors():
    with pytest.raises(CoverError):
        make_cover(Z, [2, 4])
    with pytest.raises(CoverError):
        make_cover(Z, [2, 3], witnesses=[1, 1])
    with pytest.raises(CoverError):
        make_cover(Z, [2, 3, 5, 7])
    with pytest.raises(CoverError):
        make_cover(Z, [])


def test_modular_cover_pieces():
    c = fx.modular_cover(12)
    rings = {c.ring((0,)), c.ring((1,))}
    assert rings == {Modular(3), Modular(4)}
    assert c.ring((0, 1)).is_zero_ring()


# -- glue_norm examples


def test_single_piece_cover():
    rng = random.Random(0)
    alg = fx.random_algebra(rng, Z, 2, "rebased")
    cover = make_cover(Z, [1])
    for _ in range(10):
        q = fx.random_quad(rng, alg.ring)
        d = make_datum(cover, alg, [q])
        out = glue_norm(d)
        assert out.locals[0] == norm_quad(Extension(alg), q)


def test_identity_transitions_stay_identity():
    rng = random.Random(1)
    alg = fx.gaussian_tower()[0]
    cover = fx.integer_cover()
    q = fx.random_quad(rng, alg.ring)
    d, _ = datum_from_global(cover, alg, q, [(1, 0), (1, 0)])
    out = glue_norm(d)
    for (i, j), f in out.transitions.items():
        assert f == identity_hom(f.source)
    G = Extension(alg)
    for i in range(2):
        assert out.locals[i] == restrict_global(cover, None, norm_quad(G, q), (i,))


def test_rank_one_transition_passes_through():
    cover = fx.integer_cover()
    alg = trivial_algebra(Z)
    q = make_quad(alg.ring, 3, 7)
    # piece 0 uses the generator 2 x_0 + 1, piece 1 uses -x_1 / 3
    changes = [
        (alg_unit(cover, alg, 0, Fraction(2)), 1),
        (alg_unit(cover, alg, 1, Fraction(-1, 3)), 0),
    ]
    d, _ = datum_from_global(cover, alg, q, changes)
    out = glue_norm(d)
    for key, f in d.transitions.items():
        assert out.transitions[key].u.value == f.u.value[0]
    # the overlap unit is 2 / (-1/3) up to orientation
    U = d.pieces.ring((0, 1)).algebra.base.as_fraction(d.transitions[(0, 1)].u.value[0])
    assert abs(U) in (Fraction(6), Fraction(1, 6))


def alg_unit(cover, alg, i, f):
    R = datum_ring(cover, alg, (i,))
    base = R.algebra.base
    return Element(R, (base.from_fraction(f),))


def datum_ring(cover, alg, S):
    from quadnorm.descent import _Pieces

    return _Pieces(cover, alg).ring(S)


# -- line bundles


def test_line_norm_trivial():
    cover = fx.integer_cover()
    alg = split_algebra(Z, 2)
    d = make_line_datum(cover, alg, {})
    out = line_norm(d)
    assert all(u == 1 for u in out.transitions.values())


def test_line_norm_on_product():
    cover = fx.integer_cover()
    alg = split_algebra(Z, 2)
    R = datum_ring(cover, alg, (0, 1))
    L = cover.ring((0, 1))
    u, v = scalar(L, Fraction(2)), scalar(L, Fraction(-1, 3))
    d = make_line_datum(cover, alg, {(0, 1): R.algebra.element([u, v])})
    out = line_norm(d)
    assert out.transitions[(0, 1)] == u * v


def _unit_in(rng, primes):
    f = Fraction(rng.choice([1, -1]))
    for p in primes:
        f *= Fraction(p) ** rng.randint(-3, 3)
    return f


def test_line_norm_random_cocycle_rank_one():
    rng = random.Random(2)
    cover = make_cover(Z, [2, 3, 5])
    alg = trivial_algebra(Z)
    primes = [2, 3, 5]
    for _ in range(20):
        # coboundary g_i / g_j with g_i a unit on piece i
        g = [_unit_in(rng, [primes[i]]) for i in range(3)]
        trans = {}
        for i in range(3):
            for j in range(3):
                R = datum_ring(cover, alg, (i, j))
                trans[(i, j)] = Element(R, (R.algebra.base.from_fraction(g[i] / g[j]),))
        d = make_line_datum(cover, alg, trans)
        out = line_norm(d)
        for (i, j), u in out.transitions.items():
            # determinant of the 1x1 matrix [g_i / g_j]
            assert u.ring.as_fraction(u.value) == g[i] / g[j]


def test_line_cocycle_violation():
    cover = make_cover(Z, [2, 3, 5])
    alg = trivial_algebra(Z)

    def unit(S, f):
        R = datum_ring(cover, alg, S)
        return Element(R, (R.algebra.base.from_fraction(f),))

    with pytest.raises(CocycleViolation):
        make_line_datum(cover, alg, {(0, 1): unit((0, 1), Fraction(2)), (1, 2): unit((1, 2), Fraction(3))})


def test_det_bundle_examples():
    cover = fx.integer_cover()
    alg = split_algebra(Z, 2)
    R01 = datum_ring(cover, alg, (0, 1))
    locals_ = [split_quad(datum_ring(cover, alg, (i,))) for i in range(2)]
    plain = make_datum(cover, alg, locals_)
    assert all(u == 1 for u in det_bundle(plain).transitions.values())
    sw = make_datum(cover, alg, locals_, {(0, 1): swap_hom(R01)})
    L = det_bundle(sw)
    assert L.transitions[(0, 1)] == -1
    assert L.transitions[(1, 0)] == -1
    for key, f in sw.transitions.items():
        assert L.transitions[key] == f.u


def test_det_bundle_ignores_c():
    for q, d, _ in DATA[:8]:
        L = det_bundle(d)
        for key, f in d.transitions.items():
            assert L.transitions[key] == f.u


# -- discriminants


def test_disc_form_examples():
    cover = fx.integer_cover()
    alg = split_algebra(Z, 2)
    split = make_datum(cover, alg, [split_quad(datum_ring(cover, alg, (i,))) for i in range(2)])
    assert all(x == 1 for x in disc_form(split))
    dual = make_datum(cover, alg, [dual_numbers_quad(datum_ring(cover, alg, (i,))) for i in range(2)])
    assert all(x == 0 for x in disc_form(dual))


@pytest.mark.parametrize("k", range(len(DATA)))
def test_descent_laws(k):
    q, d, witnesses = DATA[k]
    out = glue_norm(d)
    out.validate()
    # determinant line bundles
    lhs = det_bundle(out).transitions
    rhs = line_norm(det_bundle(d)).transitions
    assert lhs == rhs
    # discriminants
    assert disc_compatible(d) and disc_compatible(out)
    for i, (a, b) in enumerate(zip(disc_form(out), disc_form(d))):
        assert a == norm_sn(b)
        T, N = d.locals[i].t, d.locals[i].n
        assert a == norm_sn(T * T - 4 * N)
    # well-definedness: the witnesses' norms identify the glued datum with Nm(q)
    ext = Extension(d.algebra)
    nq = norm_quad(ext, q)
    for i, w in enumerate(witnesses):
        g = norm_hom(d.pieces.extension((i,)), w)
        assert g.u.is_unit() and is_valid_hom(g)
        assert g.source == restrict_global(d.cover, None, nq, (i,))
        assert g.target == out.locals[i]


def test_etale_and_parity():
    cover = fx.integer_cover()
    for n in (1, 2, 3, 4):
        alg = split_algebra(Z, n)
        R01 = datum_ring(cover, alg, (0, 1))
        locals_ = [split_quad(datum_ring(cover, alg, (i,))) for i in range(2)]
        d = make_datum(cover, alg, locals_, {(0, 1): swap_hom(R01)})
        out = glue_norm(d)
        assert all(x.is_unit() for x in disc_form(out))
        f = out.transitions[(0, 1)]
        want = (1, 0) if n % 2 == 0 else (-1, 1)
        assert (f.u, f.c) == (f.u.ring(want[0]), f.u.ring(want[1]))


# -- refinement


def test_refinement_commutes():
    rng = random.Random(3)
    cover = fx.integer_cover()
    for alg in [fx.gaussian_tower()[0], fx.random_algebra(rng, Z, 2)]:
        for _ in range(3):
            _, d, _ = fx.random_descent(rng, cover, alg)
            for p in (0, 1):
                same_datum(glue_norm(refine_datum(d, p, 5)), refine_datum(glue_norm(d), p, 5))


def test_sub_datum_commutes():
    rng = random.Random(4)
    cover = make_cover(Z, [2, 3, 5])
    alg = fx.random_algebra(rng, Z, 2)
    for _ in range(3):
        _, d, _ = fx.random_descent(rng, cover, alg)
        for idx in ([0, 1], [0, 2], [1, 2]):
            same_datum(glue_norm(sub_datum(d, idx)), sub_datum(glue_norm(d), idx))


# -- validation errors


def test_cocycle_violation():
    cover = make_cover(Z, [2, 3, 5])
    alg = split_algebra(Z, 2)
    locals_ = [split_quad(datum_ring(cover, alg, (i,))) for i in range(3)]
    R01 = datum_ring(cover, alg, (0, 1))
    R02 = datum_ring(cover, alg, (0, 2))
    R12 = datum_ring(cover, alg, (1, 2))
    trans = {
        (0, 1): swap_hom(R01),
        (1, 2): identity_hom(split_quad(R12)),
        (0, 2): identity_hom(split_quad(R02)),
    }
    with pytest.raises(CocycleViolation):
        make_datum(cover, alg, locals_, trans)
    trans[(0, 2)] = swap_hom(R02)
    make_datum(cover, alg, locals_, trans)


def test_missing_or_mismatched_transitions():
    cover = fx.integer_cover()
    alg = trivial_algebra(Z)
    R0, R1 = datum_ring(cover, alg, (0,)), datum_ring(cover, alg, (1,))
    with pytest.raises(CocycleViolation):
        make_datum(cover, alg, [split_quad(R0), dual_numbers_quad(R1)])
    with pytest.raises(CocycleViolation):
        make_datum(cover, alg, [split_quad(R0)])
    R01 = datum_ring(cover, alg, (0, 1))
    # a valid hom, but between the wrong quadratics
    bad = make_hom(dual_numbers_quad(R01), dual_numbers_quad(R01), 2, 0)
    with pytest.raises(CocycleViolation):
        make_datum(cover, alg, [split_quad(R0), split_quad(R1)], {(0, 1): bad})


def test_glue_norm_needs_algebra():
    cover = fx.integer_cover()
    d = make_datum(cover, None, [split_quad(cover.ring((i,))) for i in range(2)])
    with pytest.raises(UnsupportedBase):
        glue_norm(d)


# -- globalize


def test_globalize_recovers_global():
    rng = random.Random(5)
    for cover, alg in [(fx.integer_cover(), fx.gaussian_tower()[0]), (fx.modular_cover(12), fx.random_algebra(rng, Modular(12), 2))]:
        for _ in range(5):
            q = fx.random_quad(rng, alg.ring)
            d, _ = datum_from_global(cover, alg, q, [(1, 0)] * cover.size)
            g, wits = globalize(d)
            assert g == q
            for w in wits:
                assert is_valid_hom(w) and w.u.is_unit()


def test_globalize_random_data():
    rng = random.Random(6)
    found = 0
    for cover, alg in FIXTURES:
        if cover.size > 2:
            continue
        for _ in range(3):
            _, d, _ = fx.random_descent(rng, cover, alg)
            try:
                g, wits = globalize(d)
            except NotGlobalizable:
                continue
            found += 1
            for i, w in enumerate(wits):
                assert w.source == restrict_global(cover, alg, g, (i,))
                assert w.target == d.locals[i] and w.u.is_unit() and is_valid_hom(w)
    assert found > 0


def test_globalize_crt():
    rng = random.Random(7)
    cover = fx.modular_cover(12)
    m = [cover.ring((i,)).modulus for i in range(2)]
    for _ in range(30):
        locals_ = [fx.random_quad(rng, cover.ring((i,))) for i in range(2)]
        d = make_datum(cover, None, locals_)
        g, wits = globalize(d)
        for i, w in enumerate(wits):
            assert w.target == locals_[i] and is_valid_hom(w)
        t = crt_pair(locals_[0].t.value, m[0], locals_[1].t.value, m[1])
        n = crt_pair(locals_[0].n.value, m[0], locals_[1].n.value, m[1])
        assert (g.t.value, g.n.value) == (t, n)


def _dual_datum(u: Fraction):
    cover = fx.integer_cover()
    R01 = cover.ring((0, 1))
    locals_ = [dual_numbers_quad(cover.ring((i,))) for i in range(2)]
    f = make_hom(dual_numbers_quad(R01), dual_numbers_quad(R01), scalar(R01, u), 0)
    return make_datum(cover, None, locals_, {(0, 1): f})


def test_globalize_bounded_search():
    # u = 2/3 splits as a unit on each piece, so a generator is found
    g, wits = globalize(_dual_datum(Fraction(2, 3)))
    assert g == dual_numbers_quad(Z)
    assert all(is_valid_hom(w) for w in wits)
    # 2^5 / 3^5 needs exponents outside the candidate family
    with pytest.raises(NotGlobalizable):
        globalize(_dual_datum(Fraction(2**5, 3**5)))


def test_globalize_unsupported():
    cover = make_cover(Z, [2, 3, 5])
    d = make_datum(cover, None, [split_quad(cover.ring((i,))) for i in range(3)])
    with pytest.raises(UnsupportedBase):
        globalize(d)
    L = Localized(Z, 6)
    c = make_cover(L, [1])
    with pytest.raises(UnsupportedBase):
        globalize(make_datum(c, None, [split_quad(c.ring((0,)))]))
