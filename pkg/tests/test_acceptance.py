"""Acceptance criteria 1-9, each at its stated tolerance and time limit.

Every criterion prints one ``PASS``/``FAIL`` line (shown even under capture).
Run standalone with ``python3 tests/test_acceptance.py`` for just the lines.
"""
import itertools
import math
import random
import time

import pytest

from oracles import laplace_det
from quadnorm import fixtures as fx
from quadnorm.algebra import (
    norm_polynomial,
    norm_sn,
    polarized,
    split_algebra,
)
from quadnorm.descent import (
    det_bundle,
    disc_compatible,
    disc_form,
    glue_norm,
    line_norm,
    make_cover,
)
from quadnorm.linalg import Matrix, det
from quadnorm.norm import STATS, Extension, norm_hom, norm_quad, norm_tower_check, norm_tower_check_hom
from quadnorm.quadratic import (
    are_isomorphic,
    compose,
    discriminant,
    make_quad,
    split_quad,
    star,
    swap_hom,
)
from quadnorm.rings import Integers, Modular, specialize

Z = Integers()


class Criterion:
    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.start = None

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        secs = time.perf_counter() - self.start
        ok = exc_type is None and (self.limit is None or secs < self.limit)
        limit = "" if self.limit is None else f" (limit {self.limit:g}s)"
        line = f"{'PASS' if ok else 'FAIL'} criterion {self.number}: {self.title} [{secs:.2f}s{limit}]"
        _emit(line)
        if exc_type is None and not ok:
            raise AssertionError(f"criterion {self.number} took {secs:.2f}s, over {self.limit}s")
        return False


_CAPSYS = None


def _emit(line):
    if _CAPSYS is not None:
        with _CAPSYS.disabled():
            print("\n" + line, flush=True)
    else:
        print(line, flush=True)


@pytest.fixture(autouse=True)
def _show(capsys):
    global _CAPSYS
    _CAPSYS = capsys
    yield
    _CAPSYS = None


# ---------------------------------------------------------------------------


def test_criterion_1_norm_of_product():
    with Criterion(1, "norm over A x A equals star, Z/m for m = 2..13, 500 cases each", 5):
        rng = random.Random("acc1")
        for m in range(2, 14):
            F = Modular(m)
            ext = Extension(split_algebra(F, 2))
            el = ext.algebra.element
            for _ in range(500):
                S, M, T, N = (rng.randrange(m) for _ in range(4))
                out = norm_quad(ext, make_quad(ext.ring, el([S, T]), el([M, N])))
                assert out == star(make_quad(F, S, M), make_quad(F, T, N))


def _rank_fixtures(rng, ranks):
    fam = fx.default_family()
    out = []
    for n in ranks:
        for R in fam:
            out.append(Extension(fx.random_algebra(rng, R, n)))
    out.append(Extension(fx.gaussian_tower()[0]))
    return out


def test_criterion_2_sqrt_example():
    with Criterion(2, "norm <0,-D> = <0,-4^(n-1) s_n(D)>, ranks 1-3, 200 D each", 5):
        rng = random.Random("acc2")
        exts = _rank_fixtures(rng, (1, 2, 3))
        for n in (1, 2, 3):
            pool = [e for e in exts if e.rank == n]
            for _ in range(200):
                ext = rng.choice(pool)
                D = fx.random_element(rng, ext.algebra)
                out = norm_quad(ext, make_quad(ext.ring, 0, -D))
                assert out == make_quad(ext.base, 0, -(4 ** (n - 1)) * norm_sn(D))


def test_criterion_3_swap_parity():
    with Criterion(3, "norm of the swap over A^n: (1,0) for n even, (-1,1) for n odd", 1):
        for F in (Modular(5), Modular(12), Z):
            for n in (1, 2, 3, 4):
                ext = Extension(split_algebra(F, n))
                out = norm_hom(ext, swap_hom(ext.ring))
                want = (F(1), F(0)) if n % 2 == 0 else (F(-1), F(1))
                assert (out.u, out.c) == want
                assert out.source == out.target == split_quad(F)


def test_criterion_4_discriminant_identity():
    with Criterion(4, "t^2 - 4m = s_n(T^2 - 4N), 500 fixtures, ranks 1-4", 10):
        rng = random.Random("acc4")
        exts = _rank_fixtures(rng, (1, 2, 3, 4))
        ranks = set()
        for _ in range(500):
            ext = rng.choice(exts)
            ranks.add(ext.rank)
            q = fx.random_quad(rng, ext.ring)
            out = norm_quad(ext, q)
            assert discriminant(out) == norm_sn(q.t * q.t - 4 * q.n)
        assert ranks == {1, 2, 3, 4}


def test_criterion_5_functoriality_and_transitivity():
    with Criterion(5, "norm_hom respects 200 chains; 100 towers transitive incl. Z -> Z[i] -> Z[i][y]/(y^2-i)", 30):
        rng = random.Random("acc5")
        exts = _rank_fixtures(rng, (1, 2, 3))
        for _ in range(200):
            ext = rng.choice(exts)
            f, g = fx.random_chain(rng, ext.ring)
            assert norm_hom(ext, compose(g, f)) == compose(norm_hom(ext, g), norm_hom(ext, f))
        gauss = fx.gaussian_tower()
        bases = [Modular(4), Modular(5), Modular(6), Modular(9), Z]
        for k in range(100):
            B, C = gauss if k % 5 == 0 else fx.random_tower(rng, rng.choice(bases))
            q = fx.random_quad(rng, C.ring)
            direct, stepwise = norm_tower_check(B, C, q)
            assert direct == stepwise
            hd, hs = norm_tower_check_hom(B, C, fx.random_hom(rng, C.ring))
            assert hd == hs


def test_criterion_6_monoid_up_to_isomorphism():
    with Criterion(6, "norm(q * q') isomorphic to norm(q) * norm(q'), 200 pairs", 60):
        rng = random.Random("acc6")
        exts = [e for e in _rank_fixtures(rng, (1, 2, 3, 4)) if e.base.is_finite]
        equal = 0
        for _ in range(200):
            ext = rng.choice(exts)
            p, q = fx.random_quad(rng, ext.ring), fx.random_quad(rng, ext.ring)
            lhs = norm_quad(ext, star(p, q))
            rhs = star(norm_quad(ext, p), norm_quad(ext, q))
            assert are_isomorphic(lhs, rhs)
            equal += lhs == rhs
        _emit(f"     (exact equality of representatives in {equal}/200 pairs)")


def _compositions(n, m):
    if m == 1:
        yield (n,)
        return
    for k in range(n + 1):
        for rest in _compositions(n - k, m - 1):
            yield (k,) + rest


def test_criterion_7_polarized_identities():
    with Criterion(7, "five polarized identities x 100 cases per family, exhaustive check over Z/2, Z/3", 30):
        rng = random.Random("acc7")
        for R in fx.default_family():
            algs = [fx.random_algebra(rng, R, n) for n in (2, 3, 4)]
            for _ in range(100):
                alg = rng.choice(algs)
                n = alg.rank
                m = rng.randint(2, 3)
                xs = [fx.random_element(rng, alg) for _ in range(m)]
                ks = rng.choice(list(_compositions(n, m)))
                val = polarized(list(zip(ks, xs)))
                # 1. reordering
                perm = list(range(m))
                rng.shuffle(perm)
                assert polarized([(ks[p], xs[p]) for p in perm]) == val
                # 2. combining equal arguments
                ys = list(xs)
                ys[1] = xs[0]
                merged = [(ks[0] + ks[1], xs[0])] + list(zip(ks[2:], ys[2:]))
                assert polarized(list(zip(ks, ys))) == R(math.comb(ks[0] + ks[1], ks[0])) * polarized(merged)
                # 3. homogeneity
                a = fx.random_scalar(rng, R)
                scaled = [(ks[0], alg.scalar(a) * xs[0])] + list(zip(ks[1:], xs[1:]))
                assert polarized(scaled) == a ** ks[0] * val
                # 4. zero exponents drop out
                assert polarized([(0, fx.random_element(rng, alg))] + list(zip(ks, xs))) == val
                # 5. multiplicativity
                b = fx.random_element(rng, alg)
                assert polarized([(k, b * x) for k, x in zip(ks, xs)]) == norm_sn(b) * val
        for q in (2, 3):
            F = Modular(q)
            for n in (2, 3):
                alg = fx.random_algebra(rng, F, n)
                xs = [fx.random_element(rng, alg) for _ in range(2)]
                poly = norm_polynomial(xs)
                names = poly.ring.variables
                for lam in itertools.product(range(q), repeat=2):
                    total = F(0)
                    for k in _compositions(n, 2):
                        total = total + polarized(list(zip(k, xs))) * F(lam[0]) ** k[0] * F(lam[1]) ** k[1]
                    combo = alg.scalar(F(lam[0])) * xs[0] + alg.scalar(F(lam[1])) * xs[1]
                    assert total == norm_sn(combo)
                    assert specialize(poly, dict(zip(names, map(F, lam)))) == total


def test_criterion_8_descent_suite():
    with Criterion(8, "glued norm is a descent datum; det and disc compatibility", 10):
        rng = random.Random("acc8")
        fixtures = [
            (fx.integer_cover(), fx.gaussian_tower()[0]),
            (fx.integer_cover(), fx.random_algebra(rng, Z, 2, "rebased")),
            (make_cover(Z, [2, 3, 5]), fx.random_algebra(rng, Z, 2)),
            (make_cover(Z, [6, 35]), split_algebra(Z, 3)),
            (fx.modular_cover(12), fx.random_algebra(rng, Modular(12), 2)),
            (fx.modular_cover(30), fx.random_algebra(rng, Modular(30), 3)),
        ]
        for cover, alg in fixtures:
            for _ in range(5):
                _, d, _ = fx.random_descent(rng, cover, alg)
                out = glue_norm(d).validate()
                assert det_bundle(out).transitions == line_norm(det_bundle(d)).transitions
                assert disc_compatible(out)
                for a, b in zip(disc_form(out), disc_form(d)):
                    assert a == norm_sn(b)


def test_criterion_9_oracle_equivalence():
    with Criterion(9, "closed sum equals lambda-fraction on every call; det equals Laplace on n <= 4", None):
        checked = STATS["norm_quad_checked"] + STATS["norm_hom_checked"]
        assert checked > 0, "no cross-checked norm computations ran"
        assert STATS["norm_quad_mismatch"] == 0 and STATS["norm_hom_mismatch"] == 0
        rng = random.Random("acc9")
        for R in [Modular(m) for m in (2, 3, 4, 5, 6, 9, 12)] + [Z]:
            for n in (1, 2, 3, 4):
                for _ in range(50):
                    rows = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)]
                    M = Matrix.from_rows(R, rows)
                    want = laplace_det(rows, R.modulus if isinstance(R, Modular) else None)
                    assert det(M) == R(want)
        _emit(f"     ({checked} cross-checked norm computations, 0 mismatches)")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
