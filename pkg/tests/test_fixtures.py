import itertools
import random

import pytest

from quadnorm import fixtures as fx
from quadnorm.algebra import FreeRankNAlgebra, tower_compose
from quadnorm.descent import QuadDescentDatum
from quadnorm.errors import GenerationExhausted
from quadnorm.quadratic import QuadHom, is_valid_hom
from quadnorm.rings import Modular, Product
from quadnorm.serialize import to_jsonable, dumps


def _stream(seed, count):
    cfg = fx.VerifyConfig(seed=seed)
    return list(itertools.islice(fx.random_fixtures(cfg), count))


def test_seed_zero_is_deterministic():
    a = [dumps(to_jsonable(f)) for f in _stream(0, 40)]
    b = [dumps(to_jsonable(f)) for f in _stream(0, 40)]
    assert a == b
    c = [dumps(to_jsonable(f)) for f in _stream(1, 40)]
    assert a != c


def test_stream_contract():
    kinds = set()
    for f in _stream(0, 150):
        kinds.add(f["kind"])
        v = f["value"]
        if f["kind"] == "algebra":
            assert isinstance(v, FreeRankNAlgebra)
            v.validate()
        elif f["kind"] == "hom":
            assert isinstance(v, QuadHom) and is_valid_hom(v)
        elif f["kind"] == "tower":
            B, C = v
            tower_compose(B, C).validate()
        elif f["kind"] == "descent":
            assert isinstance(v, QuadDescentDatum)
            v.validate()
    assert kinds == {"algebra", "quad", "hom", "tower", "descent"}


def test_family_covers_required_bases():
    fam = fx.default_family()
    mods = {R.modulus for R in fam if isinstance(R, Modular)}
    assert {2, 3, 4, 5, 6, 7, 8, 9, 12} <= mods
    assert any(isinstance(R, Product) for R in fam)


@pytest.mark.parametrize("kind", ["split", "monogenic", "product", "rebased"])
def test_random_algebra_kinds(kind):
    rng = random.Random(kind)
    for R in fx.default_family():
        for rank in (1, 2, 3, 4):
            fx.random_algebra(rng, R, rank, kind).validate()


def test_random_homs_valid():
    rng = random.Random(2)
    for R in fx.default_family():
        for _ in range(30):
            assert is_valid_hom(fx.random_hom(rng, R))
            f = fx.random_hom(rng, R, iso=True)
            assert is_valid_hom(f) and f.u.is_unit()


def test_config_rejects_zero_cases():
    with pytest.raises(ValueError):
        fx.VerifyConfig(seed=0, cases_per_law=0)


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        fx.random_algebra(random.Random(0), Modular(5), 2, "no-such-kind")


def test_rejection_cap(monkeypatch):
    from quadnorm.algebra import FreeRankNAlgebra as Alg
    from quadnorm.errors import InvalidAlgebra

    def always_bad(self):
        raise InvalidAlgebra("forced")

    monkeypatch.setattr(Alg, "validate", always_bad)
    with pytest.raises(GenerationExhausted):
        fx.random_algebra(random.Random(0), Modular(5), 2, "monogenic")
