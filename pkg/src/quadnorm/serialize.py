"""JSON encodings shared by the CLI and the verification reports.

Numbers are written as decimal strings; readers accept strings or ints.
"""
from __future__ import annotations

import json

from .algebra import FreeRankNAlgebra, algebra_from_json
from .descent import LineDescentDatum, QuadDescentDatum, _Pieces, make_cover, make_datum
from .errors import ParseError
from .norm import Extension
from .linalg import Matrix
from .quadratic import BasedQuadratic, QuadHom, hom_from_target, make_hom, push_quad
from .rings import Element, Ring, RingHom, parse_int, ring_from_json


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _unwrap(obj, key):
    if isinstance(obj, dict) and key in obj and len(obj) == 1:
        return obj[key]
    return obj


def _field(obj, key):
    try:
        return obj[key]
    except (KeyError, TypeError):
        raise ParseError(f"missing field {key!r}") from None


def element_to_json(x: Element):
    return x.ring.element_to_json(x.value)


def element_from_json(ring: Ring, obj) -> Element:
    try:
        return Element(ring, ring.element_from_json(obj))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad element {obj!r} for {ring}: {exc}") from None


# -- algebras


def algebra_to_json(alg: FreeRankNAlgebra):
    return {"algebra": alg.to_json()}


def extension_from_json(obj) -> Extension:
    obj = _unwrap(obj, "extension")
    return Extension(algebra_from_json(_unwrap(obj, "algebra")))


# -- quadratics


def quad_to_json(q: BasedQuadratic, with_base: bool = True):
    out = {"t": element_to_json(q.t), "n": element_to_json(q.n)}
    if with_base:
        out["base"] = q.base.to_json()
    return out


def quad_from_json(obj, base: Ring | None = None) -> BasedQuadratic:
    obj = _unwrap(obj, "quad")
    if isinstance(obj, dict) and "base" in obj:
        b = ring_from_json(obj["base"])
        if base is not None and b != base:
            raise ParseError(f"quadratic declares base {b}, expected {base}")
        base = b
    if base is None:
        raise ParseError("quadratic has no base ring")
    return BasedQuadratic(base, element_from_json(base, _field(obj, "t")), element_from_json(base, _field(obj, "n")))


def hom_to_json(h: QuadHom, with_base: bool = True):
    return {
        "source": quad_to_json(h.source, with_base),
        "target": quad_to_json(h.target, with_base),
        "u": element_to_json(h.u),
        "c": element_to_json(h.c),
    }


def hom_from_json(obj, base: Ring | None = None) -> QuadHom:
    """A hom needs ``target``, ``u`` and ``c``; a given ``source`` is checked."""
    obj = _unwrap(obj, "hom")
    target = quad_from_json(_field(obj, "target"), base)
    base = target.base
    u = element_from_json(base, _field(obj, "u"))
    c = element_from_json(base, _field(obj, "c"))
    if "source" in obj:
        return make_hom(quad_from_json(obj["source"], base), target, u, c)
    return hom_from_target(target, u, c)


# -- descent


def descent_to_json(d: QuadDescentDatum):
    cov = d.cover
    out = cov.to_json()
    if d.algebra is not None:
        out["algebra"] = d.algebra.to_json()
    out["locals"] = [quad_to_json(q, with_base=False) for q in d.locals]
    out["transitions"] = [
        {"i": str(i), "j": str(j), "u": element_to_json(f.u), "c": element_to_json(f.c)}
        for (i, j), f in sorted(d.transitions.items())
    ]
    return {"descent": out}


def line_to_json(d: LineDescentDatum):
    out = d.cover.to_json()
    out["transitions"] = [
        {"i": str(i), "j": str(j), "u": element_to_json(u)} for (i, j), u in sorted(d.transitions.items())
    ]
    return {"line": out}


def descent_from_json(obj) -> QuadDescentDatum:
    obj = _unwrap(obj, "descent")
    base = ring_from_json(_field(obj, "base"))
    cover_els = [base.element_from_json(a) for a in _field(obj, "cover")]
    wit = obj.get("witnesses")
    witnesses = None if wit is None else [Element(base, base.element_from_json(r)) for r in wit]
    cover = make_cover(base, [Element(base, a) for a in cover_els], witnesses)
    algebra = algebra_from_json(obj["algebra"]) if "algebra" in obj else None
    pieces = _Pieces(cover, algebra)
    locals_ = [quad_from_json(q, pieces.ring((i,))) for i, q in enumerate(_field(obj, "locals"))]
    if len(locals_) != cover.size:
        raise ParseError(f"{len(locals_)} locals for a cover with {cover.size} pieces")
    trans = {}
    for tr in obj.get("transitions", []):
        i, j = parse_int(_field(tr, "i")), parse_int(_field(tr, "j"))
        if not (0 <= i < cover.size and 0 <= j < cover.size):
            raise ParseError(f"transition index out of range: ({i}, {j})")
        R = pieces.ring((i, j))
        src = pieces.restriction((i,), (i, j))
        dst = pieces.restriction((j,), (i, j))
        trans[(i, j)] = make_hom(
            push_quad(locals_[i], src),
            push_quad(locals_[j], dst),
            element_from_json(R, _field(tr, "u")),
            element_from_json(R, _field(tr, "c")),
        )
    return make_datum(cover, algebra, locals_, trans)


def to_jsonable(obj):
    """Best-effort JSON view of library objects, used for counterexamples."""
    if isinstance(obj, Element):
        return {"ring": obj.ring.to_json(), "value": element_to_json(obj)}
    if isinstance(obj, BasedQuadratic):
        return quad_to_json(obj)
    if isinstance(obj, QuadHom):
        return hom_to_json(obj)
    if isinstance(obj, FreeRankNAlgebra):
        return algebra_to_json(obj)
    if isinstance(obj, Ring):
        return obj.to_json()
    if isinstance(obj, Matrix):
        return {"ring": obj.ring.to_json(), "entries": obj.to_json()}
    if isinstance(obj, QuadDescentDatum):
        return descent_to_json(obj)
    if isinstance(obj, RingHom):
        return {"source": obj.source.to_json(), "target": obj.target.to_json(), "name": obj.name}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    return str(obj)
