"""Quadratic algebras and line bundles given by gluing data on a cover.

A cover of ``A`` is a list ``a_1..a_k`` generating the unit ideal.  For a
set ``S`` of piece indices, ``cover.ring(S)`` is ``A`` with every ``a_s``
(``s in S``) inverted; restriction maps between these rings come from
``rings.localize``.  A descent datum carries one based quadratic per piece
and a transition ``local_i -> local_j`` on each overlap; transitions must
satisfy ``T_ik = T_jk . T_ij`` on triple overlaps.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .algebra import FreeRankNAlgebra, base_change, extend_hom, norm_sn
from .errors import (
    CocycleViolation,
    CoverError,
    InternalContradiction,
    NotGlobalizable,
    UnsupportedBase,
)
from .norm import Extension, norm_hom, norm_quad
from .quadratic import (
    BasedQuadratic,
    QuadHom,
    compose,
    discriminant,
    hom_from_target,
    identity_hom,
    inverse_hom,
    is_valid_hom,
    push_hom,
    push_quad,
)
from .rings import (
    Element,
    Integers,
    Localized,
    Modular,
    Product,
    Ring,
    RingHom,
    identity_hom as ring_identity,
    localize,
    prime_factors,
)

MAX_INTEGER_COVER = 3


def _ext_gcd(a: int, b: int):
    """``(g, x, y)`` with ``a x + b y = g >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def integer_witnesses(values: Sequence[int]) -> list[int] | None:
    """Integers ``r_i`` with ``sum r_i v_i = 1``, or ``None`` if the gcd is not 1."""
    g, coeffs = 0, []
    for v in values:
        g2, x, y = _ext_gcd(g, v)
        coeffs = [c * x for c in coeffs] + [y]
        g = g2
    return coeffs if g == 1 else None


def find_witnesses(base: Ring, elements: Sequence) -> list | None:
    """Payloads ``r_i`` with ``sum r_i a_i = 1`` when an easy certificate exists."""
    for i, a in enumerate(elements):
        if base.is_unit(a):
            inv = base.inverse(a)
            return [inv if k == i else base.zero for k in range(len(elements))]
    if isinstance(base, Integers):
        return integer_witnesses(list(elements))
    if isinstance(base, Modular):
        r = integer_witnesses(list(elements) + [base.modulus])
        return None if r is None else [x % base.modulus for x in r[:-1]]
    if isinstance(base, Product):
        per = [find_witnesses(f, [a[k] for a in elements]) for k, f in enumerate(base.factors)]
        if any(p is None for p in per):
            return None
        return [tuple(p[i] for p in per) for i in range(len(elements))]
    return None


# ---------------------------------------------------------------------------
# covers


@dataclass(frozen=True)
class Cover:
    base: Ring
    elements: tuple  # payloads
    witnesses: tuple  # payloads, sum r_i a_i = 1
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        B = self.base
        if not self.elements:
            raise CoverError("a cover needs at least one element")
        if len(self.witnesses) != len(self.elements):
            raise CoverError("one witness per cover element is required")
        total = B.zero
        for r, a in zip(self.witnesses, self.elements):
            total = B.add(total, B.mul(r, a))
        if total != B.one:
            raise CoverError(f"witnesses give {B.format(total)}, not 1")
        for k in range(len(self.elements)):
            self.ring((k,))  # every piece must be localizable

    @property
    def size(self):
        return len(self.elements)

    def element(self, i) -> Element:
        return Element(self.base, self.elements[i])

    def _localize_at(self, S):
        S = tuple(sorted(set(S)))
        if S in self._cache:
            return self._cache[S]
        if not S:
            out = (self.base, ring_identity(self.base))
        else:
            ring, hom = self._localize_at(S[:-1])
            ring2, h2 = localize(ring, hom.fn(self.elements[S[-1]]))
            out = (ring2, hom.then(h2))
        self._cache[S] = out
        return out

    def ring(self, S) -> Ring:
        """``A`` with ``a_s`` inverted for every ``s`` in ``S``."""
        return self._localize_at(S)[0]

    def from_base(self, S) -> RingHom:
        return self._localize_at(S)[1]

    def restriction(self, S, T) -> RingHom:
        """The canonical map ``ring(S) -> ring(T)`` for ``S`` a subset of ``T``."""
        S = tuple(sorted(set(S)))
        T = tuple(sorted(set(T)))
        key = ("res", S, T)
        if key in self._cache:
            return self._cache[key]
        if not set(S) <= set(T):
            raise CoverError(f"{S} is not contained in {T}")
        ring, hom = self.ring(S), ring_identity(self.ring(S))
        base_map = self.from_base(S)
        for t in T:
            if t in S:
                continue
            ring, h = localize(ring, hom.fn(base_map.fn(self.elements[t])))
            hom = hom.then(h)
        if ring != self.ring(T):
            raise CoverError(f"localizing in two orders gave {ring} and {self.ring(T)}")
        self._cache[key] = hom
        return hom

    def pairs(self):
        return [(i, j) for i in range(self.size) for j in range(self.size)]

    def triples(self):
        return list(itertools.permutations(range(self.size), 3))

    def sub_cover(self, indices: Sequence[int]) -> "Cover":
        elements = [self.elements[i] for i in indices]
        return make_cover(self.base, elements)

    def to_json(self):
        B = self.base
        return {
            "base": B.to_json(),
            "cover": [B.element_to_json(a) for a in self.elements],
            "witnesses": [B.element_to_json(r) for r in self.witnesses],
        }


def make_cover(base: Ring, elements: Sequence, witnesses: Sequence | None = None) -> Cover:
    els = tuple(base(a).value for a in elements)
    if isinstance(base, Integers) and len(els) > MAX_INTEGER_COVER:
        raise CoverError(f"covers of Z are limited to {MAX_INTEGER_COVER} elements")
    if witnesses is None:
        w = find_witnesses(base, els)
        if w is None:
            raise CoverError("the cover elements do not generate the unit ideal")
    else:
        w = [base(r).value for r in witnesses]
    return Cover(base, els, tuple(w))


# ---------------------------------------------------------------------------
# data


class _Pieces:
    """Rings of a datum: the cover's localizations, or the algebra over them."""

    def __init__(self, cover: Cover, algebra: FreeRankNAlgebra | None):
        self.cover = cover
        self.algebra = algebra
        self._alg = {}

    def extension(self, S) -> Extension:
        S = tuple(sorted(set(S)))
        if S not in self._alg:
            self._alg[S] = Extension(base_change(self.algebra, self.cover.from_base(S)))
        return self._alg[S]

    def ring(self, S) -> Ring:
        if self.algebra is None:
            return self.cover.ring(S)
        return self.extension(S).ring

    def restriction(self, S, T) -> RingHom:
        r = self.cover.restriction(S, T)
        if self.algebra is None:
            return r
        return extend_hom(self.extension(S).algebra, r)[1]


def _pair_key(i, j):
    return (i, j) if i <= j else (j, i)


@dataclass(frozen=True, eq=False)
class QuadDescentDatum:
    cover: Cover
    algebra: FreeRankNAlgebra | None  # None: locals live over the cover's rings
    locals: tuple  # BasedQuadratic per piece
    transitions: dict  # (i, j) -> QuadHom local_i -> local_j over ring({i, j})

    @cached_property
    def pieces(self) -> _Pieces:
        return _Pieces(self.cover, self.algebra)

    def ring(self, S):
        return self.pieces.ring(S)

    def restrict_local(self, i, S) -> BasedQuadratic:
        return push_quad(self.locals[i], self.pieces.restriction((i,), S))

    def transition(self, i, j) -> QuadHom:
        return self.transitions[(i, j)]

    def validate(self) -> "QuadDescentDatum":
        k = self.cover.size
        if len(self.locals) != k:
            raise CocycleViolation(f"{len(self.locals)} locals for {k} pieces")
        for i in range(k):
            if self.locals[i].base != self.ring((i,)):
                raise CocycleViolation(f"local {i} lives over {self.locals[i].base}, not {self.ring((i,))}")
        for (i, j) in self.cover.pairs():
            f = self.transitions.get((i, j))
            if f is None:
                raise CocycleViolation(f"missing transition ({i}, {j})")
            S = (i, j)
            if f.source != self.restrict_local(i, S) or f.target != self.restrict_local(j, S):
                raise CocycleViolation(f"transition ({i}, {j}) does not connect the restricted locals")
            if not is_valid_hom(f):
                raise CocycleViolation(f"transition ({i}, {j}) is not norm-preserving")
            if not f.u.is_unit():
                raise CocycleViolation(f"transition ({i}, {j}) is not an isomorphism")
            if i == j and f != identity_hom(f.source):
                raise CocycleViolation(f"transition ({i}, {i}) is not the identity")
        for (i, j) in self.cover.pairs():
            if i < j:
                back = compose(self.transitions[(j, i)], self.transitions[(i, j)])
                if back != identity_hom(back.source):
                    raise CocycleViolation(f"transitions ({i}, {j}) and ({j}, {i}) are not inverse")
        for (i, j, l) in self.cover.triples():
            S = (i, j, l)
            f_ij = push_hom(self.transitions[(i, j)], self.pieces.restriction((i, j), S))
            f_jl = push_hom(self.transitions[(j, l)], self.pieces.restriction((j, l), S))
            f_il = push_hom(self.transitions[(i, l)], self.pieces.restriction((i, l), S))
            if compose(f_jl, f_ij) != f_il:
                raise CocycleViolation(f"cocycle condition fails on ({i}, {j}, {l})")
        return self


def make_datum(cover: Cover, algebra, locals_, transitions: dict | None = None,
               validate: bool = True) -> QuadDescentDatum:
    """Fill in identities on the diagonal and inverses of the given pairs."""
    trans = dict(transitions or {})
    pieces = _Pieces(cover, algebra)
    k = cover.size
    if len(locals_) != k:
        raise CocycleViolation(f"{len(locals_)} locals for {k} pieces")
    for i in range(k):
        if (i, i) not in trans:
            trans[(i, i)] = identity_hom(locals_[i])
    for (i, j) in list(trans):
        if (j, i) not in trans:
            trans[(j, i)] = inverse_hom(trans[(i, j)])
    for (i, j) in cover.pairs():
        if (i, j) not in trans:
            # no data given: only allowed when the locals already agree
            src = push_quad(locals_[i], pieces.restriction((i,), (i, j)))
            tgt = push_quad(locals_[j], pieces.restriction((j,), (i, j)))
            if src != tgt:
                raise CocycleViolation(f"no transition given for ({i}, {j})")
            trans[(i, j)] = identity_hom(src)
    d = QuadDescentDatum(cover, algebra, tuple(locals_), trans)
    return d.validate() if validate else d


@dataclass(frozen=True, eq=False)
class LineDescentDatum:
    cover: Cover
    algebra: FreeRankNAlgebra | None
    transitions: dict  # (i, j) -> unit of ring({i, j})

    @cached_property
    def pieces(self) -> _Pieces:
        return _Pieces(self.cover, self.algebra)

    def validate(self) -> "LineDescentDatum":
        P = self.pieces
        for (i, j) in self.cover.pairs():
            u = self.transitions.get((i, j))
            if u is None:
                raise CocycleViolation(f"missing transition ({i}, {j})")
            if u.ring != P.ring((i, j)):
                raise CocycleViolation(f"transition ({i}, {j}) lies in {u.ring}")
            if not u.is_unit():
                raise CocycleViolation(f"transition ({i}, {j}) is not a unit")
            if i == j and u != 1:
                raise CocycleViolation(f"transition ({i}, {i}) is not 1")
            if i < j and u * self.transitions[(j, i)] != 1:
                raise CocycleViolation(f"transitions ({i}, {j}) and ({j}, {i}) are not inverse")
        for (i, j, l) in self.cover.triples():
            S = (i, j, l)
            u_ij = P.restriction((i, j), S)(self.transitions[(i, j)])
            u_jl = P.restriction((j, l), S)(self.transitions[(j, l)])
            u_il = P.restriction((i, l), S)(self.transitions[(i, l)])
            if u_il * (u_ij * u_jl).inverse() != 1:
                raise CocycleViolation(f"unit cocycle fails on ({i}, {j}, {l})")
        return self


def make_line_datum(cover: Cover, algebra, transitions: dict, validate: bool = True) -> LineDescentDatum:
    P = _Pieces(cover, algebra)
    trans = dict(transitions)
    for i in range(cover.size):
        trans.setdefault((i, i), P.ring((i,)).one_element())
    for (i, j) in list(trans):
        if (j, i) not in trans:
            trans[(j, i)] = trans[(i, j)].inverse()
    for (i, j) in cover.pairs():
        trans.setdefault((i, j), P.ring((i, j)).one_element())
    d = LineDescentDatum(cover, algebra, trans)
    return d.validate() if validate else d


# ---------------------------------------------------------------------------
# norms


def glue_norm(d: QuadDescentDatum) -> QuadDescentDatum:
    """Take the norm piece by piece and glue with the norms of the transitions."""
    if d.algebra is None:
        raise UnsupportedBase("glue_norm needs a datum over an extension algebra")
    P = d.pieces
    locals_ = tuple(norm_quad(P.extension((i,)), q) for i, q in enumerate(d.locals))
    trans = {(i, j): norm_hom(P.extension((i, j)), f) for (i, j), f in d.transitions.items()}
    out = QuadDescentDatum(d.cover, None, locals_, trans)
    try:
        return out.validate()
    except CocycleViolation as exc:
        raise InternalContradiction(f"glued norm is not a descent datum: {exc}") from None


def line_norm(d: LineDescentDatum) -> LineDescentDatum:
    if d.algebra is None:
        raise UnsupportedBase("line_norm needs a datum over an extension algebra")
    trans = {k: norm_sn(u) for k, u in d.transitions.items()}
    return LineDescentDatum(d.cover, None, trans).validate()


def det_bundle(d: QuadDescentDatum) -> LineDescentDatum:
    """Transitions of the top exterior power: ``1 ^ x_i -> U_ij (1 ^ x_j)``."""
    return LineDescentDatum(d.cover, d.algebra, {k: f.u for k, f in d.transitions.items()})


def disc_form(d: QuadDescentDatum) -> list[Element]:
    return [discriminant(q) for q in d.locals]


def disc_compatible(d: QuadDescentDatum) -> bool:
    """On each overlap ``disc_i = U_ij^2 disc_j``."""
    discs = disc_form(d)
    P = d.pieces
    for (i, j), f in d.transitions.items():
        S = (i, j)
        di = P.restriction((i,), S)(discs[i])
        dj = P.restriction((j,), S)(discs[j])
        if di != f.u * f.u * dj:
            return False
    return True


# ---------------------------------------------------------------------------
# constructing and reshaping data


def restrict_global(cover: Cover, algebra, q: BasedQuadratic, S) -> BasedQuadratic:
    return push_quad(q, _Pieces(cover, algebra).restriction((), S))


def datum_from_global(cover: Cover, algebra, q: BasedQuadratic, changes: Sequence):
    """Datum obtained from a global ``q`` by choosing local generators.

    ``changes[i] = (u_i, c_i)`` over piece ``i`` means the global generator
    is ``u_i x_i + c_i``.  Returns ``(datum, witnesses)`` where ``witnesses[i]``
    is the hom from ``q`` restricted to piece ``i`` onto ``local_i``.
    """
    P = _Pieces(cover, algebra)
    if q.base != P.ring(()):
        raise CocycleViolation(f"global quadratic lives over {q.base}, not {P.ring(())}")
    witnesses = []
    locals_ = []
    for i, (u, c) in enumerate(changes):
        qi = push_quad(q, P.restriction((), (i,)))
        R = qi.base
        u = u if isinstance(u, Element) else R(u)
        c = c if isinstance(c, Element) else R(c)
        back = hom_from_target(qi, u.inverse(), -(u.inverse() * c))  # local_i -> q_i
        locals_.append(back.source)
        witnesses.append(inverse_hom(back))
    trans = {}
    for i, j in cover.pairs():
        S = (i, j)
        gi = push_hom(witnesses[i], P.restriction((i,), S))
        gj = push_hom(witnesses[j], P.restriction((j,), S))
        trans[(i, j)] = compose(gj, inverse_hom(gi))
    return QuadDescentDatum(cover, algebra, tuple(locals_), trans).validate(), witnesses


def sub_datum(d: QuadDescentDatum, indices: Sequence[int]) -> QuadDescentDatum:
    """Keep only the listed pieces (they must still cover)."""
    idx = list(indices)
    cover = d.cover.sub_cover(idx)
    pos = {old: new for new, old in enumerate(idx)}
    trans = {(pos[i], pos[j]): f for (i, j), f in d.transitions.items() if i in pos and j in pos}
    return QuadDescentDatum(cover, d.algebra, tuple(d.locals[i] for i in idx), trans).validate()


def refine_datum(d: QuadDescentDatum, parent_index: int, b) -> QuadDescentDatum:
    """Add the piece ``a_p * b`` carrying the restriction of piece ``p``."""
    cover = d.cover
    B = cover.base
    b = B(b).value if not isinstance(b, Element) else b.value
    new_el = B.mul(cover.elements[parent_index], b)
    wit = list(cover.witnesses) + [B.zero]
    new_cover = Cover(B, cover.elements + (new_el,), tuple(wit))
    k = cover.size
    P_old = d.pieces
    p = parent_index

    def move(x, S_old, S_new, hom_kind):
        # S_new's ring is a localization of S_old's ring via the old cover maps
        r = _relocalize(cover, new_cover, S_old, S_new)
        h = r if d.algebra is None else extend_hom(P_old.extension(S_old).algebra, r)[1]
        return hom_kind(x, h)

    locals_ = list(d.locals) + [move(d.locals[p], (p,), (k,), push_quad)]
    trans = dict(d.transitions)
    for j in range(k):
        trans[(k, j)] = move(d.transitions[(p, j)], (p, j), (k, j), push_hom)
        trans[(j, k)] = move(d.transitions[(j, p)], (j, p), (j, k), push_hom)
    trans[(k, k)] = identity_hom(locals_[k])
    return QuadDescentDatum(new_cover, d.algebra, tuple(locals_), trans).validate()


def _relocalize(old: Cover, new: Cover, S_old, S_new) -> RingHom:
    """Map ``old.ring(S_old) -> new.ring(S_new)`` by inverting the new elements."""
    ring = old.ring(S_old)
    base_map = old.from_base(S_old)
    hom = ring_identity(ring)
    for t in S_new:
        ring, h = localize(ring, hom.fn(base_map.fn(new.elements[t])))
        hom = hom.then(h)
    target = new.ring(S_new)
    if ring != target:
        raise CoverError(f"refinement produced {ring}, expected {target}")
    return hom


# ---------------------------------------------------------------------------
# globalization


def _scalar_ring(R: Ring) -> Ring:
    return R.algebra.base if hasattr(R, "algebra") else R


def _fraction(R: Ring, v):
    if isinstance(R, Integers):
        return Fraction(v)
    if isinstance(R, Localized):
        return R.as_fraction(v)
    return None


def _lift_scalar(src: Ring, tgt: Ring, v):
    """A payload of ``src`` mapping to ``v`` under the canonical ``src -> tgt``."""
    if tgt == Modular(1):
        return src.zero
    if isinstance(src, Modular) and isinstance(tgt, Modular):
        return v % tgt.modulus
    if isinstance(src, (Integers, Localized)):
        f = _fraction(tgt, v)
        if f is None:
            return None
        if isinstance(src, Integers):
            return f.numerator if f.denominator == 1 else None
        return src.from_fraction(f)
    if isinstance(src, Product) and isinstance(tgt, Product):
        parts = [_lift_scalar(s, t, x) for s, t, x in zip(src.factors, tgt.factors, v)]
        return None if any(p is None for p in parts) else tuple(parts)
    return None


def _lift(src: Ring, tgt: Ring, v, unit: bool):
    if hasattr(src, "algebra"):
        A_s, A_t = src.algebra.base, tgt.algebra.base
        if A_t == Modular(1):
            return src.one if unit else src.zero
        coords = [_lift_scalar(A_s, A_t, x) for x in v]
        out = None if any(c is None for c in coords) else tuple(coords)
    else:
        if tgt == Modular(1):
            return src.one if unit else src.zero
        out = _lift_scalar(src, tgt, v)
        if out is not None and unit and isinstance(src, Modular) and not src.is_unit(out):
            # any unit lift will do; scan the fibre
            step = tgt.modulus
            out = next((x for x in range(out, src.modulus, step) if src.is_unit(x)), None)
    if out is not None and unit and not src.is_unit(out):
        return None
    return out


def _crt(residues):
    """Solve ``x = r_i mod m_i`` for possibly non-coprime moduli."""
    x, m = 0, 1
    for r, mi in residues:
        g, p, _ = _ext_gcd(m, mi)
        if (r - x) % g:
            return None
        lcm = m // g * mi
        x = (x + (r - x) // g * p % (mi // g) * m) % lcm
        m = lcm
    return x, m


def _glue_scalar(base: Ring, values):
    """Element of ``base`` restricting to ``values`` (``(ring, payload)`` per piece)."""
    if isinstance(base, Modular):
        res = [(v, R.modulus) for R, v in values]
        sol = _crt(res)
        return None if sol is None else sol[0] % base.modulus
    if isinstance(base, Integers):
        for R, v in values:
            f = _fraction(R, v)
            if f is not None:
                return f.numerator if f.denominator == 1 else None
        return None
    if isinstance(base, Product):
        parts = []
        for k, fac in enumerate(base.factors):
            p = _glue_scalar(fac, [(R.factors[k], v[k]) for R, v in values])
            if p is None:
                return None
            parts.append(p)
        return tuple(parts)
    raise UnsupportedBase(f"cannot glue elements over {base}")


def _check_supported(base: Ring):
    if isinstance(base, (Integers, Modular)):
        return
    if isinstance(base, Product) and all(isinstance(f, (Integers, Modular)) for f in base.factors):
        return
    raise UnsupportedBase(f"globalize supports Z, Z/m and their products, not {base}")


def _unit_candidates(R: Ring):
    if isinstance(R, Modular):
        return [u for u in range(R.modulus) if R.is_unit(u)]
    if isinstance(R, Integers):
        return [1, -1]
    if isinstance(R, Localized):
        out = [(1, 0), (-1, 0)]
        for p in prime_factors(R.inverted):
            for e in range(1, 4):
                for s in (1, -1):
                    out.append(R.from_fraction(Fraction(s * p**e)))
                    out.append(R.from_fraction(Fraction(s, p**e)))
        return out
    if isinstance(R, Product):
        return list(itertools.product(*(_unit_candidates(f) for f in R.factors)))
    raise UnsupportedBase(f"no unit candidates for {R}")


def _shift_candidates(R: Ring):
    if isinstance(R, Modular):
        return list(range(R.modulus))
    if isinstance(R, (Integers, Localized)):
        return [R.from_int(k) for k in sorted(range(-8, 9), key=abs)]
    if isinstance(R, Product):
        return list(itertools.product(*(_shift_candidates(f) for f in R.factors)))
    raise UnsupportedBase(f"no shift candidates for {R}")


def globalize(d: QuadDescentDatum):
    """A global based quadratic isomorphic to ``d`` plus per-piece witnesses.

    Piece 1 gets a generator ``u x_1 + c`` from a finite candidate family;
    piece 0 is then forced by the transition, lifted, and the pair of
    local ``(t, n)`` values is glued.  Raises ``NotGlobalizable`` if the
    bounded search fails.
    """
    cover = d.cover
    A = cover.base
    _check_supported(A)
    if cover.size > 2:
        raise UnsupportedBase("globalize handles covers with at most two pieces")
    P = d.pieces
    G = P.ring(())

    def glue(vals):
        if hasattr(G, "algebra"):
            coords = []
            for k in range(G.algebra.rank):
                c = _glue_scalar(A, [(_scalar_ring(R), v[k]) for R, v in vals])
                if c is None:
                    return None
                coords.append(c)
            out = tuple(coords)
        else:
            out = _glue_scalar(A, vals)
        if out is None:
            return None
        for i, (R, v) in enumerate(vals):
            if P.restriction((), (i,)).fn(out) != v:
                return None
        return Element(G, out)

    def result(t, n, chosen):
        q = BasedQuadratic(G, t, n)
        wits = []
        for i, (u, c) in enumerate(chosen):
            qi = push_quad(q, P.restriction((), (i,)))
            wits.append(QuadHom(qi, d.locals[i], u, c))
            if not is_valid_hom(wits[-1]):
                raise InternalContradiction("globalize produced an invalid witness")
        return q, wits

    if cover.size == 1:
        q0 = d.locals[0]
        t = glue([(q0.base, q0.t.value)])
        n = glue([(q0.base, q0.n.value)])
        if t is None or n is None:
            raise NotGlobalizable("the single piece is not the whole base")
        R = q0.base
        return result(t, n, [(R.one_element(), R.zero_element())])

    R0, R1, R01 = P.ring((0,)), P.ring((1,)), P.ring((0, 1))
    T = d.transition(0, 1)  # x_0 -> U x_1 + C
    U_inv = T.u.inverse()
    res1 = P.restriction((1,), (0, 1))
    embed1 = (lambda a: a) if not hasattr(R1, "algebra") else (
        lambda a: tuple(R1.algebra.base.mul(a, e) for e in R1.algebra.unit)
    )
    S1 = _scalar_ring(R1)
    for u1p, c1p in itertools.product(_unit_candidates(S1), _shift_candidates(S1)):
        u1, c1 = Element(R1, embed1(u1p)), Element(R1, embed1(c1p))
        if not u1.is_unit():
            continue
        # y = u1 x_1 + c1 = (u1 U^-1) x_0 + (c1 - u1 U^-1 C) on the overlap
        u1o, c1o = res1(u1), res1(c1)
        v = u1o * U_inv
        w = c1o - v * T.c
        v0 = _lift(R0, R01, v.value, unit=True)
        w0 = _lift(R0, R01, w.value, unit=False)
        if v0 is None or w0 is None:
            continue
        u0, c0 = Element(R0, v0), Element(R0, w0)
        res0 = P.restriction((0,), (0, 1))
        if res0(u0) != v or res0(c0) != w:
            continue
        s0 = hom_from_target(d.locals[0], u0, c0).source
        s1 = hom_from_target(d.locals[1], u1, c1).source
        t = glue([(R0, s0.t.value), (R1, s1.t.value)])
        n = glue([(R0, s0.n.value), (R1, s1.n.value)])
        if t is None or n is None:
            continue
        return result(t, n, [(u0, c0), (u1, c1)])
    raise NotGlobalizable("no global generator in the search family")
