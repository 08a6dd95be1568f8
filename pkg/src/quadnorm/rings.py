"""Commutative unital rings with exact arithmetic.

A ring descriptor (``Integers()``, ``Modular(12)``, ``Polynomial(base, vars)``,
``Product(factors)``, ``Localized(Integers(), a)``) owns the arithmetic on
*payloads*, the canonical raw representation of its elements.  ``Element``
wraps a payload together with its ring and provides the operators.  Every
payload is kept in canonical form, so structural equality of payloads is
ring equality.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator, Sequence

from .errors import (
    InfiniteRing,
    LocalizationUnsupported,
    MixedRings,
    NotAUnit,
    NotDivisible,
    ParseError,
    UnknownVariable,
)


# ---------------------------------------------------------------------------
# integer helpers


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``|n|`` by trial division (n != 0)."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def radical(n: int) -> int:
    return math.prod(prime_factors(n)) if n else 0


def _strip_primes_of(n: int, r: int) -> int:
    """Remove from ``n`` every prime factor it shares with ``r``."""
    g = math.gcd(n, r)
    while g > 1:
        n //= g
        g = math.gcd(n, r)
    return n


def parse_int(obj: Any) -> int:
    if isinstance(obj, bool):
        raise ParseError(f"expected an integer, got {obj!r}")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        try:
            return int(obj.strip())
        except ValueError:
            raise ParseError(f"not a decimal integer: {obj!r}") from None
    raise ParseError(f"expected an integer, got {obj!r}")


# ---------------------------------------------------------------------------
# elements


class Element:
    """An element of a ring: a canonical payload tagged with its ring."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: "Ring", value: Any):
        self.ring = ring
        self.value = value

    def _other(self, other):
        if isinstance(other, Element):
            if other.ring is not self.ring and other.ring != self.ring:
                raise MixedRings(f"{self.ring} vs {other.ring}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Element(self.ring, self.ring.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Element(self.ring, self.ring.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Element(self.ring, self.ring.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Element(self.ring, self.ring.mul(self.value, o))

    __rmul__ = __mul__

    def __neg__(self):
        return Element(self.ring, self.ring.neg(self.value))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Element(self.ring, self.ring.pow(self.value, k))

    def __eq__(self, other):
        if isinstance(other, Element):
            return (other.ring is self.ring or other.ring == self.ring) and other.value == self.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def __repr__(self):
        return f"{self.ring.format(self.value)} in {self.ring}"

    def __str__(self):
        return self.ring.format(self.value)

    def is_zero(self) -> bool:
        return self.value == self.ring.zero

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.value)

    def inverse(self) -> "Element":
        return Element(self.ring, self.ring.inverse(self.value))

    def to_json(self):
        return self.ring.element_to_json(self.value)


# ---------------------------------------------------------------------------
# ring descriptors


class Ring:
    """Interface shared by all ring descriptors; methods act on payloads."""

    kind = "abstract"
    is_finite = False

    # -- element construction
    def __call__(self, x=0) -> Element:
        if isinstance(x, Element):
            if x.ring is not self and x.ring != self:
                raise MixedRings(f"{x.ring} is not {self}")
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Element(self, self.from_int(x))
        raise TypeError(f"cannot coerce {x!r} into {self}; use Ring.wrap for payloads")

    def wrap(self, payload) -> Element:
        return Element(self, payload)

    def zero_element(self) -> Element:
        return Element(self, self.zero)

    def one_element(self) -> Element:
        return Element(self, self.one)

    # -- arithmetic defaults
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, k: int):
        result = self.one
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def from_int(self, k: int):
        raise NotImplementedError

    def is_zero_ring(self) -> bool:
        return self.one == self.zero

    def is_idempotent(self, a) -> bool:
        return self.mul(a, a) == a

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inverse(self, a):
        raise NotImplementedError

    def is_nilpotent(self, a) -> bool:
        raise NotImplementedError

    # -- enumeration and sampling
    def elements(self) -> Iterator:
        raise InfiniteRing(f"{self} is not enumerable")

    def units(self) -> list:
        return [a for a in self.elements() if self.is_unit(a)]

    def random(self, rng: random.Random):
        raise NotImplementedError

    # -- presentation
    def format(self, a) -> str:
        return str(self.element_to_json(a))

    def to_json(self) -> dict:
        raise NotImplementedError

    def element_to_json(self, a):
        raise NotImplementedError

    def element_from_json(self, obj):
        raise NotImplementedError


@dataclass(frozen=True)
class Integers(Ring):
    kind = "integers"
    zero = 0
    one = 1
    random_bound = 12

    def __str__(self):
        return "Z"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, k):
        return a**k

    def from_int(self, k):
        return k

    def is_unit(self, a):
        return a in (1, -1)

    def inverse(self, a):
        if a not in (1, -1):
            raise NotAUnit(f"{a} is not a unit in Z")
        return a

    def is_nilpotent(self, a):
        return a == 0

    def random(self, rng):
        return rng.randint(-self.random_bound, self.random_bound)

    def format(self, a):
        return str(a)

    def to_json(self):
        return {"kind": "integers"}

    def element_to_json(self, a):
        return str(a)

    def element_from_json(self, obj):
        return parse_int(obj)


@dataclass(frozen=True)
class Modular(Ring):
    modulus: int
    kind = "modular"
    zero = 0
    is_finite = True

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 1:
            raise ValueError(f"modulus must be a positive integer, got {self.modulus!r}")

    def __str__(self):
        return f"Z/{self.modulus}"

    @property
    def one(self):
        return 1 % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def mul(self, a, b):
        return a * b % self.modulus

    def pow(self, a, k):
        return pow(a, k, self.modulus)

    def from_int(self, k):
        return k % self.modulus

    def is_unit(self, a):
        return math.gcd(a, self.modulus) == 1

    def inverse(self, a):
        if not self.is_unit(a):
            raise NotAUnit(f"{a} is not a unit mod {self.modulus}")
        return pow(a, -1, self.modulus) if self.modulus > 1 else 0

    def is_nilpotent(self, a):
        return a % radical(self.modulus) == 0 if self.modulus > 1 else True

    def elements(self):
        return iter(range(self.modulus))

    @property
    def size(self):
        return self.modulus

    def random(self, rng):
        return rng.randrange(self.modulus)

    def format(self, a):
        return str(a)

    def to_json(self):
        return {"kind": "modular", "modulus": self.modulus}

    def element_to_json(self, a):
        return str(a)

    def element_from_json(self, obj):
        return parse_int(obj) % self.modulus


def _grlex_key(term):
    exps = term[0]
    return (sum(exps), exps)


@dataclass(frozen=True)
class Polynomial(Ring):
    """Multivariate polynomials; payload is a tuple of ``(exponents, coeff)``
    pairs in descending graded-lexicographic order with no zero coefficients."""

    base: Ring
    variables: tuple[str, ...]
    kind = "polynomial"
    zero = ()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated variable names {self.variables}")
        clash = set(self.variables) & set(all_variable_names(self.base))
        if clash:
            raise ValueError(f"variables {sorted(clash)} already present in {self.base}")

    def __str__(self):
        return f"{self.base}[{','.join(self.variables)}]"

    @property
    def nvars(self):
        return len(self.variables)

    @property
    def one(self):
        return self.constant(self.base.one)

    def constant(self, c):
        if c == self.base.zero:
            return ()
        return (((0,) * self.nvars, c),)

    def monomial(self, exps, c=None):
        c = self.base.one if c is None else c
        if c == self.base.zero:
            return ()
        return ((tuple(exps), c),)

    def variable(self, name) -> Element:
        try:
            i = self.variables.index(name)
        except ValueError:
            raise UnknownVariable(name) from None
        exps = [0] * self.nvars
        exps[i] = 1
        return Element(self, self.monomial(exps))

    def _canon(self, d: dict):
        z = self.base.zero
        items = [(e, c) for e, c in d.items() if c != z]
        items.sort(key=_grlex_key, reverse=True)
        return tuple(items)

    def add(self, a, b):
        if not a:
            return b
        if not b:
            return a
        base = self.base
        d = dict(a)
        for e, c in b:
            d[e] = base.add(d[e], c) if e in d else c
        return self._canon(d)

    def neg(self, a):
        return tuple((e, self.base.neg(c)) for e, c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        base = self.base
        d: dict = {}
        for e1, c1 in a:
            for e2, c2 in b:
                e = tuple(x + y for x, y in zip(e1, e2))
                p = base.mul(c1, c2)
                d[e] = base.add(d[e], p) if e in d else p
        return self._canon(d)

    def scale(self, c, a):
        """Multiply polynomial payload ``a`` by base payload ``c``."""
        return self._canon({e: self.base.mul(c, x) for e, x in a})

    def from_int(self, k):
        return self.constant(self.base.from_int(k))

    def coefficient(self, a, exps) -> Any:
        exps = tuple(exps)
        for e, c in a:
            if e == exps:
                return c
        return self.base.zero

    def constant_term(self, a):
        return self.coefficient(a, (0,) * self.nvars)

    def is_nilpotent(self, a):
        return all(self.base.is_nilpotent(c) for _, c in a)

    def is_unit(self, a):
        zero_exps = (0,) * self.nvars
        c0 = self.constant_term(a)
        if not self.base.is_unit(c0):
            return False
        return all(self.base.is_nilpotent(c) for e, c in a if e != zero_exps)

    def inverse(self, a):
        if not self.is_unit(a):
            raise NotAUnit(f"{self.format(a)} is not a unit in {self}")
        c0 = self.constant_term(a)
        c0_inv = self.base.inverse(c0)
        # a = c0 (1 + nu) with nu nilpotent; invert the geometric series
        nu = self.sub(self.scale(c0_inv, a), self.one)
        term = self.one
        total = self.one
        minus_nu = self.neg(nu)
        while True:
            term = self.mul(term, minus_nu)
            if not term:
                break
            total = self.add(total, term)
        return self.scale(c0_inv, total)

    def degree(self, a) -> int:
        return max((sum(e) for e, _ in a), default=-1)

    def random(self, rng, max_degree=2, max_terms=3):
        d = {}
        for _ in range(rng.randint(0, max_terms)):
            exps = [0] * self.nvars
            for _ in range(rng.randint(0, max_degree)):
                exps[rng.randrange(self.nvars)] += 1
            d[tuple(exps)] = self.base.random(rng)
        return self._canon(d)

    def format(self, a):
        if not a:
            return "0"
        parts = []
        for e, c in a:
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            cs = self.base.format(c)
            if not mono:
                parts.append(cs)
            elif c == self.base.one:
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def to_json(self):
        return {"kind": "polynomial", "base": self.base.to_json(), "variables": list(self.variables)}

    def element_to_json(self, a):
        return [{"coeff": self.base.element_to_json(c), "exps": list(e)} for e, c in a]

    def element_from_json(self, obj):
        if isinstance(obj, (int, str)) and not isinstance(obj, bool):
            return self.constant(self.base.element_from_json(obj))
        if not isinstance(obj, list):
            raise ParseError(f"polynomial must be a list of terms, got {obj!r}")
        d: dict = {}
        for term in obj:
            exps = tuple(parse_int(x) for x in term["exps"])
            if len(exps) != self.nvars or min(exps, default=0) < 0:
                raise ParseError(f"bad exponent vector {term['exps']!r} for {self}")
            c = self.base.element_from_json(term["coeff"])
            d[exps] = self.base.add(d[exps], c) if exps in d else c
        return self._canon(d)


@dataclass(frozen=True)
class Product(Ring):
    factors: tuple[Ring, ...]
    kind = "product"

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("a product ring needs at least one factor")

    def __str__(self):
        return " x ".join(f"({f})" for f in self.factors)

    @property
    def is_finite(self):
        return all(f.is_finite for f in self.factors)

    @property
    def zero(self):
        return tuple(f.zero for f in self.factors)

    @property
    def one(self):
        return tuple(f.one for f in self.factors)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def sub(self, a, b):
        return tuple(f.sub(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def from_int(self, k):
        return tuple(f.from_int(k) for f in self.factors)

    def is_unit(self, a):
        return all(f.is_unit(x) for f, x in zip(self.factors, a))

    def inverse(self, a):
        return tuple(f.inverse(x) for f, x in zip(self.factors, a))

    def is_nilpotent(self, a):
        return all(f.is_nilpotent(x) for f, x in zip(self.factors, a))

    def elements(self):
        return itertools.product(*(f.elements() for f in self.factors))

    @property
    def size(self):
        return math.prod(f.size for f in self.factors)

    def random(self, rng):
        return tuple(f.random(rng) for f in self.factors)

    def format(self, a):
        return "(" + ", ".join(f.format(x) for f, x in zip(self.factors, a)) + ")"

    def to_json(self):
        return {"kind": "product", "factors": [f.to_json() for f in self.factors]}

    def element_to_json(self, a):
        return [f.element_to_json(x) for f, x in zip(self.factors, a)]

    def element_from_json(self, obj):
        if not isinstance(obj, list) or len(obj) != len(self.factors):
            raise ParseError(f"expected a list of {len(self.factors)} components, got {obj!r}")
        return tuple(f.element_from_json(x) for f, x in zip(self.factors, obj))


@dataclass(frozen=True)
class Localized(Ring):
    """``Z[1/a]``; payload ``(num, k)`` meaning ``num / a**k`` with ``k`` minimal.

    The inverted element is normalised to the radical of ``|a|``, so rings
    that are equal as subrings of Q have equal descriptors.
    """

    base: Ring
    inverted: int
    kind = "localized"
    zero = (0, 0)
    one = (1, 0)
    random_bound = 12

    def __post_init__(self):
        if not isinstance(self.base, Integers):
            raise LocalizationUnsupported(
                f"Localized descriptors are only built over Z; got {self.base} (use localize())"
            )
        r = radical(self.inverted)
        if r <= 1:
            raise ValueError(f"inverting {self.inverted} does not give a proper Localized ring")
        object.__setattr__(self, "inverted", r)

    def __str__(self):
        return f"Z[1/{self.inverted}]"

    def normalize(self, num, k):
        if num == 0:
            return (0, 0)
        r = self.inverted
        while k > 0 and num % r == 0:
            num //= r
            k -= 1
        return (num, k)

    def add(self, a, b):
        (x, i), (y, j) = a, b
        r = self.inverted
        if i < j:
            x *= r ** (j - i)
            i = j
        elif j < i:
            y *= r ** (i - j)
        return self.normalize(x + y, i)

    def neg(self, a):
        return (-a[0], a[1])

    def mul(self, a, b):
        return self.normalize(a[0] * b[0], a[1] + b[1])

    def from_int(self, k):
        return self.normalize(k, 0)

    def is_unit(self, a):
        return a[0] != 0 and _strip_primes_of(abs(a[0]), self.inverted) == 1

    def inverse(self, a):
        if not self.is_unit(a):
            raise NotAUnit(f"{self.format(a)} is not a unit in {self}")
        num, k = a
        r = self.inverted
        j = 0
        while (r**j) % num:
            j += 1
        return self.normalize((r**j // num) * r**k, j)

    def is_nilpotent(self, a):
        return a[0] == 0

    def random(self, rng):
        return self.normalize(rng.randint(-self.random_bound, self.random_bound), rng.randint(0, 2))

    def as_fraction(self, a):
        from fractions import Fraction

        return Fraction(a[0], self.inverted ** a[1])

    def from_fraction(self, f):
        """Payload for a rational number, or ``None`` when it is not in this ring."""
        den = f.denominator
        if _strip_primes_of(den, self.inverted) != 1:
            return None
        r = self.inverted
        k = 0
        while (r**k) % den:
            k += 1
        return self.normalize(f.numerator * (r**k // den), k)

    def format(self, a):
        return str(a[0]) if a[1] == 0 else f"{a[0]}/{self.inverted}^{a[1]}"

    def to_json(self):
        return {"kind": "localized", "base": self.base.to_json(), "inverted": str(self.inverted)}

    def element_to_json(self, a):
        return {"num": str(a[0]), "den_base": str(self.inverted), "den_exp": str(a[1])}

    def element_from_json(self, obj):
        if isinstance(obj, dict):
            num = parse_int(obj["num"])
            base = parse_int(obj.get("den_base", self.inverted))
            k = parse_int(obj.get("den_exp", 0))
            if k < 0:
                raise ParseError("den_exp must be non-negative")
            if base != self.inverted:
                from fractions import Fraction

                p = self.from_fraction(Fraction(num, base**k))
                if p is None:
                    raise ParseError(f"{num}/{base}^{k} does not lie in {self}")
                return p
            return self.normalize(num, k)
        return self.normalize(parse_int(obj), 0)


ZERO_RING = Modular(1)


def all_variable_names(ring: Ring) -> list[str]:
    """Variable names adjoined anywhere beneath ``ring``."""
    names: list[str] = []
    if isinstance(ring, Polynomial):
        names.extend(ring.variables)
        names.extend(all_variable_names(ring.base))
    elif isinstance(ring, Product):
        for f in ring.factors:
            names.extend(all_variable_names(f))
    elif hasattr(ring, "algebra"):
        names.extend(all_variable_names(ring.algebra.base))
    return names


def fresh_names(ring: Ring, count: int, prefix: str = "lam") -> list[str]:
    taken = set(all_variable_names(ring))
    out = []
    i = 0
    while len(out) < count:
        name = f"{prefix}{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


# ---------------------------------------------------------------------------
# module-level element operations


def _check_same(x: Element, y: Element):
    if x.ring is not y.ring and x.ring != y.ring:
        raise MixedRings(f"{x.ring} vs {y.ring}")


def add(x: Element, y: Element) -> Element:
    _check_same(x, y)
    return x + y


def sub(x: Element, y: Element) -> Element:
    _check_same(x, y)
    return x - y


def mul(x: Element, y: Element) -> Element:
    _check_same(x, y)
    return x * y


def neg(x: Element) -> Element:
    return -x


def zero(ring: Ring) -> Element:
    return ring.zero_element()


def one(ring: Ring) -> Element:
    return ring.one_element()


def is_unit(x: Element) -> bool:
    return x.is_unit()


def inverse(x: Element) -> Element:
    return x.inverse()


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True, eq=False)
class RingHom:
    """A ring homomorphism given by its action on payloads."""

    source: Ring
    target: Ring
    fn: Callable[[Any], Any]
    name: str = ""

    def __call__(self, x) -> Element:
        if isinstance(x, int) and not isinstance(x, bool):
            x = self.source(x)
        if x.ring is not self.source and x.ring != self.source:
            raise MixedRings(f"hom {self.name} expects {self.source}, got {x.ring}")
        return Element(self.target, self.fn(x.value))

    def apply(self, payload):
        return self.fn(payload)

    def then(self, other: "RingHom") -> "RingHom":
        """``other`` after ``self``."""
        if other.source != self.target:
            raise MixedRings(f"cannot compose {self.target} -> {other.source}")
        f, g = self.fn, other.fn
        return RingHom(self.source, other.target, lambda a: g(f(a)), f"{other.name}.{self.name}")

    def __repr__(self):
        return f"RingHom({self.name or '?'}: {self.source} -> {self.target})"


def identity_hom(ring: Ring) -> RingHom:
    return RingHom(ring, ring, lambda a: a, "id")


def canonical_hom(ring: Ring) -> RingHom:
    """The unique map Z -> ring."""
    return RingHom(Integers(), ring, ring.from_int, "can")


def reduction_hom(source: Ring, modulus: int) -> RingHom:
    """Reduction Z -> Z/m or Z/M -> Z/m for m | M."""
    target = Modular(modulus)
    if isinstance(source, Modular):
        if source.modulus % modulus:
            raise ValueError(f"{modulus} does not divide {source.modulus}")
    elif not isinstance(source, Integers):
        raise ValueError(f"no reduction map from {source}")
    return RingHom(source, target, lambda a: a % modulus, "mod")


def zero_hom(ring: Ring) -> RingHom:
    return RingHom(ring, ZERO_RING, lambda a: 0, "zero")


def product_hom(source: Product, homs: Sequence[RingHom]) -> RingHom:
    """Componentwise map of products, one hom per factor."""
    homs = tuple(homs)
    if len(homs) != len(source.factors):
        raise ValueError("one hom per factor required")
    target = Product(tuple(h.target for h in homs))
    fns = tuple(h.fn for h in homs)
    return RingHom(source, target, lambda a: tuple(f(x) for f, x in zip(fns, a)), "prod")


def diagonal_hom(ring: Ring, k: int = 2) -> RingHom:
    target = Product((ring,) * k)
    return RingHom(ring, target, lambda a: (a,) * k, "diag")


def projection_hom(ring: Product, i: int) -> RingHom:
    return RingHom(ring, ring.factors[i], lambda a: a[i], f"pr{i}")


def from_integers_localized(source: Localized, hom: RingHom) -> RingHom:
    """Extend ``hom: Z -> T`` to ``Z[1/r] -> T`` when ``hom(r)`` is a unit."""
    target = hom.target
    r_img = hom.fn(source.inverted)
    if not target.is_unit(r_img):
        raise NotAUnit(f"{source.inverted} does not map to a unit in {target}")
    r_inv = target.inverse(r_img)

    def fn(a):
        return target.mul(hom.fn(a[0]), target.pow(r_inv, a[1]))

    return RingHom(source, target, fn, "loc-ext")


# ---------------------------------------------------------------------------
# polynomial rings


def adjoin_variables(ring: Ring, names: Iterable[str]) -> Polynomial:
    return Polynomial(ring, tuple(names))


def embed(poly_ring: Polynomial, x: Element) -> Element:
    """Constant polynomial with value ``x``."""
    x = poly_ring.base(x) if not isinstance(x, Element) else x
    if x.ring != poly_ring.base:
        raise MixedRings(f"{x.ring} is not the base of {poly_ring}")
    return Element(poly_ring, poly_ring.constant(x.value))


def embedding_hom(poly_ring: Polynomial) -> RingHom:
    return RingHom(poly_ring.base, poly_ring, poly_ring.constant, "embed")


def evaluation_hom(poly_ring: Polynomial, base_hom: RingHom, images: dict) -> RingHom:
    """Map R[vars] -> T sending coefficients through ``base_hom`` and
    variable ``v`` to ``images[v]`` (Elements of T)."""
    if base_hom.source != poly_ring.base:
        raise MixedRings(f"base hom starts at {base_hom.source}, not {poly_ring.base}")
    target = base_hom.target
    imgs = []
    for v in poly_ring.variables:
        if v not in images:
            raise UnknownVariable(f"no image given for {v}")
        img = images[v]
        if not isinstance(img, Element):
            img = target(img)
        if img.ring != target:
            raise MixedRings(f"image of {v} lies in {img.ring}, not {target}")
        imgs.append(img.value)
    extra = set(images) - set(poly_ring.variables)
    if extra:
        raise UnknownVariable(f"unknown variables {sorted(extra)}")
    bf = base_hom.fn

    def fn(a):
        total = target.zero
        for e, c in a:
            term = bf(c)
            for img, k in zip(imgs, e):
                if k:
                    term = target.mul(term, target.pow(img, k))
            total = target.add(total, term)
        return total

    return RingHom(poly_ring, target, fn, "eval")


def coefficient_hom(poly_ring: Polynomial, base_hom: RingHom) -> RingHom:
    """R[vars] -> S[vars] applying ``base_hom`` to coefficients."""
    target = Polynomial(base_hom.target, poly_ring.variables)
    bf = base_hom.fn
    return RingHom(poly_ring, target, lambda a: target._canon({e: bf(c) for e, c in a}), "coeff")


def specialize(poly: Element, assignment: dict) -> Element:
    """Substitute values from the base ring for some or all variables.

    Returns an element of the base ring when every variable is assigned,
    otherwise of the polynomial ring in the remaining variables.
    """
    ring = poly.ring
    if not isinstance(ring, Polynomial):
        raise TypeError(f"{ring} is not a polynomial ring")
    unknown = set(assignment) - set(ring.variables)
    if unknown:
        raise UnknownVariable(f"unknown variables {sorted(unknown)}")
    base = ring.base
    rest = [v for v in ring.variables if v not in assignment]
    target = Polynomial(base, tuple(rest)) if rest else base
    vals = {}
    for v, x in assignment.items():
        x = base(x) if not isinstance(x, Element) else x
        if x.ring != base:
            raise MixedRings(f"value for {v} lies in {x.ring}, not {base}")
        vals[v] = x.value
    d: dict = {}
    for e, c in poly.value:
        coeff = c
        rest_exps = []
        for v, k in zip(ring.variables, e):
            if v in vals:
                if k:
                    coeff = base.mul(coeff, base.pow(vals[v], k))
            else:
                rest_exps.append(k)
        key = tuple(rest_exps)
        d[key] = base.add(d[key], coeff) if key in d else coeff
    if not rest:
        return Element(base, d.get((), base.zero))
    return Element(target, target._canon(d))


def exact_divide_by_variable(poly: Element, name: str) -> Element:
    ring = poly.ring
    if not isinstance(ring, Polynomial):
        raise TypeError(f"{ring} is not a polynomial ring")
    try:
        i = ring.variables.index(name)
    except ValueError:
        raise UnknownVariable(name) from None
    out = []
    for e, c in poly.value:
        if e[i] == 0:
            raise NotDivisible(f"term with exponents {e} is not divisible by {name}")
        out.append((e[:i] + (e[i] - 1,) + e[i + 1 :], c))
    return Element(ring, ring._canon(dict(out)))


def coefficient(poly: Element, exps: Sequence[int]) -> Element:
    ring = poly.ring
    return Element(ring.base, ring.coefficient(poly.value, exps))


# ---------------------------------------------------------------------------
# localization


def localize(ring: Ring, a) -> tuple[Ring, RingHom]:
    """Return ``(ring_a, ring -> ring_a)`` where ``a`` becomes a unit.

    Supported: Z (fractions with denominators a^k), Z[1/r], Z/m (idempotent
    splitting), products (componentwise), and units or zero in any ring.
    """
    if isinstance(a, Element):
        if a.ring != ring:
            raise MixedRings(f"{a.ring} is not {ring}")
        a = a.value
    elif isinstance(a, int) and not isinstance(a, bool):
        a = ring.from_int(a)

    if ring.is_unit(a):
        return ring, identity_hom(ring)
    if isinstance(ring, Integers):
        if a == 0:
            return ZERO_RING, zero_hom(ring)
        target = Localized(ring, a)
        return target, RingHom(ring, target, target.from_int, "loc")
    if isinstance(ring, Localized):
        num = a[0]
        if num == 0:
            return ZERO_RING, zero_hom(ring)
        target = Localized(Integers(), ring.inverted * abs(num))
        factor = target.inverted // ring.inverted

        def fn(x):
            return target.normalize(x[0] * factor ** x[1], x[1])

        return target, RingHom(ring, target, fn, "loc")
    if isinstance(ring, Modular):
        m = ring.modulus
        primes_a = prime_factors(a) if a else prime_factors(m)
        m_prime = m
        for p in primes_a:
            while m_prime % p == 0:
                m_prime //= p
        return Modular(m_prime), reduction_hom(ring, m_prime)
    if isinstance(ring, Product):
        parts = [localize(f, x) for f, x in zip(ring.factors, a)]
        hom = product_hom(ring, [h for _, h in parts])
        return hom.target, hom
    if a == ring.zero:
        return ZERO_RING, zero_hom(ring)
    raise LocalizationUnsupported(f"cannot invert {ring.format(a)} in {ring}")


# ---------------------------------------------------------------------------
# JSON


_RING_DECODERS: dict[str, Callable[[dict], Ring]] = {}


def register_ring_decoder(kind: str, fn: Callable[[dict], Ring]):
    _RING_DECODERS[kind] = fn


def ring_from_json(obj) -> Ring:
    if isinstance(obj, dict) and "ring" in obj and "kind" not in obj:
        obj = obj["ring"]
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError(f"ring descriptor must be an object with a 'kind', got {obj!r}")
    kind = obj["kind"]
    try:
        if kind == "integers":
            return Integers()
        if kind == "modular":
            return Modular(parse_int(obj["modulus"]))
        if kind == "polynomial":
            return Polynomial(ring_from_json(obj["base"]), tuple(obj["variables"]))
        if kind == "product":
            return Product(tuple(ring_from_json(f) for f in obj["factors"]))
        if kind == "localized":
            base = ring_from_json(obj["base"])
            inv = base.element_from_json(obj["inverted"])
            return localize(base, inv)[0]
        if kind in _RING_DECODERS:
            return _RING_DECODERS[kind](obj)
    except KeyError as exc:
        raise ParseError(f"ring descriptor missing field {exc}") from None
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from None
    raise ParseError(f"unknown ring kind {kind!r}")


def element_from_json(ring: Ring, obj) -> Element:
    return Element(ring, ring.element_from_json(obj))
