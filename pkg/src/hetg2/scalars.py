"""Exact rationals and the parameter polynomial ring Q[eps, k, delta, m].

Rationals are plain ``int`` or :class:`fractions.Fraction` values; the two mix
freely and compare/hash consistently, so no wrapper type is needed.

A parameter monomial eps^a k^b delta^c m^d is packed into a single integer
key (6 bits per exponent) so that multiplying monomials is integer addition.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Sequence

PARAMS = ("eps", "k", "delta", "m")

# Total parameter degree allowed in any stored coefficient.  Exceeding it is
# an engine bug, never a silent truncation.
DEGREE_CAP = 12

_BITS = 6
_FIELD = (1 << _BITS) - 1


class DegreeCapError(ArithmeticError):
    pass


def pack(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if not 0 <= e <= _FIELD:
            raise ValueError(f"exponent out of range: {exps}")
        key |= e << (_BITS * i)
    return key


@lru_cache(maxsize=None)
def unpack(key: int) -> tuple:
    return tuple((key >> (_BITS * i)) & _FIELD for i in range(4))


@lru_cache(maxsize=None)
def key_degree(key: int) -> int:
    return sum(unpack(key))


def check_key(key: int) -> int:
    if key_degree(key) > DEGREE_CAP:
        raise DegreeCapError(
            f"parameter degree {key_degree(key)} exceeds cap {DEGREE_CAP}: "
            f"{monomial_str(key)}")
    return key


def normalize(c):
    """Collapse integral fractions to int so rendering and hashing stay tidy."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def as_rational(x) -> Rational:
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, Fraction)):
        return normalize(x)
    if isinstance(x, str):
        return normalize(Fraction(x))
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a decimal string")
    if isinstance(x, Rational):
        return normalize(Fraction(x.numerator, x.denominator))
    raise TypeError(f"not a rational: {x!r}")


def rational_str(c) -> str:
    c = normalize(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def monomial_str(key: int) -> str:
    parts = []
    for name, e in zip(PARAMS, unpack(key)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def term_str(c, key: int, first: bool) -> str:
    """Render ``c * monomial`` with a leading sign handled for joining."""
    neg = c < 0
    a = -c if neg else c
    mono = monomial_str(key)
    if not mono:
        body = rational_str(a)
    elif a == 1:
        body = mono
    elif isinstance(normalize(a), int):
        body = f"{rational_str(a)}*{mono}"
    else:
        body = f"({rational_str(a)})*{mono}"
    if first:
        return f"-{body}" if neg else body
    return f" - {body}" if neg else f" + {body}"


def _order(key: int):
    # higher total degree first, then lexicographic in (eps, k, delta, m)
    u = unpack(key)
    return (-sum(u), tuple(-e for e in u))


class ParamPoly:
    """Immutable sparse polynomial in eps, k, delta, m with exact coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        clean = {}
        if terms:
            for key, c in terms.items():
                if c != 0:
                    clean[check_key(key)] = normalize(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "ParamPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "ParamPoly":
        c = as_rational(c)
        return cls._raw({0: c} if c != 0 else {})

    @classmethod
    def var(cls, name: str) -> "ParamPoly":
        exps = [0, 0, 0, 0]
        exps[PARAMS.index(name)] = 1
        return cls._raw({pack(exps): 1})

    @classmethod
    def lift(cls, x) -> "ParamPoly":
        if isinstance(x, ParamPoly):
            return x
        return cls.const(x)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._terms)

    def constant(self):
        """Value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError(f"not constant: {self}")
        return self._terms.get(0, 0)

    def degree(self) -> int:
        return max((key_degree(k) for k in self._terms), default=0)

    def __add__(self, other):
        other = ParamPoly.lift(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = normalize(v)
            else:
                out.pop(k, None)
        return ParamPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-ParamPoly.lift(other))

    def __rsub__(self, other):
        return ParamPoly.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, ParamPoly):
            c = as_rational(other)
            if c == 0:
                return ParamPoly()
            return ParamPoly._raw({k: normalize(v * c) for k, v in self._terms.items()})
        out: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return ParamPoly({k: c for k, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = ParamPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self._terms == other._terms
        try:
            return self._terms == ParamPoly.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def subs(self, **values) -> "ParamPoly":
        """Substitute exact rationals (or polynomials) for some parameters."""
        idx = {PARAMS.index(n): ParamPoly.lift(v) for n, v in values.items()}
        out = ParamPoly()
        for key, c in self._terms.items():
            exps = list(unpack(key))
            factor = ParamPoly.const(c)
            for i, val in idx.items():
                factor = factor * (val ** exps[i])
                exps[i] = 0
            out = out + factor * ParamPoly._raw({pack(exps): 1})
        return out

    def eval(self, point):
        """Evaluate at ``(eps, k, delta, m)``; a mapping by name also works.

        Values may be rationals (exact result) or floats (float result).
        """
        if isinstance(point, Mapping):
            point = tuple(point[n] for n in PARAMS)
        total = 0
        for key, c in self._terms.items():
            v = c
            for x, e in zip(point, unpack(key)):
                if e:
                    v = v * x ** e
            total = total + v
        return normalize(total) if not isinstance(total, float) else total

    def divides_monomial(self, key: int) -> bool:
        want = unpack(key)
        return all(all(a >= b for a, b in zip(unpack(k), want)) for k in self._terms)

    def render(self) -> str:
        if not self._terms:
            return "0"
        keys = sorted(self._terms, key=_order)
        return "".join(term_str(self._terms[k], k, i == 0) for i, k in enumerate(keys))

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ParamPoly({self.render()!r})"


EPS = ParamPoly.var("eps")
K = ParamPoly.var("k")
DELTA = ParamPoly.var("delta")
M = ParamPoly.var("m")
ONE = ParamPoly.const(1)
ZERO = ParamPoly()


def poly_arith(lhs: ParamPoly, rhs: ParamPoly, op: str) -> ParamPoly:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown op {op!r}")


def poly_eval(p: ParamPoly, point):
    return p.eval(point)


def poly_sum(items: Iterable[ParamPoly]) -> ParamPoly:
    out = ParamPoly()
    for p in items:
        out = out + p
    return out
