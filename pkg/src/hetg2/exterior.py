"""Free graded-commutative algebra on the local coframe and formal generators.

Generators, in canonical order:

    e0 e1 f1 e2 f2 e3 f3            coframe 1-forms (f_i stands for J e_i)
    a12 a13 a23 b11 b12 b13 b22 b23 formal connection 1-forms
    al12 ... be23                   formal curvature 2-forms (alpha, beta)
    u1 u2 u3 v1 v2 v3               spare odd generators for identity tests

Skew/symmetric-traceless constraints are resolved when the 3x3 matrices are
built (a_ji = -a_ij, b_33 = -b_11 - b_22, same for alpha/beta); only the
independent entries exist as generators.

A monomial is one integer: bit ``i`` marks odd generator ``i``; the counts of
the eight 2-form generators live in 3-bit slots from bit 32 upward.  Because
odd supports of a nonzero product are disjoint, the product key is the plain
sum of the factor keys.  Anything of total degree above 7 is zero.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .scalars import (
    EPS, ParamPoly, as_rational, check_key, monomial_str, normalize, rational_str,
    term_str, unpack,
)

NAMES = (
    "e0", "e1", "f1", "e2", "f2", "e3", "f3",
    "a12", "a13", "a23", "b11", "b12", "b13", "b22", "b23",
    "al12", "al13", "al23", "be11", "be12", "be13", "be22", "be23",
    "u1", "u2", "u3", "v1", "v2", "v3",
)
GEN_ID = {n: i for i, n in enumerate(NAMES)}
EVEN_IDS = tuple(range(15, 23))
DEGREE = tuple(2 if i in EVEN_IDS else 1 for i in range(len(NAMES)))
COFRAME = NAMES[:7]
FORMAL_ODD = NAMES[7:15]
FORMAL_EVEN = NAMES[15:23]
TEST_GENS = NAMES[23:]

MAX_DEGREE = 7
_EVEN_SHIFT = 32
_ODD_MASK = (1 << _EVEN_SHIFT) - 1
COFRAME_MASK = 0b1111111
BASIC_MASK = 0b1111110


def gen_key(i: int) -> int:
    if DEGREE[i] == 1:
        return 1 << i
    return 1 << (_EVEN_SHIFT + 3 * (i - EVEN_IDS[0]))


@lru_cache(maxsize=None)
def mono_degree(key: int) -> int:
    odd = key & _ODD_MASK
    ev = key >> _EVEN_SHIFT
    n2 = 0
    while ev:
        n2 += ev & 7
        ev >>= 3
    return odd.bit_count() + 2 * n2


@lru_cache(maxsize=None)
def mono_gens(key: int) -> tuple:
    """Generator ids of a monomial in canonical product order."""
    odd = key & _ODD_MASK
    out = [i for i in range(len(NAMES)) if DEGREE[i] == 1 and odd >> i & 1]
    ev = key >> _EVEN_SHIFT
    for s in range(len(EVEN_IDS)):
        out.extend([EVEN_IDS[s]] * ((ev >> (3 * s)) & 7))
    return tuple(sorted(out))


def mono_str(key: int) -> str:
    return "^".join(NAMES[i] for i in mono_gens(key)) if key else "1"


@lru_cache(maxsize=None)
def _sign(a: int, b: int) -> int:
    """Sign of (odd support a) ^ (odd support b) relative to sorted order."""
    n = 0
    while b:
        low = b & -b
        n += (a >> low.bit_length()).bit_count()
        b ^= low
    return -1 if n & 1 else 1


def mono_wedge(k1: int, k2: int):
    """Return (sign, key) or None if the product vanishes."""
    o1 = k1 & _ODD_MASK
    o2 = k2 & _ODD_MASK
    if o1 & o2:
        return None
    if mono_degree(k1) + mono_degree(k2) > MAX_DEGREE:
        return None
    return _sign(o1, o2), k1 + k2


def _sort_key(item):
    (mono, pkey) = item
    return (mono_degree(mono), mono_gens(mono), [-e for e in unpack(pkey)])


class Form:
    """Immutable element of the algebra with coefficients in Q[eps,k,delta,m].

    Stored flat as ``{(monomial, param_monomial): rational}``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict | None = None):
        self._terms = {k: normalize(c) for k, c in (terms or {}).items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Form":
        f = cls.__new__(cls)
        f._terms = terms
        f._hash = None
        return f

    @classmethod
    def gen(cls, name: str) -> "Form":
        return cls._raw({(gen_key(GEN_ID[name]), 0): 1})

    @classmethod
    def const(cls, c) -> "Form":
        if isinstance(c, ParamPoly):
            return cls._raw({(0, k): v for k, v in c.items()})
        c = as_rational(c)
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def from_mono(cls, key: int, coeff=1) -> "Form":
        if isinstance(coeff, ParamPoly):
            return cls._raw({(key, p): c for p, c in coeff.items()})
        c = as_rational(coeff)
        return cls._raw({(key, 0): c} if c else {})

    @classmethod
    def lift(cls, x) -> "Form":
        return x if isinstance(x, Form) else cls.const(x)

    # -- inspection -------------------------------------------------------

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def monomials(self) -> set:
        return {m for m, _ in self._terms}

    def degrees(self) -> set:
        return {mono_degree(m) for m, _ in self._terms}

    def is_homogeneous(self, p: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (p is None or p in ds)

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError(f"form is not homogeneous: degrees {sorted(ds)}")
        return ds.pop() if ds else 0

    def by_monomial(self) -> dict:
        """``{monomial: ParamPoly}``."""
        groups: dict = {}
        for (m, p), c in self._terms.items():
            groups.setdefault(m, {})[p] = c
        return {m: ParamPoly._raw(t) for m, t in groups.items()}

    def coefficient(self, mono) -> ParamPoly:
        if isinstance(mono, Form):
            # basis element given as a Form, e.g. wedge(e1, f1) or -e0
            ((key, p), c), = mono._terms.items()
            if p:
                raise ValueError("basis element must have a rational coefficient")
            return self.coefficient(key) * (Fraction(1) / c)
        return ParamPoly._raw({p: c for (m, p), c in self._terms.items() if m == mono})

    def generators(self) -> set:
        out = set()
        for m, _ in self._terms:
            out.update(mono_gens(m))
        return out

    def is_coframe(self) -> bool:
        return all(m & ~COFRAME_MASK == 0 for m, _ in self._terms)

    def is_basic(self) -> bool:
        return all(m & ~BASIC_MASK == 0 for m, _ in self._terms)

    def param_free(self) -> bool:
        return all(p == 0 for _, p in self._terms)

    def scalar(self) -> ParamPoly:
        """Coefficient polynomial of a 0-form."""
        if any(m for m, _ in self._terms):
            raise ValueError("not a 0-form")
        return self.coefficient(0)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = Form.lift(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = normalize(v)
            else:
                del out[k]
        return Form._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Form._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-Form.lift(other))

    def __rsub__(self, other):
        return Form.lift(other) - self

    def __mul__(self, s):
        """Scale by a rational or a parameter polynomial."""
        if isinstance(s, Form):
            raise TypeError("use wedge() or ^ for products of forms")
        if isinstance(s, ParamPoly):
            out: dict = {}
            for (m, p), c in self._terms.items():
                for q, d in s.items():
                    key = (m, check_key(p + q))
                    out[key] = out.get(key, 0) + c * d
            return Form(out)
        s = as_rational(s)
        if s == 0:
            return Form()
        return Form._raw({k: normalize(c * s) for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (Fraction(1) / as_rational(s))

    def __xor__(self, other):
        return wedge(self, other)

    def __rxor__(self, other):
        return wedge(other, self)

    def __eq__(self, other):
        if isinstance(other, Form):
            return self._terms == other._terms
        try:
            return self._terms == Form.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def subs(self, **values) -> "Form":
        """Substitute values for parameters in every coefficient."""
        out = Form()
        for m, poly in self.by_monomial().items():
            out = out + Form.from_mono(m, poly.subs(**values))
        return out

    def coeff_split(self) -> list:
        """``[(parameter monomial, parameter-free Form), ...]`` in render order."""
        groups: dict = {}
        for (m, p), c in self._terms.items():
            groups.setdefault(p, {})[(m, 0)] = c
        keys = sorted(groups, key=lambda p: (-sum(unpack(p)), [-e for e in unpack(p)]))
        keys.sort(key=lambda p: sum(unpack(p)))
        return [(ParamPoly._raw({p: 1}), Form._raw(groups[p])) for p in keys]

    # -- rendering --------------------------------------------------------

    def render(self) -> str:
        if not self._terms:
            return "0"
        groups = self.by_monomial()
        monos = sorted(groups, key=lambda m: (mono_degree(m), mono_gens(m)))
        parts = []
        for i, m in enumerate(monos):
            poly = groups[m]
            first = i == 0
            items = list(poly.items())
            if len(items) == 1:
                pk, c = items[0]
                if m and pk == 0 and abs(c) == 1:
                    s = mono_str(m)
                    body = s
                    neg = c < 0
                    parts.append(("-" if neg else "") + body if first
                                 else (" - " if neg else " + ") + body)
                    continue
                t = term_str(c, pk, first)
                parts.append(t + (" " + mono_str(m) if m else ""))
            else:
                inner = f"({poly.render()})"
                lead = "" if first else " + "
                parts.append(lead + inner + (" " + mono_str(m) if m else ""))
        return "".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Form({self.render()!r})"


def gens(*names: str):
    out = tuple(Form.gen(n) for n in names)
    return out[0] if len(out) == 1 else out


def wedge(*forms) -> Form:
    if not forms:
        return Form.const(1)
    acc = Form.lift(forms[0])
    for f in forms[1:]:
        acc = _wedge2(acc, Form.lift(f))
    return acc


def _wedge2(x: Form, y: Form) -> Form:
    out: dict = {}
    yt = [(m2, m2 & _ODD_MASK, mono_degree(m2), p2, c2) for (m2, p2), c2 in y._terms.items()]
    for (m1, p1), c1 in x._terms.items():
        o1 = m1 & _ODD_MASK
        d1 = mono_degree(m1)
        for m2, o2, d2, p2, c2 in yt:
            if o1 & o2 or d1 + d2 > MAX_DEGREE:
                continue
            c = c1 * c2
            if o2 and o1 and _sign(o1, o2) < 0:
                c = -c
            key = (m1 + m2, p1 + p2)
            out[key] = out.get(key, 0) + c
    for _, p in out:
        check_key(p)
    return Form(out)


# -- matrices used by the structure equations --------------------------------

def _skew(prefix: str):
    g = lambda i, j: Form.gen(f"{prefix}{i}{j}")  # noqa: E731
    zero = Form()
    return [[zero if i == j else (g(i, j) if i < j else -g(j, i)) for j in (1, 2, 3)]
            for i in (1, 2, 3)]


def _symtraceless(prefix: str):
    def g(i, j):
        i, j = min(i, j), max(i, j)
        if (i, j) == (3, 3):
            return -Form.gen(f"{prefix}11") - Form.gen(f"{prefix}22")
        return Form.gen(f"{prefix}{i}{j}")
    return [[g(i, j) for j in (1, 2, 3)] for i in (1, 2, 3)]


@lru_cache(maxsize=None)
def block_generators():
    """3x3 matrices a (skew), b (sym. traceless), alpha (skew), beta (sym. traceless)."""
    return _skew("a"), _symtraceless("b"), _skew("al"), _symtraceless("be")


def _mm(x, y, i, j):
    return sum((wedge(x[i][s], y[s][j]) for s in range(3)), Form())


@lru_cache(maxsize=None)
def _d_generator(i: int) -> Form:
    name = NAMES[i]
    a, b, al, be = block_generators()
    e = [Form.gen(f"e{j}") for j in (1, 2, 3)]
    f = [Form.gen(f"f{j}") for j in (1, 2, 3)]
    if name == "e0":
        return (wedge(e[0], f[0]) + wedge(e[1], f[1]) + wedge(e[2], f[2])) * EPS
    if name[0] in "ef":
        r = int(name[1]) - 1
        if name[0] == "e":
            # d e_i = -a_ij ^ e_j - b_ij ^ Je_j
            return sum((-wedge(a[r][j], e[j]) - wedge(b[r][j], f[j]) for j in range(3)), Form())
        # d Je_i = b_ij ^ e_j - a_ij ^ Je_j
        return sum((wedge(b[r][j], e[j]) - wedge(a[r][j], f[j]) for j in range(3)), Form())
    if name.startswith(("al", "be")):
        r, c = int(name[2]) - 1, int(name[3]) - 1
        # F_A = dA + A^A with A = [[a, b], [-b, a]] and F_A = [[al, be], [-be, al]].
        # Bianchi dF_A = F_A^A - A^F_A, read off in the two independent blocks:
        #   d al = al^a - be^b - a^al + b^be
        #   d be = al^b + be^a - a^be - b^al
        # Both right-hand sides are skew resp. symmetric traceless whenever
        # a, al are skew and b, be symmetric traceless, so the independent
        # entries determine the rest consistently.
        if name.startswith("al"):
            return (_mm(al, a, r, c) - _mm(be, b, r, c) - _mm(a, al, r, c) + _mm(b, be, r, c))
        return (_mm(al, b, r, c) + _mm(be, a, r, c) - _mm(a, be, r, c) - _mm(b, al, r, c))
    if name[0] in "ab":
        r, c = int(name[1]) - 1, int(name[2]) - 1
        if name[0] == "a":
            # upper-left block of F_A = dA + A^A:  al = da + a^a - b^b
            return al[r][c] - _mm(a, a, r, c) + _mm(b, b, r, c)
        # upper-right block:  be = db + a^b + b^a
        return be[r][c] - _mm(a, b, r, c) - _mm(b, a, r, c)
    raise ValueError(f"exterior derivative undefined on test generator {name}")


@lru_cache(maxsize=None)
def _d_mono(key: int) -> Form:
    if key == 0:
        return Form()
    ids = mono_gens(key)
    g = ids[0]
    rest = key - gen_key(g)
    # key = g ^ rest with sign +1, since g is the lowest odd generator (or
    # the monomial has no odd part at all).
    head = _d_generator(g)
    tail = _d_mono(rest)
    out = wedge(head, Form._raw({(rest, 0): 1}))
    if tail:
        sgn = -1 if DEGREE[g] == 1 else 1
        out = out + wedge(Form.gen(NAMES[g]), tail) * sgn
    return out


def d(x: Form) -> Form:
    """Exterior derivative, extended from the generator rules by graded Leibniz."""
    out: dict = {}
    for (m, p), c in x._terms.items():
        for (m2, p2), c2 in _d_mono(m)._terms.items():
            key = (m2, check_key(p + p2))
            out[key] = out.get(key, 0) + c * c2
    return Form(out)


VOL_KEY = COFRAME_MASK


def star(x: Form) -> Form:
    """Hodge star for the orthonormal coframe, vol = e0^e1^f1^e2^f2^e3^f3."""
    out: dict = {}
    for (m, p), c in x._terms.items():
        if m & ~COFRAME_MASK:
            raise ValueError(f"star is only defined on coframe forms, got {mono_str(m)}")
        comp = COFRAME_MASK ^ m
        out[(comp, p)] = c * _sign(m, comp)
    return Form(out)


_J = {"e1": ("f1", 1), "e2": ("f2", 1), "e3": ("f3", 1),
      "f1": ("e1", -1), "f2": ("e2", -1), "f3": ("e3", -1)}


@lru_cache(maxsize=None)
def _j_mono(key: int) -> Form:
    out = Form.const(1)
    for i in mono_gens(key):
        name, s = _J[NAMES[i]]
        out = wedge(out, Form.gen(name) * s)
    return out


def jmap(x: Form) -> Form:
    """Transverse complex structure e_i -> Je_i, Je_i -> -e_i on basic forms."""
    out = Form()
    for m, poly in x.by_monomial().items():
        if m & ~BASIC_MASK:
            raise ValueError(f"jmap needs basic coframe forms, got {mono_str(m)}")
        out = out + wedge(Form.const(poly), _j_mono(m))
    return out


def coeff_split(x: Form) -> list:
    return x.coeff_split()


def coframe_monomials(p: int | None = None) -> list:
    """All 2^7 coframe basis monomials (or those of degree p), as Forms."""
    out = []
    for mask in range(1 << 7):
        if p is None or mask.bit_count() == p:
            out.append(Form._raw({(mask, 0): 1}))
    out.sort(key=lambda f: _sort_key(next(iter(f._terms))))
    return out


__all__ = [
    "NAMES", "COFRAME", "FORMAL_ODD", "FORMAL_EVEN", "TEST_GENS", "Form", "gens",
    "wedge", "d", "star", "jmap", "coeff_split", "block_generators", "mono_str",
    "mono_degree", "mono_gens", "coframe_monomials", "rational_str", "monomial_str",
]
