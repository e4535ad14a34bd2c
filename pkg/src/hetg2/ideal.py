"""The relation ideal generated by d^2 on the coframe, and exact reduction modulo it.

The formal curvature generators (alpha, beta) are free symbols, so identities
like alpha^e + beta^Je = 0 do not hold in the free algebra.  They are exactly
the components of -d^2(e_i), -d^2(Je_i), and membership in the ideal they
generate is decided here by exact linear algebra over Q.

Every generator is linear in alpha/beta and linear in the coframe, and free of
a/b.  So the ideal is homogeneous for the grading
    (set of a/b generators, number of alpha/beta factors, number of coframe factors)
and each graded piece of a target can be reduced on its own, with multiplier
monomials drawn from the matching graded piece one degree lower.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .exterior import (
    COFRAME, COFRAME_MASK, EVEN_IDS, Form, GEN_ID, NAMES, d, gen_key, mono_degree, mono_gens,
    wedge,
)
from .scalars import normalize

_ODD_MASK = (1 << 32) - 1


@dataclass(frozen=True)
class RelationIdeal:
    generators: tuple
    names: tuple
    extra: tuple = ()          # names of non-coframe generators whose d^2 was nonzero

    def without(self, i: int) -> "RelationIdeal":
        """Copy with generator ``i`` dropped (for the minimality audit)."""
        gens = self.generators[:i] + self.generators[i + 1:]
        names = self.names[:i] + self.names[i + 1:]
        return RelationIdeal(gens, names, self.extra)

    def __len__(self):
        return len(self.generators)


def d_squared_table() -> dict:
    """d(d(g)) for each of the 23 geometric/formal generators."""
    return {n: d(d(Form.gen(n))) for n in NAMES[:23]}


_IDEAL = None


def build_ideal() -> RelationIdeal:
    global _IDEAL
    if _IDEAL is not None:
        return _IDEAL
    table = d_squared_table()
    gens, names, extra = [], [], []
    for n in COFRAME[1:]:
        g = table[n]
        if not g:
            continue
        if not (g.is_homogeneous(3) and g.param_free()):
            raise AssertionError(f"d^2({n}) is not a parameter-free 3-form")
        # store the component of F_A ^ (e, Je) rather than its negative
        gens.append(-g)
        names.append(f"d2{n}")
    for n in NAMES[:23]:
        if n in COFRAME[1:] or not table[n]:
            continue
        extra.append(n)
        g = table[n]
        for part in _homogeneous_parts(g):
            gens.append(part)
            names.append(f"d2{n}")
    _IDEAL = RelationIdeal(tuple(gens), tuple(names), tuple(extra))
    return _IDEAL


def _homogeneous_parts(x: Form) -> list:
    by_deg: dict = {}
    for (m, p), c in x.items():
        by_deg.setdefault(mono_degree(m), {})[(m, p)] = c
    return [Form(t) for _, t in sorted(by_deg.items())]


# -- graded pieces -----------------------------------------------------------

def _grade(mono: int):
    odd = mono & _ODD_MASK
    s = odd & ~COFRAME_MASK
    c = (odd & COFRAME_MASK).bit_count()
    n = 0
    ev = mono >> 32
    while ev:
        n += ev & 7
        ev >>= 3
    return s, n, c


def _even_ids(mono: int) -> set:
    return {i for i in mono_gens(mono) if i in EVEN_IDS}


class _Echelon:
    """Incremental row echelon basis over Q with combination tracking."""

    __slots__ = ("rows",)

    def __init__(self):
        self.rows = []   # (pivot, vector, combination)

    def reduce(self, vec: dict):
        vec = dict(vec)
        comb: dict = {}
        for piv, b, bc in self.rows:
            c = vec.get(piv)
            if not c:
                continue
            for k, v in b.items():
                w = vec.get(k, 0) - c * v
                if w:
                    vec[k] = w
                else:
                    vec.pop(k, None)
            for k, v in bc.items():
                w = comb.get(k, 0) + c * v
                if w:
                    comb[k] = w
                else:
                    comb.pop(k, None)
        return vec, comb

    def insert(self, vec: dict, label) -> bool:
        r, used = self.reduce(vec)
        if not r:
            return False
        comb = {k: -v for k, v in used.items()}
        comb[label] = comb.get(label, 0) + 1
        piv = min(r, key=lambda k: (_size(r[k]), k))
        pv = Fraction(r[piv])
        self.rows.append((piv, {k: v / pv for k, v in r.items()},
                          {k: v / pv for k, v in comb.items()}))
        return True


def _size(c) -> int:
    c = Fraction(c)
    return abs(c.numerator) * c.denominator


@dataclass
class _Piece:
    basis: _Echelon
    columns: dict = field(default_factory=dict)   # label -> (multiplier key, generator index)


class Reducer:
    """Reduction modulo a RelationIdeal; caches one echelon basis per graded piece."""

    def __init__(self, ideal: RelationIdeal | None = None, support: str = "restricted"):
        if support not in ("restricted", "full"):
            raise ValueError(f"unknown multiplier support {support!r}")
        self.ideal = ideal if ideal is not None else build_ideal()
        self.support = support
        self._cache: dict = {}
        self._lock = threading.Lock()

    def _piece(self, s: int, n: int, c: int, evens: tuple) -> _Piece:
        key = (s, n, c, evens)
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        ech = _Echelon()
        piece = _Piece(ech)
        label = 0
        if n >= 1 and c >= 1:
            cof = [gen_key(GEN_ID[x]) for x in COFRAME]
            ev = [gen_key(i) for i in evens]
            for cs in combinations(range(7), c - 1):
                ck = sum(cof[i] for i in cs)
                for es in combinations_with_replacement(range(len(ev)), n - 1):
                    mk = s + ck + sum(ev[i] for i in es)
                    mform = Form._raw({(mk, 0): 1})
                    for gi, g in enumerate(self.ideal.generators):
                        col = wedge(mform, g)
                        if not col:
                            continue
                        vec = {m: v for (m, _), v in col.items()}
                        piece.columns[label] = (mk, gi)
                        ech.insert(vec, label)
                        label += 1
        with self._lock:
            self._cache.setdefault(key, piece)
        return piece

    def _evens_for(self, target_monos) -> tuple:
        if self.support == "full":
            return EVEN_IDS
        used = set()
        for m in target_monos:
            used |= _even_ids(m)
        return tuple(sorted(used)) or EVEN_IDS

    def reduce_component(self, v: dict, certify: bool = True):
        """Reduce a parameter-free {monomial: rational}; returns (residue, used_ideal)."""
        groups: dict = {}
        for m, c in v.items():
            groups.setdefault(_grade(m), {})[m] = c
        residue: dict = {}
        used = False
        for (s, n, c), vec in sorted(groups.items()):
            if n == 0 or c == 0 or not self.ideal.generators:
                residue.update(vec)
                continue
            piece = self._piece(s, n, c, self._evens_for(vec))
            r, comb = piece.basis.reduce(vec)
            if comb:
                used = True
                if certify:
                    self._certify(vec, r, comb, piece)
            residue.update(r)
        return residue, used

    def _certify(self, vec, r, comb, piece):
        total = Form()
        for label, coeff in comb.items():
            mk, gi = piece.columns[label]
            total = total + wedge(Form._raw({(mk, 0): 1}), self.ideal.generators[gi]) * coeff
        diff = Form({(m, 0): vec.get(m, 0) - r.get(m, 0) for m in set(vec) | set(r)})
        if total != diff:
            raise AssertionError("ideal reduction certificate failed to re-multiply")

    def reduce(self, x: Form, certify: bool = True):
        """Return (residue Form, used_ideal) for x modulo the ideal."""
        by_param: dict = {}
        for (m, p), c in x.items():
            by_param.setdefault(p, {})[m] = c
        out: dict = {}
        used = False
        for p, v in by_param.items():
            r, u = self.reduce_component(v, certify)
            used = used or u
            for m, c in r.items():
                if c:
                    out[(m, p)] = normalize(c)
        return Form(out), used

    def is_zero(self, x: Form) -> bool:
        return not self.reduce(x)[0]


_DEFAULT: dict = {}


def default_reducer(support: str = "restricted") -> Reducer:
    r = _DEFAULT.get(support)
    if r is None:
        r = _DEFAULT.setdefault(support, Reducer(build_ideal(), support))
    return r


def reduce_mod_ideal(x: Form, support: str = "restricted") -> Form:
    return default_reducer(support).reduce(x)[0]
