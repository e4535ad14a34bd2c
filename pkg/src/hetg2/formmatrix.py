"""Matrices of forms, matrix wedge, trace, and the 3x3 box/cross operations.

Layout of the 7x7 matrices: index 0 is e0, 1..3 are e1..e3, 4..6 are f1..f3.
"""

from __future__ import annotations

from .exterior import Form, gens, wedge


class FormMatrix:
    """Immutable rectangular grid of Forms."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries):
        rows = [tuple(Form.lift(x) for x in r) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        self._e = tuple(rows)
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def zeros(cls, r: int, c: int | None = None) -> "FormMatrix":
        c = r if c is None else c
        return cls([[Form()] * c for _ in range(r)])

    @classmethod
    def identity(cls, n: int) -> "FormMatrix":
        return cls([[Form.const(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, items) -> "FormMatrix":
        return cls([[x] for x in items])

    @classmethod
    def row(cls, items) -> "FormMatrix":
        return cls([list(items)])

    @classmethod
    def diag(cls, items) -> "FormMatrix":
        items = list(items)
        n = len(items)
        return cls([[items[i] if i == j else Form() for j in range(n)] for i in range(n)])

    def __getitem__(self, ij) -> Form:
        i, j = ij
        return self._e[i][j]

    def entries(self):
        return [list(r) for r in self._e]

    def vector(self) -> list:
        if self.cols == 1:
            return [r[0] for r in self._e]
        if self.rows == 1:
            return list(self._e[0])
        raise ValueError("not a vector")

    @property
    def shape(self):
        return (self.rows, self.cols)

    def map(self, fn) -> "FormMatrix":
        return FormMatrix([[fn(x) for x in r] for r in self._e])

    def transpose(self) -> "FormMatrix":
        return FormMatrix([[self._e[i][j] for i in range(self.rows)] for j in range(self.cols)])

    T = property(transpose)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self._e for x in r)

    def degrees(self) -> set:
        out = set()
        for r in self._e:
            for x in r:
                out |= x.degrees()
        return out

    def assert_degree(self, p: int) -> "FormMatrix":
        ds = self.degrees()
        if ds and ds != {p}:
            raise AssertionError(f"expected entries of degree {p}, found {sorted(ds)}")
        return self

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        return FormMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self._e, other._e)])

    def __sub__(self, other):
        self._check_same(other)
        return FormMatrix([[x - y for x, y in zip(r, s)] for r, s in zip(self._e, other._e)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, s):
        """Scale every entry by a rational or ParamPoly."""
        return self.map(lambda x: x * s)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return mwedge(self, other)

    def __eq__(self, other):
        return isinstance(other, FormMatrix) and self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def subs(self, **values) -> "FormMatrix":
        return self.map(lambda x: x.subs(**values))

    def render(self) -> str:
        lines = []
        for i, r in enumerate(self._e):
            lines.append(f"[{i}] " + " | ".join(x.render() for x in r))
        return "\n".join(lines)

    def nonzero_entries(self):
        return [((i, j), x) for i, r in enumerate(self._e) for j, x in enumerate(r) if x]

    def __repr__(self):
        return f"FormMatrix({self.rows}x{self.cols})"


def mwedge(x: FormMatrix, y: FormMatrix) -> FormMatrix:
    if x.cols != y.rows:
        raise ValueError(f"cannot wedge {x.shape} with {y.shape}")
    out = []
    for i in range(x.rows):
        row = []
        for j in range(y.cols):
            acc = Form()
            for s in range(x.cols):
                a, b = x[i, s], y[s, j]
                if a and b:
                    acc = acc + wedge(a, b)
            row.append(acc)
        out.append(row)
    return FormMatrix(out)


def mtrace(x: FormMatrix) -> Form:
    if x.rows != x.cols:
        raise ValueError("trace of a non-square matrix")
    acc = Form()
    for i in range(x.rows):
        acc = acc + x[i, i]
    return acc


def lwedge(f, x: FormMatrix) -> FormMatrix:
    """Entrywise f ^ X."""
    f = Form.lift(f)
    return x.map(lambda y: wedge(f, y))


def rwedge(x: FormMatrix, f) -> FormMatrix:
    """Entrywise X ^ f."""
    f = Form.lift(f)
    return x.map(lambda y: wedge(y, f))


def anticommutator(x: FormMatrix, y: FormMatrix) -> FormMatrix:
    return mwedge(x, y) + mwedge(y, x)


def outer(a: FormMatrix, b: FormMatrix) -> FormMatrix:
    """a ^ b^T for two column vectors."""
    return mwedge(a, b.transpose())


def _vec3(v) -> list:
    items = v.vector() if isinstance(v, FormMatrix) else [Form.lift(x) for x in v]
    if len(items) != 3:
        raise ValueError(f"expected a 3-vector, got {len(items)} entries")
    return items


def boxop(v) -> FormMatrix:
    a1, a2, a3 = _vec3(v)
    degs = set().union(*(x.degrees() for x in (a1, a2, a3)))
    if len(degs) > 1:
        raise ValueError("box operand must have entries of equal degree")
    z = Form()
    return FormMatrix([[z, a3, -a2], [-a3, z, a1], [a2, -a1, z]])


def cross(a, b) -> FormMatrix:
    a1, a2, a3 = _vec3(a)
    b1, b2, b3 = _vec3(b)
    for x in (a1, a2, a3, b1, b2, b3):
        if not x.is_homogeneous(1):
            raise ValueError("cross product is defined for vectors of 1-forms")
    return FormMatrix.column([
        wedge(a2, b3) - wedge(a3, b2),
        wedge(a3, b1) - wedge(a1, b3),
        wedge(a1, b2) - wedge(a2, b1),
    ])


def block7(corner, row, col, blocks) -> FormMatrix:
    """Assemble the 1+3+3 layout.

    ``row`` is a pair of 1x3 matrices, ``col`` a pair of 3x1 matrices and
    ``blocks`` the four 3x3 blocks ((top-left, top-right), (bottom-left,
    bottom-right)).  ``None`` stands for a zero block.
    """
    r1, r2 = (FormMatrix.zeros(1, 3) if r is None else r for r in row)
    c1, c2 = (FormMatrix.zeros(3, 1) if c is None else c for c in col)
    (b11, b12), (b21, b22) = [[FormMatrix.zeros(3) if b is None else b for b in pair]
                              for pair in blocks]
    for m, shape in ((r1, (1, 3)), (r2, (1, 3)), (c1, (3, 1)), (c2, (3, 1)),
                     (b11, (3, 3)), (b12, (3, 3)), (b21, (3, 3)), (b22, (3, 3))):
        if m.shape != shape:
            raise ValueError(f"block of shape {m.shape}, expected {shape}")
    out = [[Form.lift(corner)] + r1.entries()[0] + r2.entries()[0]]
    for i in range(3):
        out.append([c1[i, 0]] + b11.entries()[i] + b12.entries()[i])
    for i in range(3):
        out.append([c2[i, 0]] + b21.entries()[i] + b22.entries()[i])
    return FormMatrix(out)


def blocks_of(x: FormMatrix):
    """Inverse of block7: (corner, (r1, r2), (c1, c2), ((b11, b12), (b21, b22)))."""
    if x.shape != (7, 7):
        raise ValueError("blocks_of needs a 7x7 matrix")
    e = x.entries()
    sub = lambda rs, cs: FormMatrix([[e[i][j] for j in cs] for i in rs])  # noqa: E731
    top, mid, bot = [0], [1, 2, 3], [4, 5, 6]
    return (e[0][0], (sub(top, mid), sub(top, bot)), (sub(mid, top), sub(bot, top)),
            ((sub(mid, mid), sub(mid, bot)), (sub(bot, mid), sub(bot, bot))))


def scalar_identity3(f) -> FormMatrix:
    """f * I for a 3x3 identity."""
    return FormMatrix.diag([Form.lift(f)] * 3)


def coframe_vectors():
    """(e0, e, Je) with e, Je as 3x1 FormMatrix columns."""
    e0, e1, f1, e2, f2, e3, f3 = gens("e0", "e1", "f1", "e2", "f2", "e3", "f3")
    return e0, FormMatrix.column([e1, e2, e3]), FormMatrix.column([f1, f2, f3])


def coframe_column() -> FormMatrix:
    e0, e, je = coframe_vectors()
    return FormMatrix.column([e0] + e.vector() + je.vector())



__all__ = [
    "FormMatrix", "mwedge", "mtrace", "lwedge", "rwedge", "anticommutator", "outer",
    "boxop", "cross", "block7", "blocks_of", "scalar_identity3", "coframe_vectors",
    "coframe_column",
]
