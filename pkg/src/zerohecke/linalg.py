"""
Exact sparse linear algebra over the rationals or a prime field.

Vectors are ``dict[int, value]`` with no stored zeros.  A matrix is a list
of such vectors; whether they are read as rows or columns is up to the
caller.  Nonnegative keys index coordinates; negative keys are reserved
for bookkeeping tags (see :func:`express`).

>>> F = RationalField()
>>> ech = Echelon(F)
>>> ech.add({0: 1, 1: 2}), ech.add({0: 2, 1: 4}), ech.add({1: 1})
(True, False, True)
>>> ech.rank
2
>>> kernel([{0: 1, 1: 1}], 3, F)
[{1: Fraction(1, 1), 0: Fraction(-1, 1)}, {2: Fraction(1, 1)}]
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

__all__ = [
    "RationalField", "PrimeField", "Echelon", "kernel", "rank",
    "express", "transpose", "matvec", "matmul", "identity", "is_invertible",
    "inverse", "dense", "vec_add", "vec_scale",
]


class RationalField:
    char = 0

    def __call__(self, x):
        return Fraction(x)

    def normalize(self, x):
        return x

    def inv(self, x):
        return 1 / Fraction(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.char = p

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.char) % self.char
        return int(x) % self.char

    def normalize(self, x):
        return x % self.char

    def inv(self, x):
        return pow(int(x), -1, self.char)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.char == self.char

    def __hash__(self):
        return hash(("GF", self.char))

    def __repr__(self):
        return f"GF({self.char})"


def vec_add(u: dict, v: dict, field, scale=1) -> dict:
    """``u + scale * v`` as a new vector."""
    out = dict(u)
    norm = field.normalize
    for k, b in v.items():
        val = norm(out.get(k, 0) + scale * b)
        if val:
            out[k] = val
        else:
            out.pop(k, None)
    return out


def vec_scale(v: dict, c, field) -> dict:
    if not c:
        return {}
    norm = field.normalize
    out = {}
    for k, a in v.items():
        val = norm(a * c)
        if val:
            out[k] = val
    return out


class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Pivots are chosen among nonnegative keys only, so tag coordinates
    (negative keys) just ride along.
    """

    def __init__(self, field):
        self.field = field
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        norm = self.field.normalize
        out = {k: norm(x) for k, x in v.items()}
        out = {k: x for k, x in out.items() if x}
        for p in [k for k in out if k in self.rows]:
            c = out.get(p)
            if c:
                _axpy(out, self.rows[p], -c, norm)
        return out

    def contains(self, v: dict) -> bool:
        return not any(k >= 0 for k in self.reduce(v))

    def add(self, v: dict) -> bool:
        r = self.reduce(v)
        keys = [k for k in r if k >= 0]
        if not keys:
            return False
        p = min(keys)
        r = vec_scale(r, self.field.inv(r[p]), self.field)
        norm = self.field.normalize
        for row in self.rows.values():
            c = row.get(p)
            if c:
                _axpy(row, r, -c, norm)
        self.rows[p] = r
        return True

    def basis(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]


def _axpy(target: dict, v: dict, c, norm) -> None:
    for k, b in v.items():
        val = norm(target.get(k, 0) + c * b)
        if val:
            target[k] = val
        else:
            target.pop(k, None)


def rank(vectors, field) -> int:
    ech = Echelon(field)
    for v in vectors:
        ech.add(v)
    return ech.rank


def kernel(rows, ncols: int, field) -> list[dict]:
    """Basis of ``{x : row . x = 0 for every row}`` in ``field^ncols``."""
    ech = Echelon(field)
    for r in rows:
        ech.add(r)
    pivots = ech.rows
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    norm = field.normalize
    # column view of the pivot rows restricted to free columns
    col_entries: dict[int, list] = {}
    for p, row in pivots.items():
        for k, a in row.items():
            if k != p:
                col_entries.setdefault(k, []).append((p, a))
    for f in free:
        v = {f: field(1)}
        for p, a in col_entries.get(f, ()):
            val = norm(-a)
            if val:
                v[p] = val
        out.append(v)
    return out


def express(basis, target: dict, field):
    """Coefficients ``c`` with ``sum c_k basis[k] = target``, or ``None``.

    The basis vectors must be linearly independent.
    """
    ech = Echelon(field)
    for k, b in enumerate(basis):
        tagged = dict(b)
        tagged[-(k + 1)] = field(1)
        if not ech.add(tagged):
            raise ValueError("express() needs linearly independent vectors")
    return _express_with(ech, target, field)


def _express_with(ech: Echelon, target: dict, field):
    r = ech.reduce(target)
    if any(k >= 0 for k in r):
        return None
    norm = field.normalize
    return {-k - 1: norm(-c) for k, c in r.items() if norm(-c)}


class Expresser:
    """Reusable :func:`express` for many targets against one basis."""

    def __init__(self, basis, field):
        self.field = field
        self.ech = Echelon(field)
        self.size = 0
        for k, b in enumerate(basis):
            tagged = dict(b)
            tagged[-(k + 1)] = field(1)
            if not self.ech.add(tagged):
                raise ValueError("Expresser needs linearly independent vectors")
            self.size += 1

    def __call__(self, target: dict):
        return _express_with(self.ech, target, self.field)


def transpose(cols, nrows: int) -> list[dict]:
    rows = [dict() for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, a in col.items():
            rows[i][j] = a
    return rows


def matvec(cols, v: dict, field) -> dict:
    """``A v`` where ``A`` is given by its columns."""
    out: dict = {}
    norm = field.normalize
    for j, c in v.items():
        if c:
            _axpy(out, cols[j], c, norm)
    return out


def matmul(a_cols, b_cols, field) -> list[dict]:
    """Columns of ``A B``."""
    return [matvec(a_cols, col, field) for col in b_cols]


def identity(d: int, field) -> list[dict]:
    return [{j: field(1)} for j in range(d)]


def is_invertible(cols, d: int, field) -> bool:
    return len(cols) == d and rank(cols, field) == d


def inverse(cols, field) -> list[dict]:
    """Columns of ``A^{-1}`` for square invertible ``A`` (columns given)."""
    d = len(cols)
    ex = Expresser(cols, field)
    out = []
    for j in range(d):
        c = ex({j: field(1)})
        if c is None:
            raise ValueError("matrix is singular")
        out.append(c)
    return out


def dense(cols, nrows: int) -> list[list]:
    """Row-major dense copy, for display and hashing."""
    m = [[0] * len(cols) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, a in col.items():
            m[i][j] = a
    return m


def random_combination(vectors, field, rng: Random, spread: int = 1000) -> dict:
    out: dict = {}
    norm = field.normalize
    for v in vectors:
        c = field(rng.randint(-spread, spread))
        if c:
            _axpy(out, v, c, norm)
    return out
