"""
Compositions, permutations, partitions and tableaux.

Conventions used throughout the package:

* permutations are 1-indexed one-line tuples, ``(u * v)(i) = u(v(i))``;
* ``D(w)`` is the set of positions ``i`` with ``w(i) > w(i+1)``;
* ``s_i * w`` swaps the *values* ``i, i+1``, ``w * s_i`` swaps positions;
* a composition is identified with its descent set
  ``{a_1, a_1 + a_2, ...}`` inside ``{1, ..., n-1}``;
* tableaux store their rows top to bottom (English notation); the reading
  word reads rows bottom to top, each left to right.

>>> a = Composition((2, 3, 1, 1))
>>> a.descents
(2, 5, 6)
>>> [tuple(b) for b in ribbon_conjugates(a)]
[(1, 1, 3, 2), (1, 2, 1, 3), (3, 1, 2, 1)]
>>> [tuple(w) for w in descent_class(Composition((1, 2, 1)))]
[(2, 1, 4, 3), (3, 1, 4, 2), (3, 2, 4, 1), (4, 1, 3, 2), (4, 2, 3, 1)]
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations as _itertools_permutations

from .errors import SizeLimitError

__all__ = [
    "DEFAULT_MAX_N", "Composition", "Permutation", "Partition", "Tableau",
    "compositions_of", "partitions_of", "permutations_of", "ribbon_conjugates",
    "descent_class", "longest_parabolic", "w0", "w1", "weak_leq",
    "ribbon_cells", "standard_tableaux", "kostka", "two_line_array", "rsk",
]

DEFAULT_MAX_N = 12


def _check_size(n: int, max_n: int | None) -> None:
    bound = DEFAULT_MAX_N if max_n is None else max_n
    if n < 1 or n > bound:
        raise SizeLimitError(f"n={n} outside the supported range 1..{bound}")


class Composition(tuple):
    """An ordered tuple of positive parts."""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_descents(cls, descents, n: int) -> "Composition":
        ds = sorted(set(descents))
        if ds and (ds[0] < 1 or ds[-1] > n - 1):
            raise ValueError(f"descent set {ds} not inside [1, {n - 1}]")
        cuts = [0] + ds + [n]
        return cls(b - a for a, b in zip(cuts, cuts[1:]))

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def descents(self) -> tuple[int, ...]:
        out, s = [], 0
        for p in self[:-1]:
            s += p
            out.append(s)
        return tuple(out)

    @property
    def partial_sums(self) -> tuple[int, ...]:
        """``(sigma_0, ..., sigma_l)`` with ``sigma_0 = 0``."""
        out = [0]
        for p in self:
            out.append(out[-1] + p)
        return tuple(out)

    @property
    def maj(self) -> int:
        return sum(self.descents)

    def reverse(self) -> "Composition":
        return Composition(self[::-1])

    def complement(self) -> "Composition":
        n = self.n
        ds = set(self.descents)
        return Composition.from_descents([i for i in range(1, n) if i not in ds], n)

    def transpose(self) -> "Composition":
        return self.reverse().complement()

    def preceq(self, other: "Composition") -> bool:
        """``self`` is coarser than ``other``: same size, ``D(self) <= D(other)``."""
        return self.n == other.n and set(self.descents) <= set(other.descents)

    def coarsenings(self) -> list["Composition"]:
        """All ``beta`` with ``beta`` preceq ``self``, in :func:`compositions_of` order."""
        ds = self.descents
        subsets = [c for k in range(len(ds) + 1) for c in combinations(ds, k)]
        return [Composition.from_descents(s, self.n) for s in subsets]

    def refinements(self) -> list["Composition"]:
        """All ``beta`` with ``self`` preceq ``beta``."""
        n = self.n
        own = set(self.descents)
        rest = [i for i in range(1, n) if i not in own]
        subsets = [c for k in range(len(rest) + 1) for c in combinations(rest, k)]
        out = [Composition.from_descents(own | set(s), n) for s in subsets]
        return sorted(out, key=_composition_key)

    def sorted_parts(self) -> "Partition":
        return Partition(self)

    def __repr__(self) -> str:
        return f"Composition({tuple(self)})"

    __str__ = tuple.__repr__


def _composition_key(a: Composition):
    d = a.descents
    return (len(d), d)


def compositions_of(n: int, max_n: int | None = None) -> list[Composition]:
    """All ``2^(n-1)`` compositions of ``n``, ordered by (``|D|``, ``D`` lex).

    >>> [tuple(a) for a in compositions_of(3)]
    [(3,), (1, 2), (2, 1), (1, 1, 1)]
    """
    _check_size(n, max_n)
    return Composition((n,)).refinements()


def ribbon_conjugates(alpha: Composition) -> tuple[Composition, Composition, Composition]:
    """Return ``(reverse, complement, transpose)`` of a ribbon."""
    alpha = Composition(alpha)
    return alpha.reverse(), alpha.complement(), alpha.transpose()


class Permutation(tuple):
    """A permutation of ``{1, ..., n}`` in one-line notation."""

    __slots__ = ()

    def __new__(cls, images=()):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(range(n, 0, -1))

    @classmethod
    def simple(cls, i: int, n: int) -> "Permutation":
        w = list(range(1, n + 1))
        w[i - 1], w[i] = w[i], w[i - 1]
        return cls(w)

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(self[x - 1] for x in other)

    def inverse(self) -> "Permutation":
        out = [0] * len(self)
        for pos, val in enumerate(self, 1):
            out[val - 1] = pos
        return Permutation(out)

    def inv(self) -> int:
        w = self
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    length = inv

    def descents(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, len(self)) if self[i - 1] > self[i])

    def maj(self) -> int:
        return sum(self.descents())

    def descent_composition(self) -> Composition:
        return Composition.from_descents(self.descents(), len(self))

    def is_left_descent(self, i: int) -> bool:
        """True when ``l(s_i w) < l(w)``, i.e. ``i+1`` sits left of ``i``."""
        return self.index(i + 1) < self.index(i)

    def left_descents(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, len(self)) if self.is_left_descent(i))

    def left_mul_simple(self, i: int) -> "Permutation":
        """``s_i * w``: swap the values ``i`` and ``i+1``."""
        return Permutation(i + 1 if x == i else i if x == i + 1 else x for x in self)

    def right_mul_simple(self, i: int) -> "Permutation":
        """``w * s_i``: swap positions ``i`` and ``i+1``."""
        w = list(self)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(w)

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced word ``(i_1, ..., i_k)`` with ``w = s_{i_1} ... s_{i_k}``.

        Built by repeatedly stripping the smallest left descent, so the
        output is a fixed function of ``w``.
        """
        word = []
        w = self
        while True:
            lds = w.left_descents()
            if not lds:
                return tuple(word)
            i = lds[0]
            word.append(i)
            w = w.left_mul_simple(i)

    def __repr__(self) -> str:
        return f"Permutation({tuple(self)})"

    __str__ = tuple.__repr__


def permutations_of(n: int, max_n: int | None = None) -> list[Permutation]:
    """All of ``S_n`` in lexicographic order of one-line notation."""
    _check_size(n, max_n)
    return [Permutation(p) for p in _itertools_permutations(range(1, n + 1))]


def weak_leq(u: Permutation, w: Permutation) -> bool:
    """Left weak order: ``w = v u`` with ``l(w) = l(v) + l(u)``."""
    return w.inv() == u.inv() + (w * u.inverse()).inv()


def longest_parabolic(J, n: int) -> Permutation:
    """Longest element of the parabolic subgroup generated by ``s_j, j in J``."""
    J = set(J)
    w = []
    start = 1
    for i in range(1, n + 1):
        if i not in J:
            w.extend(range(i, start - 1, -1))
            start = i + 1
    return Permutation(w)


def _class_key(w: Permutation):
    return (w.inv(), tuple(w))


def descent_class(alpha: Composition, max_n: int | None = None) -> list[Permutation]:
    """All ``w`` with ``D(w) = D(alpha)``, sorted by (``inv``, one-line).

    The first entry is ``w_0(alpha)``, the last ``w_1(alpha)``.
    """
    alpha = Composition(alpha)
    n = alpha.n
    _check_size(n, max_n)
    target = alpha.descents
    out = []

    def fill(k, remaining, prefix):
        if k == len(alpha):
            w = Permutation(prefix)
            if w.descents() == target:
                out.append(w)
            return
        for block in combinations(remaining, alpha[k]):
            rest = [x for x in remaining if x not in block]
            fill(k + 1, rest, prefix + list(block))

    fill(0, list(range(1, n + 1)), [])
    return sorted(out, key=_class_key)


def ribbon_cells(alpha: Composition) -> list[tuple[int, int]]:
    """Cells ``(row, col)`` of the ribbon in English coordinates.

    Row 0 is the top row (part ``alpha[-1]``); the bottom row holds
    ``alpha[0]`` and starts in column 0.
    """
    alpha = Composition(alpha)
    ell = len(alpha)
    cells = []
    col = 0
    for k, part in enumerate(alpha):
        row = ell - 1 - k
        cells.extend((row, c) for c in range(col, col + part))
        col += part - 1
    return sorted(cells)


def _reading_word_from_cells(filling: dict[tuple[int, int], int]) -> Permutation:
    rows = sorted({r for r, _ in filling}, reverse=True)
    word = []
    for r in rows:
        word.extend(filling[cell] for cell in sorted(c for c in filling if c[0] == r))
    return Permutation(word)


def w0(alpha: Composition) -> Permutation:
    """Column filling of the ribbon (columns left to right, each top to bottom)."""
    cells = ribbon_cells(alpha)
    order = sorted(cells, key=lambda rc: (rc[1], rc[0]))
    return _reading_word_from_cells({cell: k for k, cell in enumerate(order, 1)})


def w1(alpha: Composition) -> Permutation:
    """Row filling of the ribbon (rows top to bottom, each left to right)."""
    cells = ribbon_cells(alpha)
    return _reading_word_from_cells({cell: k for k, cell in enumerate(sorted(cells), 1)})


class Partition(tuple):
    """A partition stored with weakly decreasing positive parts."""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError(f"partition parts must be nonnegative: {parts}")
        return super().__new__(cls, sorted((p for p in parts if p), reverse=True))

    @property
    def n(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def n_statistic(self) -> int:
        """``n(lambda) = lambda_2 + 2 lambda_3 + ...``."""
        return sum(i * p for i, p in enumerate(self))

    def cells(self) -> list[tuple[int, int]]:
        return [(r, c) for r, p in enumerate(self) for c in range(p)]

    def hook_lengths(self) -> list[int]:
        conj = self.conjugate()
        return [self[r] - c + conj[c] - r - 1 for r, c in self.cells()]

    def is_hook(self) -> bool:
        return len(self) <= 1 or self[1] <= 1

    def as_hook_composition(self) -> Composition:
        """A hook viewed as the composition ``(1, ..., 1, n - h + 1)``."""
        if not self.is_hook():
            raise ValueError(f"{tuple(self)} is not a hook")
        return Composition(sorted(self))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    __str__ = tuple.__repr__


def partitions_of(n: int) -> list[Partition]:
    """Partitions of ``n`` in decreasing lexicographic order."""
    out = []

    def gen(rest, cap, prefix):
        if rest == 0:
            out.append(Partition(prefix))
            return
        for p in range(min(rest, cap), 0, -1):
            gen(rest - p, p, prefix + [p])

    gen(n, n, [])
    return out


@dataclass(frozen=True)
class Tableau:
    """A filled shape; ``rows`` are listed top to bottom."""

    shape: tuple
    rows: tuple[tuple[int, ...], ...]

    def entries(self) -> list[int]:
        return [x for row in self.rows for x in row]

    def reading_word(self) -> tuple[int, ...]:
        return tuple(x for row in reversed(self.rows) for x in row)

    def _row_of(self) -> dict[int, int]:
        return {x: r for r, row in enumerate(self.rows) for x in row}

    def is_standard(self) -> bool:
        return sorted(self.entries()) == list(range(1, len(self.entries()) + 1))

    def descents(self) -> tuple[int, ...]:
        """``i`` such that ``i+1`` lies in a strictly lower row (standard only)."""
        where = self._row_of()
        n = len(where)
        return tuple(i for i in range(1, n) if where[i + 1] > where[i])

    def maj(self) -> int:
        return sum(self.descents())

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def _standard_fillings(cells: list[tuple[int, int]]):
    """Linear extensions of the row/column order on a skew diagram."""
    cellset = set(cells)
    n = len(cells)
    filling: dict[tuple[int, int], int] = {}

    def ready(cell):
        r, c = cell
        left, up = (r, c - 1), (r - 1, c)
        return (left not in cellset or left in filling) and (up not in cellset or up in filling)

    def rec(k):
        if k > n:
            yield dict(filling)
            return
        for cell in cells:
            if cell not in filling and ready(cell):
                filling[cell] = k
                yield from rec(k + 1)
                del filling[cell]

    yield from rec(1)


def _rows_from_filling(filling) -> tuple[tuple[int, ...], ...]:
    rows = sorted({r for r, _ in filling})
    return tuple(tuple(filling[c] for c in sorted(x for x in filling if x[0] == r)) for r in rows)


def standard_tableaux(shape, max_n: int | None = None) -> list[Tableau]:
    """Standard tableaux of a ribbon (``Composition``) or straight shape.

    Any other sequence is read as a partition.  Output is sorted by
    reading word.
    """
    if isinstance(shape, Composition):
        cells = ribbon_cells(shape)
    else:
        shape = Partition(shape)
        cells = shape.cells()
    _check_size(max(len(cells), 1), max_n)
    tabs = [Tableau(tuple(shape), _rows_from_filling(f)) for f in _standard_fillings(cells)]
    return sorted(tabs, key=Tableau.reading_word)


def kostka(lam, mu) -> int:
    """Number of semistandard tableaux of shape ``lam`` and content ``mu``.

    >>> kostka((2, 1), (1, 1, 1)), kostka((1, 1), (2,))
    (2, 0)
    """
    lam, mu = Partition(lam), tuple(int(m) for m in mu if m)
    if lam.n != sum(mu):
        raise ValueError(f"size mismatch: |{tuple(lam)}| != |{mu}|")
    return _kostka(tuple(lam), mu)


@lru_cache(maxsize=None)
def _kostka(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    # peel off the cells holding the largest letter: a horizontal strip
    if not mu:
        return 1 if not lam else 0
    k = mu[-1]
    total = 0
    lam = list(lam)

    def strips(i, left, cur):
        nonlocal total
        if i == len(lam):
            if left == 0:
                total += _kostka(tuple(p for p in cur if p), mu[:-1])
            return
        nxt = lam[i + 1] if i + 1 < len(lam) else 0
        for take in range(min(left, lam[i] - nxt) + 1):
            cur.append(lam[i] - take)
            strips(i + 1, left - take, cur)
            cur.pop()

    strips(0, k, [])
    return total


def two_line_array(w: Permutation, mu) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Encode ``w`` with ``D(w)`` inside ``D(mu)`` as a two-line array of type ``mu``.

    >>> two_line_array(Permutation((3, 5, 6, 1, 2, 4, 7)), (3, 2, 2))
    ((1, 1, 1, 2, 2, 3, 3), (3, 5, 6, 1, 2, 4, 7))
    """
    w = Permutation(w)
    mu = Composition(mu)
    if mu.n != len(w):
        raise ValueError("type and permutation sizes differ")
    if not set(w.descents()) <= set(mu.descents):
        raise ValueError(f"D(w)={w.descents()} is not inside D(mu)={mu.descents}")
    top = tuple(k for k, part in enumerate(mu, 1) for _ in range(part))
    return top, tuple(w)


def rsk(word, top=None) -> tuple[Tableau, Tableau]:
    """Row-insertion RSK of a two-line array.

    ``word`` is the bottom line (distinct letters), ``top`` the weakly
    increasing top line (defaults to ``1..n``).  Returns ``(P, Q)``.
    """
    bottom = tuple(int(x) for x in word)
    top = tuple(range(1, len(bottom) + 1)) if top is None else tuple(int(x) for x in top)
    if len(top) != len(bottom):
        raise ValueError("two-line array lines have different lengths")
    if len(set(bottom)) != len(bottom):
        raise ValueError("bottom line must have distinct entries")
    for (a, b), (c, d) in zip(zip(top, bottom), zip(top[1:], bottom[1:])):
        if a > c or (a == c and b > d):
            raise ValueError("two-line array columns are not in lexicographic order")
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for t, x in zip(top, bottom):
        r = 0
        while True:
            if r == len(P):
                P.append([x])
                Q.append([t])
                break
            row = P[r]
            bump = next((j for j, y in enumerate(row) if y > x), None)
            if bump is None:
                row.append(x)
                Q[r].append(t)
                break
            row[bump], x = x, row[bump]
            r += 1
    shape = tuple(len(r) for r in P)
    return (Tableau(shape, tuple(map(tuple, P))), Tableau(shape, tuple(map(tuple, Q))))
