"""
Complete flags in ``F_q^n`` as an ``H_n(0)``-module in characteristic ``p``.

``T_i`` sends a flag to the sum of the ``q`` flags that agree with it
everywhere except in the ``i``-dimensional subspace.  Coefficients live
in ``F_p`` where ``p`` is the characteristic of ``F_q``, so ``q = 0``.

>>> len(enumerate_flags(3, 2)), len(enumerate_flags(3, 3))
(21, 52)
>>> {tuple(a): c for a, c in flag_composition_factors(2, 2).items()}
{(2,): 1, (1, 1): 2}
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .charmap import QSymElement, hall_littlewood
from .combinat import Composition, _check_size, compositions_of
from .errors import ConsistencyError, SizeLimitError, UnsupportedError
from .hecke0 import FiniteModule, composition_factors, kernel_hilbert_series
from .linalg import Echelon, PrimeField, RationalField, rank
from .qtarith import BivariatePolynomial, q_factorial, q_multinomial, ribbon_number_q

__all__ = [
    "GaloisField", "Flag", "FlagSpaceModule", "enumerate_flags", "hecke_action_flags",
    "flag_composition_factors", "flag_factor_table", "flag_characteristic",
    "factor_table_csv", "ChainComplex", "tits_chain_complex", "partial_flags",
    "DEFAULT_FLAG_CAP",
]

DEFAULT_FLAG_CAP = 1000


# ---------------------------------------------------------------- fields

def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, m = 0, q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"q={q} is not a prime power")
    return p, k


class GaloisField:
    """``F_q`` with elements ``0..q-1`` (base-``p`` digits are polynomial coefficients)."""

    def __init__(self, q: int):
        self.q = q
        self.p, self.k = _prime_power(q)
        p, k = self.p, self.k
        self.modulus = self._irreducible() if k > 1 else None
        self.add_table = [[self._add(a, b) for b in range(q)] for a in range(q)]
        self.mul_table = [[self._mul(a, b) for b in range(q)] for a in range(q)]
        self.neg = [next(b for b in range(q) if self.add_table[a][b] == 0) for a in range(q)]
        self.inv = [None] + [next(b for b in range(q) if self.mul_table[a][b] == 1) for a in range(1, q)]

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _from_digits(self, ds):
        return sum(d * self.p ** i for i, d in enumerate(ds))

    def _add(self, a, b):
        return self._from_digits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _polymulmod(self, x, y, mod):
        p = self.p
        prod = [0] * (len(x) + len(y) - 1)
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                prod[i + j] = (prod[i + j] + a * b) % p
        if mod is not None:
            k = len(mod) - 1  # monic of degree k
            for d in range(len(prod) - 1, k - 1, -1):
                c = prod[d]
                if c:
                    for j in range(k + 1):
                        prod[d - k + j] = (prod[d - k + j] - c * mod[j]) % p
            prod = prod[:k]
        return prod

    def _irreducible(self):
        p, k = self.p, self.k
        for tail in product(range(p), repeat=k):
            mod = list(tail) + [1]
            if mod[0] == 0:
                continue
            # no roots / no factor of degree <= k/2: brute-force over monic divisors
            if all(not self._divides(list(d) + [1], mod) for deg in range(1, k // 2 + 1)
                   for d in product(range(p), repeat=deg)):
                return mod
        raise ConsistencyError("no irreducible polynomial found")

    def _divides(self, d, f):
        f = list(f)
        p, kd = self.p, len(d) - 1
        for i in range(len(f) - 1, kd - 1, -1):
            c = f[i]
            if c:
                for j in range(kd + 1):
                    f[i - kd + j] = (f[i - kd + j] - c * d[j]) % p
        return not any(f[:kd])

    def _mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        return self._from_digits(self._polymulmod(self._digits(a), self._digits(b), self.modulus))

    def add(self, a, b):
        return self.add_table[a][b]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def sub(self, a, b):
        return self.add_table[a][self.neg[b]]


@lru_cache(maxsize=None)
def _field(q: int) -> GaloisField:
    return GaloisField(q)


def _rref(rows, F: GaloisField) -> tuple:
    """Canonical reduced row echelon form of the span of ``rows``."""
    m = [list(r) for r in rows]
    out = []
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv[m[r][c]]
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        r += 1
    for i in range(r):
        out.append(tuple(m[i]))
    return tuple(out)


def _span_vectors(rows, F: GaloisField, n: int):
    for coeffs in product(range(F.q), repeat=len(rows)):
        v = [0] * n
        for c, row in zip(coeffs, rows):
            if c:
                v = [F.add(x, F.mul(c, y)) for x, y in zip(v, row)]
        yield tuple(v)


# ---------------------------------------------------------------- flags

@dataclass(frozen=True, order=True)
class Flag:
    """``V_1 < V_2 < ... < V_{n-1}``, each subspace in reduced echelon form."""

    n: int
    q: int
    spaces: tuple

    def subspace(self, i: int) -> tuple:
        if i <= 0:
            return ()
        if i >= self.n:
            return tuple(tuple(int(r == c) for c in range(self.n)) for r in range(self.n))
        return self.spaces[i - 1]

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.q, "spaces": [[list(r) for r in V] for V in self.spaces]}


def flag_count(n: int, q: int) -> int:
    return q_factorial(n).evaluate(q=q, t=1)


def _interpolating(lower: tuple, upper: tuple, F: GaloisField, n: int) -> list:
    """All subspaces strictly between ``lower`` and ``upper`` of dimension ``dim lower + 1``."""
    out = set()
    target = len(lower) + 1
    for v in _span_vectors(upper, F, n):
        W = _rref(list(lower) + [v], F)
        if len(W) == target:
            out.add(W)
    return sorted(out)


def enumerate_flags(n: int, q: int, cap: int = DEFAULT_FLAG_CAP) -> list[Flag]:
    """Every complete flag in ``F_q^n``, sorted."""
    _check_size(n, 12)
    total = flag_count(n, q)
    if total > cap:
        raise SizeLimitError(f"{total} flags for n={n}, q={q} exceeds the cap {cap}")
    F = _field(q)
    full = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
    chains = [()]
    for _ in range(n - 1):
        nxt = []
        for ch in chains:
            lower = ch[-1] if ch else ()
            for W in _interpolating(lower, full, F, n):
                nxt.append(ch + (W,))
        chains = nxt
    flags = sorted(Flag(n, q, ch) for ch in chains)
    if len(flags) != total or len(set(flags)) != total:
        raise ConsistencyError("flag enumeration does not match [n]!_q")
    return flags


@dataclass
class FlagSpaceModule:
    n: int
    q: int
    p: int
    flags: list
    module: FiniteModule

    @property
    def field(self):
        return self.module.field


def hecke_action_flags(n: int, q: int, cap: int = DEFAULT_FLAG_CAP) -> FlagSpaceModule:
    """``T_i F = sum of the q flags differing from F only in V_i``; relations checked mod ``p``."""
    flags = enumerate_flags(n, q, cap)
    F = _field(q)
    index = {f: k for k, f in enumerate(flags)}
    fp = PrimeField(F.p)
    mats = []
    for i in range(1, n):
        cols = []
        for f in flags:
            col = {}
            for W in _interpolating(f.subspace(i - 1), f.subspace(i + 1), F, n):
                if W == f.subspace(i):
                    continue
                g = Flag(n, q, f.spaces[:i - 1] + (W,) + f.spaces[i:])
                col[index[g]] = 1
            if len(col) != q:
                raise ConsistencyError("fiber of a flag does not have q + 1 elements")
            cols.append(col)
        mats.append(cols)
    module = FiniteModule(n, len(flags), mats, fp, labels=flags)
    return FlagSpaceModule(n, q, F.p, flags, module)


@dataclass(frozen=True)
class FlagFactorRow:
    alpha: Composition
    dim_Q_alpha: int
    multiplicity: int
    predicted_r_alpha_q: int


def flag_factor_table(n: int, q: int, fm: FlagSpaceModule | None = None) -> list[FlagFactorRow]:
    """Kernel dimensions and multiplicities, each checked against its closed form."""
    fm = hecke_action_flags(n, q) if fm is None else fm
    M = fm.module
    factors = composition_factors(M, "none")
    rows = []
    for a in compositions_of(n):
        dq = kernel_hilbert_series(M, a, "none").evaluate(q=1, t=1)
        mult = factors[a].evaluate(q=1, t=1)
        pred = ribbon_number_q(a).evaluate(q=q, t=1)
        if dq != q_multinomial(n, a).evaluate(q=q, t=1):
            raise ConsistencyError(f"dim Q_{tuple(a)} differs from the q-multinomial at q={q}")
        if mult != pred:
            raise ConsistencyError(f"multiplicity of C_{tuple(a)} differs from r_alpha({q})")
        rows.append(FlagFactorRow(a, dq, mult, pred))
    if sum(r.multiplicity for r in rows) != len(fm.flags):
        raise ConsistencyError("multiplicities do not add up to the flag count")
    return rows


def flag_composition_factors(n: int, q: int, fm: FlagSpaceModule | None = None) -> dict:
    return {r.alpha: r.multiplicity for r in flag_factor_table(n, q, fm)}


def flag_characteristic(n: int, q: int, fm: FlagSpaceModule | None = None) -> QSymElement:
    """``Ch`` of the flag module, checked against ``H~_{1^n}(x; t)`` at ``t = q``."""
    ch = QSymElement(n, "F", flag_composition_factors(n, q, fm))
    hl = hall_littlewood((1,) * n).to_qsym().specialize(t=q)
    if ch != hl:
        raise ConsistencyError("flag characteristic differs from the Hall-Littlewood function")
    return ch


def factor_table_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["alpha", "dim_Q_alpha", "multiplicity", "predicted_r_alpha_q"])
    for r in rows:
        w.writerow([",".join(map(str, r.alpha)), r.dim_Q_alpha, r.multiplicity, r.predicted_r_alpha_q])
    return buf.getvalue()


# ---------------------------------------------------------------- partial flags

def partial_flags(n: int, q: int, S, flags=None) -> list[tuple]:
    """Chains ``(V_d : d in S)`` obtained by forgetting the other members of complete flags."""
    S = tuple(sorted(S))
    flags = enumerate_flags(n, q) if flags is None else flags
    return sorted({tuple(f.subspace(d) for d in S) for f in flags})


@dataclass
class ChainComplex:
    """``C_S`` for ``S`` inside ``D(alpha)``, graded by ``|S|``; ``boundaries[k]: C_k -> C_{k-1}``."""

    n: int
    q: int
    alpha: Composition
    terms: dict          # frozenset S -> list of partial flags
    dims: list           # dims[k] = sum of |C_S| over |S| = k
    boundaries: dict     # k -> (list of column dicts, row offsets)
    ranks: dict
    chi_dimension: int

    def euler_characteristic(self) -> int:
        top = len(self.alpha) - 1
        return sum((-1) ** (top - k) * d for k, d in enumerate(self.dims))


def tits_chain_complex(n: int, q: int, alpha, field=None) -> ChainComplex:
    """``0 -> chi -> C_{D(alpha)} -> (+)_{|S|=|D|-1} C_S -> ... -> C_{empty} -> 0``.

    The boundary forgets one subspace; dropping the ``j``-th smallest member
    of ``S`` carries the sign ``(-1)^j``.  Checks ``d^2 = 0`` and exactness
    at every term except the leftmost, whose kernel is ``chi``.
    """
    alpha = Composition(alpha)
    if alpha.n != n:
        raise ValueError("alpha must be a composition of n")
    if n > 4 or (n == 4 and q != 2):
        raise SizeLimitError("chain complexes are limited to n <= 3, or n = 4 with q = 2")
    fld = RationalField() if field is None else field
    flags = enumerate_flags(n, q)
    D = tuple(alpha.descents)
    top = len(D)
    terms = {}
    for k in range(top + 1):
        for S in combinations(D, k):
            terms[frozenset(S)] = partial_flags(n, q, S, flags)
    # global index within each degree
    offsets, dims = {}, []
    for k in range(top + 1):
        off = 0
        for S in combinations(D, k):
            offsets[frozenset(S)] = off
            off += len(terms[frozenset(S)])
        dims.append(off)
    boundaries = {}
    for k in range(1, top + 1):
        cols = []
        for S in combinations(D, k):
            for pf in terms[frozenset(S)]:
                col = {}
                for j, d in enumerate(S):
                    T = S[:j] + S[j + 1:]
                    face = pf[:j] + pf[j + 1:]
                    idx = offsets[frozenset(T)] + terms[frozenset(T)].index(face)
                    col[idx] = fld.normalize(col.get(idx, 0) + (-1) ** j)
                cols.append({r: c for r, c in col.items() if c})
        boundaries[k] = cols
    ranks = {k: rank(cols, fld) for k, cols in boundaries.items()}
    for k in range(2, top + 1):
        for col in boundaries[k]:
            image = {}
            for r, c in col.items():
                for s, e in boundaries[k - 1][r].items():
                    image[s] = fld.normalize(image.get(s, 0) + c * e)
            if any(image.values()):
                raise ConsistencyError("boundary does not square to zero (sign convention)")
    # exactness at C_k for k < top: ker d_k = im d_{k+1}
    for k in range(top):
        ker = dims[k] - (ranks[k] if k >= 1 else 0)
        if ranks[k + 1] != ker:
            raise ConsistencyError(f"complex is not exact at degree {k} (sign convention)")
    chi = dims[top] - (ranks[top] if top >= 1 else 0)
    expected = ribbon_number_q(alpha).evaluate(q=q, t=1)
    if chi != expected:
        raise ConsistencyError(f"dim chi = {chi} differs from r_alpha({q}) = {expected}")
    cc = ChainComplex(n, q, alpha, terms, dims, boundaries, ranks, chi)
    if cc.euler_characteristic() != chi:
        raise ConsistencyError("alternating dimension sum differs from dim chi")
    return cc
