"""
Sparse integer polynomials in ``x_1, ..., x_n`` with the symmetric group
action and Demazure operators.

``pi_i f = (x_i f - x_{i+1} s_i f) / (x_i - x_{i+1})`` and
``pibar_i = pi_i - 1``.  Both are applied monomial by monomial through a
closed form, so no division is ever performed.

>>> x1, x2 = variable(1, 2), variable(2, 2)
>>> str(demazure(1, x1))
'x1 + x2'
>>> str(demazure(1, x2 ** 2))
'-x1*x2'
>>> str(demazure_bar(1, x2 ** 2))
'-x1*x2 - x2^2'
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations as _perms

from .combinat import Permutation

__all__ = [
    "MultivariatePolynomial", "variable", "monomial", "demazure", "demazure_bar",
    "demazure_word", "pi_word", "descent_monomial", "x_subset", "PPartitionEncoding",
    "p_partition_encode", "elementary_symmetric", "complete_homogeneous",
    "monomial_symmetric", "partition_of", "precedes", "ts_less", "ts_key",
]


class MultivariatePolynomial:
    """Immutable sparse polynomial with integer coefficients in ``n`` variables."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms=None):
        self.n = int(n)
        clean = {}
        if terms:
            for exps, c in dict(terms).items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != self.n or min(exps, default=0) < 0:
                    raise ValueError(f"bad exponent vector {exps} for n={self.n}")
                c = int(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
                    if not clean[exps]:
                        del clean[exps]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "MultivariatePolynomial":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, n: int, c: int = 1) -> "MultivariatePolynomial":
        return cls(n, {(0,) * n: c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, exps) -> int:
        return self._terms.get(tuple(exps), 0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other) -> "MultivariatePolynomial":
        if isinstance(other, int):
            return MultivariatePolynomial.const(self.n, other)
        if not isinstance(other, MultivariatePolynomial):
            raise TypeError(f"cannot combine polynomial with {type(other).__name__}")
        if other.n != self.n:
            raise ValueError("polynomials live in different numbers of variables")
        return other

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultivariatePolynomial.const(self.n, other)
        if not isinstance(other, MultivariatePolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        _accumulate(out, other._terms, 1)
        return MultivariatePolynomial._raw(self.n, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        _accumulate(out, other._terms, -1)
        return MultivariatePolynomial._raw(self.n, out)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return MultivariatePolynomial._raw(self.n, {k: -c for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return MultivariatePolynomial(self.n)
            return MultivariatePolynomial._raw(self.n, {k: c * other for k, c in self._terms.items()})
        other = self._check(other)
        out: dict = {}
        for a, c in self._terms.items():
            for b, d in other._terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                v = out.get(k, 0) + c * d
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return MultivariatePolynomial._raw(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = MultivariatePolynomial.const(self.n)
        for _ in range(e):
            out = out * self
        return out

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_part(self, d: int) -> "MultivariatePolynomial":
        return MultivariatePolynomial._raw(self.n, {e: c for e, c in self._terms.items() if sum(e) == d})

    def act(self, w: Permutation) -> "MultivariatePolynomial":
        """``w . f``: substitute ``x_i -> x_{w(i)}``."""
        out = {}
        for e, c in self._terms.items():
            new = [0] * self.n
            for i, a in enumerate(e):
                new[w[i] - 1] = a
            out[tuple(new)] = c
        return MultivariatePolynomial._raw(self.n, out)

    def swap(self, i: int) -> "MultivariatePolynomial":
        """``s_i . f``."""
        out = {}
        for e, c in self._terms.items():
            e = list(e)
            e[i - 1], e[i] = e[i], e[i - 1]
            out[tuple(e)] = c
        return MultivariatePolynomial._raw(self.n, out)

    def evaluate(self, point) -> int:
        total = 0
        for e, c in self._terms.items():
            term = c
            for x, a in zip(point, e):
                term *= x ** a
            total += term
        return total

    def to_json(self) -> list:
        return [[list(e), str(c)] for e, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, n: int, data) -> "MultivariatePolynomial":
        return cls(n, {tuple(e): int(c) for e, c in data})

    def __repr__(self) -> str:
        return f"MultivariatePolynomial({self.n}, {str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        items = sorted(self._terms.items(), key=lambda kv: (-sum(kv[0]), [-a for a in kv[0]]))
        out = ""
        for idx, (e, c) in enumerate(items):
            mono = "*".join(
                f"x{i}" if a == 1 else f"x{i}^{a}" for i, a in enumerate(e, 1) if a
            )
            mag = abs(c)
            body = mono if mono and mag == 1 else (f"{mag}*{mono}" if mono else str(mag))
            if idx == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out


def _accumulate(target: dict, src: dict, scale: int) -> None:
    for k, c in src.items():
        v = target.get(k, 0) + scale * c
        if v:
            target[k] = v
        else:
            target.pop(k, None)


def variable(i: int, n: int) -> MultivariatePolynomial:
    e = [0] * n
    e[i - 1] = 1
    return MultivariatePolynomial._raw(n, {tuple(e): 1})


def monomial(exps, coeff: int = 1) -> MultivariatePolynomial:
    exps = tuple(exps)
    return MultivariatePolynomial(len(exps), {exps: coeff})


@lru_cache(maxsize=1 << 18)
def _pibar_monomial(i: int, exps: tuple) -> tuple:
    a, b = exps[i - 1], exps[i]
    out = []
    if a == b:
        return ()
    head, tail = exps[: i - 1], exps[i + 1:]
    if a > b:
        for k in range(1, a - b + 1):
            out.append((head + (a - k, b + k) + tail, 1))
    else:
        for k in range(0, b - a):
            out.append((head + (a + k, b - k) + tail, -1))
    return tuple(out)


def demazure_bar(i: int, f: MultivariatePolynomial) -> MultivariatePolynomial:
    """``pibar_i f`` via the three-case monomial rule."""
    if not 1 <= i < f.n:
        raise ValueError(f"index {i} outside 1..{f.n - 1}")
    out: dict = {}
    for e, c in f.items():
        for k, s in _pibar_monomial(i, e):
            v = out.get(k, 0) + s * c
            if v:
                out[k] = v
            else:
                del out[k]
    return MultivariatePolynomial._raw(f.n, out)


def demazure(i: int, f: MultivariatePolynomial) -> MultivariatePolynomial:
    """``pi_i f = pibar_i f + f``."""
    return demazure_bar(i, f) + f


def demazure_word(w: Permutation, f: MultivariatePolynomial, word=None) -> MultivariatePolynomial:
    """``pibar_w f`` along ``word`` (default: ``w.reduced_word()``).

    ``pibar_w = pibar_{i_1} ... pibar_{i_k}``, so the last letter acts first.
    """
    word = Permutation(w).reduced_word() if word is None else tuple(word)
    for i in reversed(word):
        f = demazure_bar(i, f)
    return f


def pi_word(word, f: MultivariatePolynomial) -> MultivariatePolynomial:
    """``pi_{i_1} ... pi_{i_k} f``."""
    for i in reversed(tuple(word)):
        f = demazure(i, f)
    return f


def x_subset(I, n: int) -> MultivariatePolynomial:
    """``x_I = prod_{i in I} x_1 x_2 ... x_i``."""
    e = [0] * n
    for i in I:
        for j in range(i):
            e[j] += 1
    return monomial(e)


def descent_monomial(w: Permutation) -> MultivariatePolynomial:
    """``w x_{D(w)} = prod_{i in D(w)} x_{w(1)} ... x_{w(i)}``; degree ``maj(w)``.

    >>> str(descent_monomial(Permutation((2, 1))))
    'x2'
    """
    w = Permutation(w)
    return x_subset(w.descents(), len(w)).act(w)


@dataclass(frozen=True)
class PPartitionEncoding:
    d: tuple
    sigma: Permutation
    gamma: tuple
    mu: tuple


def p_partition_encode(d) -> PPartitionEncoding:
    """Split ``d = gamma + mu`` by labelling parts largest to smallest.

    >>> enc = p_partition_encode((3, 1, 3, 0, 2, 0))
    >>> tuple(enc.sigma), enc.gamma, enc.mu
    ((1, 4, 2, 5, 3, 6), (1, 0, 1, 0, 1, 0), (2, 1, 2, 0, 1, 0))
    """
    d = tuple(int(x) for x in d)
    n = len(d)
    if min(d, default=0) < 0:
        raise ValueError("weak composition entries must be nonnegative")
    order = sorted(range(n), key=lambda i: (-d[i], i))  # positions by label
    sigma = [0] * n
    for label, pos in enumerate(order, 1):
        sigma[pos] = label
    gamma = [0] * n
    s = 0
    for label in range(n - 1, 0, -1):
        here, nxt = order[label - 1], order[label]
        if here > nxt:
            s += 1
        gamma[here] = s
    mu = tuple(a - b for a, b in zip(d, gamma))
    return PPartitionEncoding(d, Permutation(sigma), tuple(gamma), mu)


def elementary_symmetric(r: int, S, n: int) -> MultivariatePolynomial:
    """``e_r`` in the variables ``x_s, s in S`` (1-based); zero when ``r > |S|``."""
    S = sorted(set(S))
    if r < 0:
        raise ValueError("r must be nonnegative")
    terms = {}
    for sub in combinations(S, r):
        e = [0] * n
        for s in sub:
            e[s - 1] = 1
        terms[tuple(e)] = 1
    return MultivariatePolynomial._raw(n, terms)


def complete_homogeneous(k: int, S, n: int) -> MultivariatePolynomial:
    """``h_k`` in the variables ``x_s, s in S``."""
    S = sorted(set(S))
    terms = {}

    def rec(idx, left, e):
        if idx == len(S):
            if left == 0:
                terms[tuple(e)] = 1
            return
        for a in range(left + 1):
            e[S[idx] - 1] = a
            rec(idx + 1, left - a, e)
        e[S[idx] - 1] = 0

    rec(0, k, [0] * n)
    return MultivariatePolynomial._raw(n, terms)


def monomial_symmetric(lam, n: int) -> MultivariatePolynomial:
    """``m_lambda`` in ``n`` variables (zero if ``lambda`` has more than ``n`` parts)."""
    parts = sorted((int(p) for p in lam if p), reverse=True)
    if len(parts) > n:
        return MultivariatePolynomial(n)
    base = tuple(parts + [0] * (n - len(parts)))
    return MultivariatePolynomial._raw(n, {e: 1 for e in set(_perms(base))})


def partition_of(d) -> tuple:
    """``lambda(d)``: the decreasing rearrangement, zeros kept."""
    return tuple(sorted(d, reverse=True))


def precedes(d, e) -> bool:
    """``x^d`` precedes ``x^e``: ``lambda(d) <_L lambda(e)``."""
    return partition_of(d) < partition_of(e)


def ts_key(d) -> tuple:
    return (partition_of(d), tuple(d))


def ts_less(d, e) -> bool:
    """``x^d <_ts x^e``: ``lambda`` first, then lexicographic on ``d``."""
    return ts_key(d) < ts_key(e)
