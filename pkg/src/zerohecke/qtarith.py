"""
Exact polynomials in two formal variables ``q`` and ``t``, and the ribbon
and multinomial numbers built from them.

>>> from zerohecke.combinat import Composition
>>> str(ribbon_number_q(Composition((1, 2, 1))))
'q^2 + q^3 + 2*q^4 + q^5'
>>> ctx = QTFactorialContext(2)
>>> str(qt_multinomial(ctx, 2, Composition((1, 1))))
'1 + t + t^2'
>>> str(ribbon_number_qt(ctx, Composition((1, 1))))
't + t^2'
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations as _perms

from .combinat import Composition, descent_class, standard_tableaux, _check_size
from .errors import ConsistencyError

__all__ = [
    "BivariatePolynomial", "q_integer", "q_factorial", "q_multinomial",
    "ribbon_number", "ribbon_number_q", "ribbon_number_t", "QTFactorialContext",
    "qt_multinomial", "ribbon_number_qt", "exact_divide",
]


class BivariatePolynomial:
    """Sparse integer polynomial in ``q`` and ``t``; immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (a, b), c in dict(terms).items():
                if a < 0 or b < 0:
                    raise ValueError("negative exponent")
                c = int(c)
                if c:
                    clean[(int(a), int(b))] = c
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c: int) -> "BivariatePolynomial":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, qexp: int = 0, texp: int = 0, coeff: int = 1) -> "BivariatePolynomial":
        return cls({(qexp, texp): coeff})

    @classmethod
    def q(cls) -> "BivariatePolynomial":
        return cls.monomial(1, 0)

    @classmethod
    def t(cls) -> "BivariatePolynomial":
        return cls.monomial(0, 1)

    @staticmethod
    def coerce(x) -> "BivariatePolynomial":
        if isinstance(x, BivariatePolynomial):
            return x
        if isinstance(x, int):
            return BivariatePolynomial.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to BivariatePolynomial")

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = BivariatePolynomial.const(other)
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        other = BivariatePolynomial.coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return BivariatePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-BivariatePolynomial.coerce(other))

    def __rsub__(self, other):
        return BivariatePolynomial.coerce(other) - self

    def __mul__(self, other):
        other = BivariatePolynomial.coerce(other)
        out: dict = {}
        for (a, b), c in self._terms.items():
            for (x, y), d in other._terms.items():
                k = (a + x, b + y)
                out[k] = out.get(k, 0) + c * d
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out, base = BivariatePolynomial.const(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def leading(self):
        """Leading ``((qexp, texp), coeff)`` in lex order with ``q > t``."""
        k = max(self._terms)
        return k, self._terms[k]

    def degree_q(self) -> int:
        return max((a for a, _ in self._terms), default=0)

    def degree_t(self) -> int:
        return max((b for _, b in self._terms), default=0)

    def coefficient(self, qexp: int, texp: int) -> int:
        return self._terms.get((qexp, texp), 0)

    def evaluate(self, q=None, t=None):
        """Substitute integers for ``q`` and/or ``t``.

        Returns an ``int`` when both are given, else a polynomial in the
        remaining variable.
        """
        out: dict = {}
        for (a, b), c in self._terms.items():
            coef = c
            na, nb = a, b
            if q is not None:
                coef *= q ** a
                na = 0
            if t is not None:
                coef *= t ** b
                nb = 0
            out[(na, nb)] = out.get((na, nb), 0) + coef
        poly = BivariatePolynomial(out)
        if q is not None and t is not None:
            return poly.coefficient(0, 0)
        return poly

    def swap(self) -> "BivariatePolynomial":
        """Rename ``q <-> t``."""
        return BivariatePolynomial({(b, a): c for (a, b), c in self._terms.items()})

    def q_to_t(self) -> "BivariatePolynomial":
        """Rename ``q`` as ``t`` in a polynomial that only involves ``q``."""
        out: dict = {}
        for (a, b), c in self._terms.items():
            out[(0, a + b)] = out.get((0, a + b), 0) + c
        return BivariatePolynomial(out)

    def substitute_t_power(self, k: int) -> "BivariatePolynomial":
        """``t -> t^k``."""
        return BivariatePolynomial({(a, b * k): c for (a, b), c in self._terms.items()})

    def to_json(self) -> list:
        return [[a, b, str(c)] for (a, b), c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data) -> "BivariatePolynomial":
        return cls({(int(a), int(b)): int(c) for a, b, c in data})

    def __repr__(self) -> str:
        return f"BivariatePolynomial({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self._terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0])):
            mono = []
            if a:
                mono.append("q" if a == 1 else f"q^{a}")
            if b:
                mono.append("t" if b == 1 else f"t^{b}")
            m = "*".join(mono)
            if not m:
                body = str(abs(c))
            elif abs(c) == 1:
                body = m
            else:
                body = f"{abs(c)}*{m}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


ZERO = BivariatePolynomial()
ONE = BivariatePolynomial.const(1)


def exact_divide(num: BivariatePolynomial, den: BivariatePolynomial) -> BivariatePolynomial:
    """Quotient of an exact division, by leading-term elimination.

    Raises :class:`ConsistencyError` if the remainder is nonzero: every
    caller divides where divisibility is a theorem.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    (dq, dt), dc = den.leading()
    den_terms = list(den.items())
    rem = dict(num.terms)
    quot: dict = {}
    while rem:
        (rq, rt) = max(rem)
        rc = rem[(rq, rt)]
        if rq < dq or rt < dt or rc % dc:
            raise ConsistencyError("polynomial division is not exact")
        mq, mt, mc = rq - dq, rt - dt, rc // dc
        quot[(mq, mt)] = mc
        for (a, b), c in den_terms:
            k = (a + mq, b + mt)
            v = rem.get(k, 0) - mc * c
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return BivariatePolynomial(quot)


def q_integer(m: int, var: str = "q") -> BivariatePolynomial:
    """``[m] = 1 + v + ... + v^(m-1)`` in the chosen variable."""
    if var == "q":
        return BivariatePolynomial({(i, 0): 1 for i in range(m)})
    return BivariatePolynomial({(0, i): 1 for i in range(m)})


@lru_cache(maxsize=None)
def q_factorial(m: int, var: str = "q") -> BivariatePolynomial:
    out = ONE
    for k in range(1, m + 1):
        out = out * q_integer(k, var)
    return out


def q_multinomial(n: int, alpha, var: str = "q") -> BivariatePolynomial:
    """``[n]! / prod [alpha_i]!``; ``alpha`` may contain zero parts.

    >>> str(q_multinomial(2, (1, 1)))
    '1 + q'
    """
    parts = [int(p) for p in alpha]
    if sum(parts) != n or any(p < 0 for p in parts):
        raise ValueError(f"{tuple(parts)} is not a weak composition of {n}")
    den = ONE
    for p in parts:
        den = den * q_factorial(p, var)
    return exact_divide(q_factorial(n, var), den)


def ribbon_number(alpha) -> int:
    """Size of the descent class of ``alpha``."""
    return ribbon_number_q(alpha).evaluate(q=1, t=1)


def _hessenberg_terms(sigma):
    """Nonzero Leibniz terms of ``det(M)`` with ``M[i][j]`` vanishing for ``sigma_j < sigma_{i-1}``.

    Yields ``(sign, widths)`` where ``widths[i] = sigma_{pi(i)} - sigma_{i-1}``
    (the row index ``i`` runs ``1..l``).
    """
    ell = len(sigma) - 1
    for pi in _perms(range(1, ell + 1)):
        widths = [sigma[pi[i - 1]] - sigma[i - 1] for i in range(1, ell + 1)]
        if min(widths) < 0:
            continue
        inversions = sum(1 for a in range(ell) for b in range(a + 1, ell) if pi[a] > pi[b])
        yield (-1) ** inversions, widths


def _ribbon_q_determinant(alpha: Composition) -> BivariatePolynomial:
    # each Leibniz term [n]! prod 1/[w_i]! is a q-multinomial of a weak composition
    total = ZERO
    for sign, widths in _hessenberg_terms(alpha.partial_sums):
        total = total + sign * q_multinomial(alpha.n, widths)
    return total


def _ribbon_q_inclusion_exclusion(alpha: Composition) -> BivariatePolynomial:
    total = ZERO
    for beta in alpha.coarsenings():
        total = total + (-1) ** (len(alpha) - len(beta)) * q_multinomial(alpha.n, beta)
    return total


def _ribbon_q_enumeration(alpha: Composition) -> BivariatePolynomial:
    out: dict = {}
    for w in descent_class(alpha):
        k = (w.inv(), 0)
        out[k] = out.get(k, 0) + 1
    return BivariatePolynomial(out)


@lru_cache(maxsize=None)
def _ribbon_number_q(alpha: Composition, max_n) -> BivariatePolynomial:
    _check_size(alpha.n, max_n)
    det = _ribbon_q_determinant(alpha)
    incl = _ribbon_q_inclusion_exclusion(alpha)
    enum = _ribbon_q_enumeration(alpha)
    if not (det == incl == enum):
        raise ConsistencyError(f"q-ribbon number methods disagree for {tuple(alpha)}")
    return det


def ribbon_number_q(alpha, max_n: int | None = None) -> BivariatePolynomial:
    """``sum_{D(w) = D(alpha)} q^inv(w)``, cross-checked three ways."""
    return _ribbon_number_q(Composition(alpha), max_n)


@lru_cache(maxsize=None)
def _ribbon_number_t(alpha: Composition, max_n) -> BivariatePolynomial:
    _check_size(alpha.n, max_n)
    out: dict = {}
    for tab in standard_tableaux(alpha, max_n):
        k = (0, tab.maj())
        out[k] = out.get(k, 0) + 1
    return BivariatePolynomial(out)


def ribbon_number_t(alpha, max_n: int | None = None) -> BivariatePolynomial:
    """``sum over standard ribbon tableaux of t^maj``."""
    return _ribbon_number_t(Composition(alpha), max_n)


class QTFactorialContext:
    """Arithmetic of ``m!_{q,t} = prod_{i<m} (1 - t^(q^m - q^i))`` for a fixed integer ``q``.

    Quantities are polynomials in ``t`` alone (stored with ``q``-exponent 0).
    """

    def __init__(self, qval: int):
        qval = int(qval)
        if qval < 2:
            raise ValueError("q must be an integer >= 2")
        self.qval = qval

    def factorial_exponents(self, m: int, shift: int = 0) -> list[int]:
        """Exponents ``a`` of the factors ``1 - t^a`` of ``phi^shift(m!_{q,t})``."""
        q = self.qval
        return [q ** shift * (q ** m - q ** i) for i in range(m)]

    def factorial(self, m: int, shift: int = 0) -> BivariatePolynomial:
        return _binomial_product(self.factorial_exponents(m, shift))

    def phi(self, f: BivariatePolynomial, k: int = 1) -> BivariatePolynomial:
        """Frobenius twist ``t -> t^(q^k)``."""
        return f.substitute_t_power(self.qval ** k)

    def __repr__(self) -> str:
        return f"QTFactorialContext(q={self.qval})"


def _binomial(a: int) -> BivariatePolynomial:
    return BivariatePolynomial({(0, 0): 1, (0, a): -1})


def _binomial_product(exps) -> BivariatePolynomial:
    out = ONE
    for a in sorted(exps):
        out = out * _binomial(a)
    return out


def _divide_binomials(num: BivariatePolynomial, exps) -> BivariatePolynomial:
    for a in sorted(exps, reverse=True):
        num = exact_divide(num, _binomial(a))
    return num


def _cancel(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Drop binomial exponents common to both multisets."""
    pool = list(den)
    left = []
    for a in num:
        if a in pool:
            pool.remove(a)
        else:
            left.append(a)
    return left, pool


def qt_multinomial(ctx: QTFactorialContext, n: int, alpha) -> BivariatePolynomial:
    """``n!_{q,t} / (alpha_1! phi^{sigma_1}(alpha_2!) phi^{sigma_2}(alpha_3!) ...)``."""
    alpha = Composition(alpha)
    if alpha.n != n:
        raise ValueError(f"{tuple(alpha)} is not a composition of {n}")
    sig = alpha.partial_sums
    den = [a for j, part in enumerate(alpha) for a in ctx.factorial_exponents(part, sig[j])]
    num, den = _cancel(ctx.factorial_exponents(n), den)
    return _divide_binomials(_binomial_product(num), den)


def _qt_ribbon_determinant(ctx: QTFactorialContext, alpha: Composition) -> BivariatePolynomial:
    # Leibniz terms are not polynomials on their own: put them over a
    # common multiple of their binomial denominators first.
    sig = alpha.partial_sums
    terms = []
    for sign, widths in _hessenberg_terms(sig):
        den = [a for i, w in enumerate(widths) for a in ctx.factorial_exponents(w, sig[i])]
        terms.append((sign, den))
    common: dict[int, int] = {}
    for _, den in terms:
        for a in set(den):
            common[a] = max(common.get(a, 0), den.count(a))
    common_list = [a for a, k in sorted(common.items()) for _ in range(k)]
    total = ZERO
    for sign, den in terms:
        rest, leftover = _cancel(common_list, den)
        assert not leftover
        total = total + sign * _binomial_product(rest)
    num, den = _cancel(ctx.factorial_exponents(alpha.n), common_list)
    return _divide_binomials(total * _binomial_product(num), den)


def _qt_ribbon_inclusion_exclusion(ctx: QTFactorialContext, alpha: Composition) -> BivariatePolynomial:
    total = ZERO
    for beta in alpha.coarsenings():
        total = total + (-1) ** (len(alpha) - len(beta)) * qt_multinomial(ctx, alpha.n, beta)
    return total


def ribbon_number_qt(ctx: QTFactorialContext, alpha) -> BivariatePolynomial:
    """``n!_{q,t} det(phi^{sigma_{i-1}} 1/(sigma_j - sigma_{i-1})!_{q,t})``.

    Checked against inclusion-exclusion over coarsenings.
    """
    alpha = Composition(alpha)
    det = _qt_ribbon_determinant(ctx, alpha)
    incl = _qt_ribbon_inclusion_exclusion(ctx, alpha)
    if det != incl:
        raise ConsistencyError(f"(q,t)-ribbon methods disagree for {tuple(alpha)}, q={ctx.qval}")
    return det
