"""
Quasisymmetric, noncommutative symmetric and symmetric functions of a
fixed degree, and the characteristic maps of ``H_n(0)``-modules.

Elements are finite linear combinations of basis labels with
:class:`BivariatePolynomial` coefficients; nothing is ever evaluated as a
power series.

>>> from zerohecke.combinat import Composition
>>> f = QSymElement.F_basis(Composition((1, 2)))
>>> sorted(tuple(a) for a in f.to_M().coeffs)
[(1, 1, 1), (1, 2)]
>>> str(hall_littlewood((1, 1, 1)).coeffs[Partition((2, 1))])
't + t^2'
"""

from __future__ import annotations

from .combinat import (
    Composition, Partition, compositions_of, kostka, partitions_of, standard_tableaux,
)
from .errors import ConsistencyError, UnsupportedError
from .hecke0 import FiniteModule, composition_factors, cyclic_length_filtration
from .qtarith import BivariatePolynomial, ONE, ZERO, exact_divide, q_factorial, q_integer, q_multinomial

__all__ = [
    "QSymElement", "NSymElement", "SymElement", "characteristic",
    "noncommutative_characteristic", "schur_in_F", "hall_littlewood",
    "hook_length_formula", "pairing", "ribbon_schur",
]


def _poly(c) -> BivariatePolynomial:
    return BivariatePolynomial.coerce(c)


def _clean(coeffs: dict) -> dict:
    return {k: v for k, v in coeffs.items() if not v.is_zero()}


def _add_into(target: dict, key, c: BivariatePolynomial) -> None:
    target[key] = target.get(key, ZERO) + c


class _Element:
    """Shared plumbing for homogeneous elements indexed by compositions/partitions."""

    bases: tuple = ()
    index_type = Composition

    def __init__(self, n: int, basis: str, coeffs=None):
        if basis not in self.bases:
            raise ValueError(f"basis must be one of {self.bases}")
        self.n = n
        self.basis = basis
        out: dict = {}
        for k, c in (coeffs or {}).items():
            k = self.index_type(k)
            if k.n != n:
                raise ValueError(f"index {tuple(k)} does not have size {n}")
            _add_into(out, k, _poly(c))
        self.coeffs = _clean(out)

    def _like(self, basis, coeffs):
        return type(self)(self.n, basis, coeffs)

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("degree mismatch")
        other = other.in_basis(self.basis)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            _add_into(out, k, c)
        return self._like(self.basis, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = _poly(c)
        return self._like(self.basis, {k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, type(self)) or self.n != other.n:
            return NotImplemented
        return self.coeffs == other.in_basis(self.basis).coeffs

    def __hash__(self):
        return hash((self.n, self.basis, frozenset(self.coeffs.items())))

    def map_coeffs(self, fn):
        return self._like(self.basis, {k: fn(v) for k, v in self.coeffs.items()})

    def specialize(self, q=None, t=None):
        def fn(p):
            r = p.evaluate(q=q, t=t)
            return BivariatePolynomial.const(r) if isinstance(r, int) else r
        return self.map_coeffs(fn)

    def to_json(self) -> dict:
        terms = [{"index": list(k), "coeff": v.to_json()} for k, v in sorted(self.coeffs.items(), key=lambda kv: tuple(kv[0]))]
        return {"basis": self.basis, "degree": self.n, "terms": terms}

    @classmethod
    def from_json(cls, data: dict):
        coeffs = {cls.index_type(t["index"]): BivariatePolynomial.from_json(t["coeff"]) for t in data["terms"]}
        return cls(int(data["degree"]), data["basis"], coeffs)

    def __str__(self) -> str:
        parts = []
        for k, v in sorted(self.coeffs.items(), key=lambda kv: tuple(kv[0])):
            name = f"{self.basis}[{','.join(map(str, k))}]"
            c = str(v)
            if c == "1":
                parts.append(name)
            elif len(v.terms) == 1 and "+" not in c and " - " not in c:
                parts.append(f"{c}*{name}")
            else:
                parts.append(f"({c})*{name}")
        return " + ".join(parts) or "0"

    def __repr__(self) -> str:
        inner = " + ".join(f"({v})*{self.basis}{tuple(k)}" for k, v in sorted(self.coeffs.items(), key=lambda kv: tuple(kv[0])))
        return f"{type(self).__name__}({inner or '0'})"


class QSymElement(_Element):
    """Homogeneous quasisymmetric function in the ``M`` or ``F`` basis."""

    bases = ("M", "F")

    @classmethod
    def F_basis(cls, alpha, coeff=1) -> "QSymElement":
        alpha = Composition(alpha)
        return cls(alpha.n, "F", {alpha: coeff})

    @classmethod
    def M_basis(cls, alpha, coeff=1) -> "QSymElement":
        alpha = Composition(alpha)
        return cls(alpha.n, "M", {alpha: coeff})

    def to_M(self) -> "QSymElement":
        if self.basis == "M":
            return self
        out: dict = {}
        for a, c in self.coeffs.items():
            for b in a.refinements():
                _add_into(out, b, c)
        return QSymElement(self.n, "M", out)

    def to_F(self) -> "QSymElement":
        if self.basis == "F":
            return self
        out: dict = {}
        for a, c in self.coeffs.items():
            for b in a.refinements():
                _add_into(out, b, c * (-1) ** (len(b) - len(a)))
        return QSymElement(self.n, "F", out)

    def in_basis(self, basis: str) -> "QSymElement":
        return self.to_M() if basis == "M" else self.to_F()

    def is_symmetric(self) -> bool:
        """Coefficients in the ``M`` basis depend only on the sorted parts."""
        m = self.to_M()
        seen: dict = {}
        for a in compositions_of(self.n, max_n=max(self.n, 12)):
            c = m.coeffs.get(a, ZERO)
            key = a.sorted_parts()
            if key in seen and seen[key] != c:
                return False
            seen.setdefault(key, c)
        return True

    def to_sym(self) -> "SymElement":
        if not self.is_symmetric():
            raise ValueError("element is not symmetric")
        m = self.to_M()
        out = {}
        for lam in partitions_of(self.n):
            c = m.coeffs.get(Composition(lam), ZERO)
            if not c.is_zero():
                out[lam] = c
        return SymElement(self.n, "m", out)


class NSymElement(_Element):
    """Homogeneous noncommutative symmetric function in the ``h`` or ribbon ``s`` basis."""

    bases = ("h", "s")

    @classmethod
    def s_basis(cls, alpha, coeff=1) -> "NSymElement":
        alpha = Composition(alpha)
        return cls(alpha.n, "s", {alpha: coeff})

    @classmethod
    def h_basis(cls, alpha, coeff=1) -> "NSymElement":
        alpha = Composition(alpha)
        return cls(alpha.n, "h", {alpha: coeff})

    def to_h(self) -> "NSymElement":
        if self.basis == "h":
            return self
        out: dict = {}
        for a, c in self.coeffs.items():
            for b in a.coarsenings():
                _add_into(out, b, c * (-1) ** (len(a) - len(b)))
        return NSymElement(self.n, "h", out)

    def to_s(self) -> "NSymElement":
        if self.basis == "s":
            return self
        out: dict = {}
        for a, c in self.coeffs.items():
            for b in a.coarsenings():
                _add_into(out, b, c)
        return NSymElement(self.n, "s", out)

    def in_basis(self, basis: str) -> "NSymElement":
        return self.to_h() if basis == "h" else self.to_s()

    def commutative_image(self) -> QSymElement:
        """Image in QSym: ribbon ``s_alpha`` goes to the ribbon Schur function."""
        total = QSymElement(self.n, "F")
        for a, c in self.to_s().coeffs.items():
            total = total + ribbon_schur(a).scale(c)
        return total


class SymElement(_Element):
    """Homogeneous symmetric function in the ``m`` or Schur basis."""

    bases = ("m", "schur")
    index_type = Partition

    def to_m(self) -> "SymElement":
        if self.basis == "m":
            return self
        out: dict = {}
        for lam, c in self.coeffs.items():
            for mu in partitions_of(self.n):
                k = kostka(lam, mu)
                if k:
                    _add_into(out, mu, c * k)
        return SymElement(self.n, "m", out)

    def to_schur(self) -> "SymElement":
        """Solve the unitriangular Kostka system, largest partitions first."""
        if self.basis == "schur":
            return self
        rest = dict(self.coeffs)
        out: dict = {}
        for lam in partitions_of(self.n):  # dominance-compatible: decreasing lex
            c = rest.get(lam, ZERO)
            if c.is_zero():
                continue
            out[lam] = c
            for mu in partitions_of(self.n):
                k = kostka(lam, mu)
                if k:
                    rest[mu] = rest.get(mu, ZERO) - c * k
        if any(not v.is_zero() for v in rest.values()):
            raise ConsistencyError("Kostka back-substitution left a remainder")
        return SymElement(self.n, "schur", out)

    def in_basis(self, basis: str) -> "SymElement":
        return self.to_m() if basis == "m" else self.to_schur()

    def to_qsym(self) -> QSymElement:
        out: dict = {}
        for lam, c in self.to_m().coeffs.items():
            for a in compositions_of(self.n, max_n=max(self.n, 12)):
                if a.sorted_parts() == lam:
                    _add_into(out, a, c)
        return QSymElement(self.n, "M", out)


def pairing(f: QSymElement, g: NSymElement) -> BivariatePolynomial:
    """``<M_alpha, h_beta> = delta``, extended bilinearly."""
    fm, gh = f.to_M(), g.to_h()
    total = ZERO
    for a, c in fm.coeffs.items():
        d = gh.coeffs.get(a)
        if d is not None:
            total = total + c * d
    return total


def schur_in_F(shape) -> QSymElement:
    """``sum over standard tableaux tau of F_{Des(tau)}``; ribbons via ``Composition``."""
    tabs = standard_tableaux(shape)
    n = len(tabs[0].entries()) if tabs else 0
    out: dict = {}
    for tab in tabs:
        _add_into(out, Composition.from_descents(tab.descents(), n), ONE)
    return QSymElement(n, "F", out)


def ribbon_schur(alpha) -> QSymElement:
    return schur_in_F(Composition(alpha))


def _factors_to_qsym(n: int, factors: dict) -> QSymElement:
    return QSymElement(n, "F", {a: m for a, m in factors.items() if not m.is_zero()})


def characteristic(M: FiniteModule, mode: str = "plain") -> QSymElement:
    """``Ch``, ``Ch_q``, ``Ch_t`` or ``Ch_{q,t}`` of a module, in the ``F`` basis.

    ``q`` uses the module's length grading, or the length filtration of
    its cyclic vector; ``t`` needs a degree grading.
    """
    if mode == "plain":
        return _factors_to_qsym(M.n, composition_factors(M, "none"))
    if mode in ("q", "qt"):
        if M.lengths is None:
            if M.cyclic is None:
                raise ValueError("mode needs a length grading or a cyclic vector")
            if mode == "qt":
                raise ValueError("bigraded characteristic needs a declared length grading")
            M = cyclic_length_filtration(M).module
        if mode == "qt" and M.degrees is None:
            raise ValueError("bigraded characteristic needs a degree grading")
        return _factors_to_qsym(M.n, composition_factors(M, mode))
    if mode == "t":
        if M.degrees is None:
            raise ValueError("t-graded characteristic needs a degree grading")
        return _factors_to_qsym(M.n, composition_factors(M, "t"))
    raise ValueError(f"unknown mode {mode!r}")


def noncommutative_characteristic(decomposition) -> NSymElement:
    """``sum t^{d_i} s_{alpha^(i)}`` for a list of ``(alpha, degree)`` pairs."""
    decomposition = [(Composition(a), int(d)) for a, d in decomposition]
    if not decomposition:
        raise ValueError("empty decomposition")
    n = decomposition[0][0].n
    out: dict = {}
    for a, d in decomposition:
        _add_into(out, a, BivariatePolynomial.monomial(0, d))
    return NSymElement(n, "s", out)


def hook_length_formula(lam) -> BivariatePolynomial:
    """``t^{n(lambda)} [n]!_t / prod_u [h_u]_t``."""
    lam = Partition(lam)
    den = ONE
    for h in lam.hook_lengths():
        den = den * q_integer(h, "t")
    return BivariatePolynomial.monomial(0, lam.n_statistic()) * exact_divide(q_factorial(lam.n, "t"), den)


def _hook_composition(mu) -> Composition:
    mu = Partition(mu)
    if not mu.is_hook():
        raise UnsupportedError(f"{tuple(mu)} is not a hook")
    return mu.as_hook_composition()


def hall_littlewood(mu) -> SymElement:
    """Modified Hall-Littlewood ``H~_mu(x; t)`` for a hook ``mu``, Schur basis.

    Computed as ``sum_{alpha coarser than mu} t^maj(alpha) s_alpha``
    (ribbon Schur functions), and for ``mu = 1^n`` also as
    ``sum_lambda sum_{SYT} t^maj s_lambda`` and via hook lengths.
    """
    comp = _hook_composition(mu)
    n = comp.n
    total = QSymElement(n, "F")
    for a in comp.coarsenings():
        total = total + ribbon_schur(a).scale(BivariatePolynomial.monomial(0, a.maj))
    result = total.to_sym().to_schur()
    if len(comp) == n:
        by_tableaux, by_hooks = {}, {}
        for lam in partitions_of(n):
            s = ZERO
            for tab in standard_tableaux(lam):
                s = s + BivariatePolynomial.monomial(0, tab.maj())
            by_tableaux[lam] = s
            by_hooks[lam] = hook_length_formula(lam)
        if by_tableaux != by_hooks or SymElement(n, "schur", by_tableaux) != result:
            raise ConsistencyError("Hall-Littlewood expansions disagree")
    return result


def t_multinomial_m_expansion(n: int) -> SymElement:
    """``sum_lambda [n; lambda]_t m_lambda``."""
    return SymElement(n, "m", {lam: q_multinomial(n, lam, "t") for lam in partitions_of(n)})
