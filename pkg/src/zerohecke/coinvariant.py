"""
The coinvariant algebra ``Q[x_1..x_n] / (e_1, ..., e_n)`` as an
``H_n(0)``-module under ``T_i -> pibar_i``, and the quotients ``R_mu`` by
Tanisaki ideals.

Normal forms use the Artin basis (divisors of ``x_1^{n-1} x_2^{n-2} ... x_{n-1}``).
A monomial outside it is rewritten with
``g_k = h_{n+1-k}(x_1, ..., x_k)``, whose leading term under lex order
with ``x_n > ... > x_1`` is ``x_k^{n+1-k}``.  Ideals containing
``(e_1, ..., e_n)`` are handled as subspaces of the coinvariant algebra.

>>> R = CoinvariantRing(3)
>>> R.dimension(), str(R.hilbert_series())
(6, '1 + 2*t + 2*t^2 + t^3')
>>> str(R.normal_form(variable(3, 3)))
'-x1 - x2'
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, product

from .charmap import NSymElement, QSymElement, characteristic, noncommutative_characteristic, ribbon_schur
from .combinat import (
    Composition, Partition, Permutation, _check_size, compositions_of, descent_class,
    permutations_of, w0,
)
from .errors import ConsistencyError, UnsupportedError
from .hecke0 import (
    FiniteModule, HeckeElement, hecke_to_vector, intertwines, module_isomorphic,
    projective_module, regular_module, witness_checksum,
)
from .linalg import Echelon, Expresser, RationalField, rank
from .polyring import (
    MultivariatePolynomial, complete_homogeneous, demazure_bar, demazure_word,
    elementary_symmetric, monomial, variable, x_subset,
)
from .qtarith import BivariatePolynomial, ZERO
from .combinat import longest_parabolic

__all__ = [
    "CoinvariantRing", "QuotientRing", "CoinvariantModule", "coinvariant_module",
    "bigraded_characteristic_coinvariant", "tanisaki_generators", "tanisaki_ideal",
    "hook_generators", "demazure_preserves_ideal", "PreservationReport",
    "springer_module", "SpringerModule", "graded_ideal_dimension", "atom",
]

QQ = RationalField()
MAX_COINVARIANT_N = 6


# ---------------------------------------------------------------- ring

class CoinvariantRing:
    """Normal forms modulo ``(e_1, ..., e_n)`` on the Artin basis."""

    def __init__(self, n: int, max_n: int | None = None):
        _check_size(n, MAX_COINVARIANT_N if max_n is None else max_n)
        self.n = n
        self.artin = sorted(
            product(*[range(n - i + 1) for i in range(1, n + 1)]),
            key=lambda e: (sum(e), tuple(reversed(e))),
        )
        self.index = {e: k for k, e in enumerate(self.artin)}
        self._tails = []  # x_k^{n+1-k} == tail_k modulo the ideal
        for k in range(1, n + 1):
            g = complete_homogeneous(n + 1 - k, range(1, k + 1), n)
            lead = [0] * n
            lead[k - 1] = n + 1 - k
            tail = {e: -c for e, c in g.items() if e != tuple(lead)}
            self._tails.append(tail)
        self._cache: dict = {}
        self._pibar_cache: dict = {}

    @property
    def dim(self) -> int:
        return len(self.artin)

    def dimension(self) -> int:
        return len(self.artin)

    def degree_of(self, k: int) -> int:
        return sum(self.artin[k])

    def hilbert_series(self) -> BivariatePolynomial:
        out: dict = {}
        for e in self.artin:
            out[(0, sum(e))] = out.get((0, sum(e)), 0) + 1
        return BivariatePolynomial(out)

    def _monomial_nf(self, e: tuple) -> dict:
        """Artin coordinates of ``x^e``."""
        hit = self._cache.get(e)
        if hit is not None:
            return hit
        n = self.n
        bad = [k for k in range(n) if e[k] > n - 1 - k]
        if not bad:
            out = {self.index[e]: 1}
        else:
            k = bad[-1]  # largest variable first: terminates under lex
            rest = list(e)
            rest[k] -= n - k
            out = {}
            for t, c in self._tails[k].items():
                m = tuple(a + b for a, b in zip(rest, t))
                for j, d in self._monomial_nf(m).items():
                    v = out.get(j, 0) + c * d
                    if v:
                        out[j] = v
                    else:
                        out.pop(j)
        self._cache[e] = out
        return out

    def reduce(self, f: MultivariatePolynomial) -> dict:
        """Artin coordinates of ``f`` modulo the ideal."""
        out: dict = {}
        for e, c in f.items():
            for j, d in self._monomial_nf(e).items():
                v = out.get(j, 0) + c * d
                if v:
                    out[j] = v
                else:
                    out.pop(j)
        return out

    def to_polynomial(self, v: dict) -> MultivariatePolynomial:
        terms = {}
        for j, c in v.items():
            if c != int(c):
                raise ValueError("non-integral coordinates")
            terms[self.artin[j]] = int(c)
        return MultivariatePolynomial(self.n, terms)

    def normal_form(self, f: MultivariatePolynomial) -> MultivariatePolynomial:
        return self.to_polynomial(self.reduce(f))

    def pibar_vector(self, i: int, v: dict) -> dict:
        """``pibar_i`` on Artin coordinates (well defined: the ideal is stable)."""
        out: dict = {}
        for j, c in v.items():
            key = (i, j)
            col = self._pibar_cache.get(key)
            if col is None:
                col = self.reduce(demazure_bar(i, monomial(self.artin[j])))
                self._pibar_cache[key] = col
            for r, d in col.items():
                val = out.get(r, 0) + c * d
                if val:
                    out[r] = val
                else:
                    out.pop(r)
        return out

    def pibar_word_vector(self, word, v: dict) -> dict:
        for i in reversed(tuple(word)):
            v = self.pibar_vector(i, v)
        return v


def graded_ideal_dimension(generators, n: int, d: int) -> int:
    """``dim I_d`` for the ideal spanned by ``generator * monomial`` in degree ``d``.

    Plain per-degree linear algebra; used as an independent check of the
    Artin normal form.
    """
    ech = Echelon(QQ)
    cols: dict = {}
    for g in generators:
        dg = g.degree()
        if dg < 0 or dg > d:
            continue
        for m in _monomials_of_degree(n, d - dg):
            f = g * monomial(m)
            ech.add({cols.setdefault(e, len(cols)): c for e, c in f.items()})
    return ech.rank


@lru_cache(maxsize=None)
def _monomials_of_degree(n: int, d: int) -> tuple:
    out = []

    def rec(i, left, e):
        if i == n - 1:
            out.append(tuple(e + [left]))
            return
        for a in range(left, -1, -1):
            rec(i + 1, left - a, e + [a])

    if n == 0:
        return ((),) if d == 0 else ()
    rec(0, d, [])
    return tuple(out)


# ---------------------------------------------------------------- ideals

def _as_partition(mu) -> Partition:
    return Partition(mu)


def tanisaki_generators(mu) -> list[MultivariatePolynomial]:
    """``{e_r(S) : k >= r > k - d_k(mu), |S| = k}``, deduplicated, in a fixed order.

    ``d_k = mu'_1 + ... + mu'_k`` with the conjugate written increasingly
    and padded with zeros to ``n`` parts.
    """
    mu = _as_partition(mu)
    n = mu.n
    conj = sorted(mu.conjugate())
    conj = [0] * (n - len(conj)) + conj
    out, seen = [], set()
    for k in range(1, n + 1):
        dk = sum(conj[:k])
        for r in range(max(k - dk + 1, 1), k + 1):
            for S in combinations(range(1, n + 1), k):
                g = elementary_symmetric(r, S, n)
                if g not in seen:
                    seen.add(g)
                    out.append(g)
    return out


def hook_generators(mu) -> list[MultivariatePolynomial]:
    """``e_1, ..., e_n`` and every square-free monomial of degree ``h`` (hooks only)."""
    mu = _as_partition(mu)
    if not mu.is_hook():
        raise UnsupportedError(f"{tuple(mu)} is not a hook")
    n, h = mu.n, len(mu)
    gens = [elementary_symmetric(r, range(1, n + 1), n) for r in range(1, n + 1)]
    if h < n:
        gens += [elementary_symmetric(h, S, n) for S in combinations(range(1, n + 1), h)]
    return gens


class QuotientRing:
    """``Q[x] / I`` for a homogeneous ideal ``I`` containing ``(e_1, ..., e_n)``.

    ``I`` is stored as the subspace ``J = I / (e_1..e_n)`` of the
    coinvariant algebra, spanned by the normal forms of ``g * b`` for
    generators ``g`` and Artin monomials ``b``.
    """

    def __init__(self, n: int, generators, ring: CoinvariantRing | None = None):
        self.n = n
        self.generators = list(generators)
        self.ring = CoinvariantRing(n) if ring is None else ring
        self.ideal = Echelon(QQ)
        for g in self.generators:
            for b in self.ring.artin:
                v = self.ring.reduce(g * monomial(b))
                if v:
                    self.ideal.add(v)
        self.basis_indices = [j for j in range(self.ring.dim) if j not in self.ideal.rows]

    def dimension(self) -> int:
        return len(self.basis_indices)

    def hilbert_series(self) -> BivariatePolynomial:
        out: dict = {}
        for j in self.basis_indices:
            d = self.ring.degree_of(j)
            out[(0, d)] = out.get((0, d), 0) + 1
        return BivariatePolynomial(out)

    def reduce(self, f) -> dict:
        v = self.ring.reduce(f) if isinstance(f, MultivariatePolynomial) else dict(f)
        return self.ideal.reduce(v)

    def contains(self, f) -> bool:
        return not self.reduce(f)

    def normal_form(self, f) -> dict:
        """Canonical coordinates on the quotient's Artin monomials."""
        return self.reduce(f)

    def quotient_monomials(self) -> list[tuple]:
        return [self.ring.artin[j] for j in self.basis_indices]


def tanisaki_ideal(mu, ring: CoinvariantRing | None = None) -> QuotientRing:
    mu = _as_partition(mu)
    return QuotientRing(mu.n, tanisaki_generators(mu), ring)


# ---------------------------------------------------------------- module

def atom(w: Permutation, I=None) -> MultivariatePolynomial:
    """``pibar_w x_I`` (default ``I = D(w)``), as an honest polynomial."""
    w = Permutation(w)
    I = w.descents() if I is None else I
    return demazure_word(w, x_subset(I, len(w)))


def _atom_order(n: int) -> list[Permutation]:
    """Permutations grouped by descent composition, each block in class order."""
    out = []
    for a in compositions_of(n, max_n=max(n, 12)):
        out.extend(descent_class(a, max_n=max(n, 12)))
    return out


def _predicted_column(w: Permutation, i: int, index: dict) -> dict:
    if w.is_left_descent(i):
        return {index[w]: -1}
    u = w.left_mul_simple(i)
    if u.descents() == w.descents():
        return {index[u]: 1}
    return {}


@dataclass
class CoinvariantModule:
    n: int
    ring: CoinvariantRing
    perms: list                   # basis order: atom of perms[k] is basis vector k
    atoms: list                   # Artin coordinates of each atom
    module: FiniteModule          # degrees maj(w), lengths inv(w)
    blocks: dict                  # Composition -> list of basis indices

    def block_module(self, alpha) -> FiniteModule:
        idx = self.blocks[Composition(alpha)]
        sub = self.module.restrict([{j: 1} for j in idx], cyclic={0: 1},
                                   degrees=[self.module.degrees[j] for j in idx],
                                   lengths=[self.module.lengths[j] for j in idx])
        return sub


def coinvariant_module(n: int, ring: CoinvariantRing | None = None) -> CoinvariantModule:
    """The coinvariant algebra on the atom basis ``{pibar_w x_{D(w)}}``.

    Checks that the atoms form a basis, that ``pibar_i`` acts on them by
    ``-a_w``, ``a_{s_i w}`` or ``0`` exactly as on ribbon tableaux, and
    that each block is generated by its descent monomial.
    """
    R = CoinvariantRing(n) if ring is None else ring
    perms = _atom_order(n)
    index = {w: k for k, w in enumerate(perms)}
    atoms = []
    for w in perms:
        v = R.reduce(x_subset(w.descents(), n))
        v = R.pibar_word_vector(w.reduced_word(), v)
        atoms.append(v)
    ex = Expresser(atoms, QQ) if rank(atoms, QQ) == len(atoms) else None
    if ex is None or len(atoms) != R.dim:
        raise ConsistencyError("Demazure atoms do not form a basis of the coinvariant algebra")
    mats = []
    for i in range(1, n):
        cols = []
        for w, v in zip(perms, atoms):
            coords = ex(R.pibar_vector(i, v))
            if coords is None:
                raise ConsistencyError("pibar image left the atom span")
            if coords != _predicted_column(w, i, index):
                raise ConsistencyError(f"unexpected action of pibar_{i} on the atom of {tuple(w)}")
            cols.append(coords)
        mats.append(cols)
    blocks: dict = {}
    for k, w in enumerate(perms):
        blocks.setdefault(w.descent_composition(), []).append(k)
    module = FiniteModule(n, len(perms), mats, QQ, degrees=[w.maj() for w in perms],
                          lengths=[w.inv() for w in perms], labels=perms)
    for alpha, idx in blocks.items():
        gen = perms[idx[0]]
        if gen != w0(alpha):
            raise ConsistencyError(f"block {tuple(alpha)} does not start at w_0")
        dm = R.reduce(x_subset(alpha.descents, n).act(gen))
        if dm != atoms[idx[0]]:
            raise ConsistencyError(f"cyclic atom of {tuple(alpha)} is not its descent monomial")
        span = module.span_closure([{idx[0]: 1}])
        if len(span) != len(idx) or any(k not in idx for v in span for k in v):
            raise ConsistencyError(f"block {tuple(alpha)} is not cyclic on its atom")
    return CoinvariantModule(n, R, perms, atoms, module, blocks)


def bigraded_characteristic_coinvariant(n: int, cm: CoinvariantModule | None = None) -> QSymElement:
    """``Ch_{q,t}`` from the module, checked against ``sum_w t^maj q^inv F_{D(w^-1)}``."""
    cm = coinvariant_module(n) if cm is None else cm
    got = characteristic(cm.module, "qt")
    if got != closed_form_bigraded(n):
        raise ConsistencyError("bigraded characteristic disagrees with the permutation sum")
    return got


def closed_form_bigraded(n: int) -> QSymElement:
    out: dict = {}
    for w in permutations_of(n):
        a = w.inverse().descent_composition()
        out[a] = out.get(a, ZERO) + BivariatePolynomial.monomial(w.inv(), w.maj())
    return QSymElement(n, "F", out)


@dataclass
class BlockReport:
    alpha: Composition
    degree_offset: int
    dimension: int
    witness: list
    checksum: str

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "degree_offset": self.degree_offset,
                "dimension": self.dimension, "isomorphism_witness_checksum": self.checksum}


def decompose_blocks(cm: CoinvariantModule, alphas=None) -> list[BlockReport]:
    """Witness ``block_alpha ~ P_alpha`` for each requested block."""
    out = []
    for alpha in (alphas if alphas is not None else list(cm.blocks)):
        alpha = Composition(alpha)
        P = projective_module(alpha)
        B = cm.block_module(alpha)
        wit = module_isomorphic(P, B)
        if not wit:
            raise ConsistencyError(f"block {tuple(alpha)} is not isomorphic to P_alpha: {wit.reason}")
        out.append(BlockReport(alpha, alpha.maj, len(cm.blocks[alpha]), wit.matrix,
                               witness_checksum(wit.matrix)))
    return out


def regular_witness(cm: CoinvariantModule) -> list[dict]:
    """Columns of ``X`` sending the atom of ``w`` to ``T_w T'_{w_0(alpha^c)}``.

    Verified to intertwine with the regular representation and to be invertible.
    """
    n = cm.n
    reg = regular_module(n)
    cols = [None] * len(cm.perms)
    for alpha, idx in cm.blocks.items():
        comp = HeckeElement.T_prime(longest_parabolic(alpha.complement().descents, n))
        for k in idx:
            cols[k] = hecke_to_vector(HeckeElement.T(cm.perms[k]) * comp, reg)
    if not intertwines(cm.module, reg, cols):
        raise ConsistencyError("atom-to-Norton map is not a module isomorphism")
    return cols


# ---------------------------------------------------------------- ideal stability

@dataclass
class PreservationReport:
    mu: Partition
    preserved: bool
    witness: tuple | None = None          # (generator, i, Artin monomial, image)
    chain: list = dc_field(default_factory=list)   # (label, polynomial, in_ideal)

    def to_json(self) -> dict:
        out = {"mu": list(self.mu), "preserved": self.preserved}
        if self.witness is not None:
            g, i, b, img = self.witness
            out["witness"] = {"generator": g.to_json(), "i": i, "monomial": list(b),
                              "image": img.to_json()}
        if self.chain:
            out["chain"] = [{"step": lab, "polynomial": f.to_json(), "in_ideal": ok}
                            for lab, f, ok in self.chain]
        return out


def demazure_preserves_ideal(mu, quotient: QuotientRing | None = None,
                             with_chain: bool = True) -> PreservationReport:
    """Decide ``pibar_i(I_mu) <= I_mu`` for all ``i``.

    Since ``pibar_i`` fixes ``(e_1..e_n)``, it suffices to test
    ``pibar_i(g b)`` for generators ``g`` and Artin monomials ``b``; that
    covers every degree.  On failure the first offending triple is kept.
    For non-hooks the elimination chain starting from
    ``e_h(x_1, ..., x_{n-1})`` is recorded as well.
    """
    mu = _as_partition(mu)
    n = mu.n
    Q = tanisaki_ideal(mu) if quotient is None else quotient
    R = Q.ring
    witness = None
    # the subspace J itself: check its basis first (fast), then find a concrete triple
    stable = all(Q.contains(R.pibar_vector(i, row))
                 for row in Q.ideal.basis() for i in range(1, n))
    if not stable:
        for g in Q.generators:
            for b in R.artin:
                gb = R.reduce(g * monomial(b))
                for i in range(1, n):
                    if not Q.contains(R.pibar_vector(i, gb)):
                        img = demazure_bar(i, g * monomial(b))
                        witness = (g, i, b, img)
                        break
                if witness:
                    break
            if witness:
                break
        if witness is None:
            raise ConsistencyError("subspace test and triple search disagree")
    chain = nonhook_chain(mu, Q) if (with_chain and not mu.is_hook()) else []
    return PreservationReport(mu, stable, witness, chain)


def nonhook_chain(mu, Q: QuotientRing) -> list:
    """Run the elimination ``e_h(x_1..x_m) -> e_h(x_1..x_{m-1})`` down to ``x_1...x_h``.

    Each step applies ``pibar_m`` to ``e_h(x_1..x_m)``, giving
    ``x_{m+1} e_{h-1}(x_1..x_{m-1})``, and subtracts it from
    ``e_h(x_1..x_{m-1}, x_{m+1})``.  Membership in ``I_mu`` is recorded
    for every intermediate polynomial; the first ``pibar`` image marked
    ``False`` is where stability breaks.
    """
    mu = _as_partition(mu)
    n, h = mu.n, len(mu)
    steps = []
    f = elementary_symmetric(h, range(1, n), n)
    steps.append((f"e_{h}(x_1..x_{n - 1})", f, Q.contains(f)))
    for m in range(n - 1, h, -1):
        g = demazure_bar(m, f)
        steps.append((f"pibar_{m} e_{h}(x_1..x_{m})", g, Q.contains(g)))
        other = elementary_symmetric(h, list(range(1, m)) + [m + 1], n)
        f = other - g
        expect = elementary_symmetric(h, range(1, m), n)
        if f != expect:
            raise ConsistencyError("elimination step produced an unexpected polynomial")
        steps.append((f"e_{h}(x_1..x_{m - 1})", f, Q.contains(f)))
    return steps


# ---------------------------------------------------------------- springer

@dataclass
class SpringerModule:
    mu: Partition
    quotient: QuotientRing
    perms: list
    module: FiniteModule
    blocks: dict
    reports: list

    def graded_characteristic(self) -> QSymElement:
        return characteristic(self.module, "t")

    def noncommutative_characteristic(self) -> NSymElement:
        return noncommutative_characteristic([(a, a.maj) for a in self.blocks])

    def decomposition_json(self) -> list:
        return [r.to_json() for r in self.reports]


def springer_module(mu, cm: CoinvariantModule | None = None) -> SpringerModule:
    """``R_mu`` for a hook ``mu`` on the atoms with ``D(w)`` inside ``D(mu)``."""
    mu = _as_partition(mu)
    if not mu.is_hook():
        raise UnsupportedError(f"{tuple(mu)} is not a hook; no H_n(0)-action on R_mu")
    n = mu.n
    cm = coinvariant_module(n) if cm is None else cm
    Q = tanisaki_ideal(mu, cm.ring)
    hook_q = QuotientRing(n, hook_generators(mu), cm.ring)
    if rank(Q.ideal.basis() + hook_q.ideal.basis(), QQ) != Q.ideal.rank or hook_q.ideal.rank != Q.ideal.rank:
        raise ConsistencyError("Tanisaki and hook generating sets differ")
    D = set(mu.as_hook_composition().descents)
    keep = [k for k, w in enumerate(cm.perms) if set(w.descents()) <= D]
    drop = [k for k in range(len(cm.perms)) if k not in keep]
    # atoms outside D(mu) span exactly the ideal
    dropped = [cm.atoms[k] for k in drop]
    if rank(dropped, QQ) != Q.ideal.rank or rank(dropped + Q.ideal.basis(), QQ) != Q.ideal.rank:
        raise ConsistencyError("ideal is not spanned by the atoms outside D(mu)")
    if Q.dimension() != len(keep):
        raise ConsistencyError("quotient dimension differs from the atom count")
    # action on R_mu computed in the quotient: reduce modulo the ideal, then express
    reduced_basis = [Q.reduce(cm.atoms[k]) for k in keep]
    ex = Expresser(reduced_basis, QQ)
    mats = []
    for i in range(1, n):
        cols = []
        for k in keep:
            c = ex(Q.reduce(cm.ring.pibar_vector(i, cm.atoms[k])))
            if c is None:
                raise ConsistencyError("pibar image left the quotient span")
            cols.append(c)
        mats.append(cols)
    perms = [cm.perms[k] for k in keep]
    module = FiniteModule(n, len(keep), mats, QQ, degrees=[w.maj() for w in perms],
                          lengths=[w.inv() for w in perms], labels=perms)
    blocks: dict = {}
    for k, w in enumerate(perms):
        blocks.setdefault(w.descent_composition(), []).append(k)
    expected = set(mu.as_hook_composition().coarsenings())
    if set(blocks) != expected:
        raise ConsistencyError("blocks do not match the coarsenings of mu")
    reports = []
    for alpha in sorted(blocks, key=lambda a: (len(a.descents), a.descents)):
        idx = blocks[alpha]
        B = module.restrict([{j: 1} for j in idx], cyclic={0: 1})
        wit = module_isomorphic(projective_module(alpha), B)
        if not wit:
            raise ConsistencyError(f"R_mu block {tuple(alpha)} is not projective: {wit.reason}")
        reports.append(BlockReport(alpha, alpha.maj, len(idx), wit.matrix, witness_checksum(wit.matrix)))
    sm = SpringerModule(mu, Q, perms, module, blocks, reports)
    ch = sm.graded_characteristic()
    expected_ch = QSymElement(n, "F")
    for alpha in blocks:
        expected_ch = expected_ch + ribbon_schur(alpha).scale(BivariatePolynomial.monomial(0, alpha.maj))
    if ch != expected_ch or sm.noncommutative_characteristic().commutative_image() != ch:
        raise ConsistencyError("graded characteristic of R_mu disagrees with the ribbon expansion")
    return sm
