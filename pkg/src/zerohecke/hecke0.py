"""
The 0-Hecke algebra ``H_n(0)`` and its finite-dimensional modules.

Generators ``T_1, ..., T_{n-1}`` satisfy ``T_i^2 = -T_i`` together with
the braid and commutation relations; ``T'_i = T_i + 1`` is idempotent.
Modules are presented by one sparse matrix per generator over an exact
field.  Composition factors are extracted from the kernels
``Q_beta = intersection of ker T_j over j not in D(beta)`` by
inclusion-exclusion over coarsenings.

>>> P = projective_module(Composition((1, 2, 1)))
>>> P.dim
5
>>> {tuple(a): int(str(m)) for a, m in composition_factors(P).items() if m}
{(2, 2): 1, (1, 1, 2): 1, (1, 2, 1): 2, (2, 1, 1): 1}
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from random import Random

from .combinat import (
    Composition, Permutation, compositions_of, descent_class, longest_parabolic,
    permutations_of, standard_tableaux, w0, _check_size,
)
from .errors import ConsistencyError
from .linalg import (
    Echelon, Expresser, RationalField, identity, is_invertible, matmul, matvec,
    random_combination, rank, kernel, vec_add,
)
from .qtarith import BivariatePolynomial, ZERO

__all__ = [
    "HeckeElement", "FiniteModule", "projective_module", "simple_module",
    "regular_module", "norton_generator", "norton_submodule", "composition_factors",
    "socle_series_factors", "cyclic_length_filtration", "LengthFiltration",
    "module_isomorphic", "IsomorphismWitness", "intertwines", "socle_by_type", "radical",
    "top", "direct_sum", "kernel_hilbert_series", "hom_space", "witness_checksum",
]

QQ = RationalField()


# ---------------------------------------------------------------- algebra

class HeckeElement:
    """An element ``sum_w c_w T_w`` of ``H_n(0)`` with rational coefficients."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        self.coeffs = {Permutation(w): Fraction(c) for w, c in (coeffs or {}).items() if c}

    @classmethod
    def T(cls, w) -> "HeckeElement":
        w = Permutation(w)
        return cls(len(w), {w: 1})

    @classmethod
    def one(cls, n: int) -> "HeckeElement":
        return cls.T(Permutation.identity(n))

    @classmethod
    def generator(cls, i: int, n: int) -> "HeckeElement":
        return cls.T(Permutation.simple(i, n))

    @classmethod
    def T_prime(cls, w) -> "HeckeElement":
        """``T'_w`` as a product of ``T'_i = T_i + 1`` along a reduced word."""
        w = Permutation(w)
        n = len(w)
        out = cls.one(n)
        for i in w.reduced_word():
            out = out * (cls.generator(i, n) + cls.one(n))
        return out

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return HeckeElement(self.n, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(-1)

    def scale(self, c) -> "HeckeElement":
        return HeckeElement(self.n, {w: c * a for w, a in self.coeffs.items()})

    def left_mul_generator(self, i: int) -> "HeckeElement":
        """``T_i * self`` using ``T_i T_w = T_{s_i w}`` or ``-T_w``."""
        out: dict = {}
        for w, c in self.coeffs.items():
            if w.is_left_descent(i):
                out[w] = out.get(w, 0) - c
            else:
                u = w.left_mul_simple(i)
                out[u] = out.get(u, 0) + c
        return HeckeElement(self.n, out)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        total = HeckeElement(self.n)
        for u, c in self.coeffs.items():
            term = other.scale(c)
            for i in reversed(u.reduced_word()):
                term = term.left_mul_generator(i)
            total = total + term
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, HeckeElement) and self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*T{tuple(w)}" for w, c in sorted(self.coeffs.items(), key=lambda kv: (kv[0].inv(), kv[0])))
        return f"HeckeElement({body or '0'})"


# ---------------------------------------------------------------- modules

def _square_check(A, dim, fld, i):
    lhs = matmul(A, A, fld)
    for j in range(dim):
        col = dict(lhs[j])
        for r, a in A[j].items():
            v = fld.normalize(col.get(r, 0) + a)
            if v:
                col[r] = v
            else:
                col.pop(r, None)
        if col:
            raise ConsistencyError(f"T_{i}^2 != -T_{i} on basis vector {j}")


class FiniteModule:
    """A finite-dimensional ``H_n(0)``-module.

    ``matrices[i-1]`` is the list of columns of ``T_i`` (sparse dicts).
    ``degrees`` (optional) must be preserved exactly by every ``T_i``;
    ``lengths`` (optional) must be weakly increased (a filtration).
    """

    def __init__(self, n: int, dim: int, matrices, field=QQ, degrees=None, lengths=None,
                 cyclic=None, labels=None, check: bool = True):
        self.n = n
        self.dim = dim
        self.field = field
        norm = field.normalize
        self.matrices = [
            [{r: norm(field(a)) for r, a in col.items() if norm(field(a))} for col in A]
            for A in matrices
        ]
        if len(self.matrices) != max(n - 1, 0):
            raise ValueError(f"need {n - 1} generator matrices, got {len(self.matrices)}")
        for A in self.matrices:
            if len(A) != dim:
                raise ValueError("generator matrix has the wrong number of columns")
        self.degrees = list(degrees) if degrees is not None else None
        self.lengths = list(lengths) if lengths is not None else None
        self.cyclic = dict(cyclic) if cyclic is not None else None
        self.labels = list(labels) if labels is not None else None
        if check:
            self.check_relations()
            self.check_gradings()

    # relations -----------------------------------------------------------
    def check_relations(self) -> None:
        fld, d = self.field, self.dim
        mats = self.matrices
        for i, A in enumerate(mats, 1):
            _square_check(A, d, fld, i)
        for i in range(1, self.n - 1):
            A, B = mats[i - 1], mats[i]
            if matmul(A, matmul(B, A, fld), fld) != matmul(B, matmul(A, B, fld), fld):
                raise ConsistencyError(f"braid relation fails for T_{i}, T_{i + 1}")
        for i in range(1, self.n):
            for j in range(i + 2, self.n):
                A, B = mats[i - 1], mats[j - 1]
                if matmul(A, B, fld) != matmul(B, A, fld):
                    raise ConsistencyError(f"T_{i} and T_{j} do not commute")

    def check_gradings(self) -> None:
        for A in self.matrices:
            for c, col in enumerate(A):
                for r in col:
                    if self.degrees is not None and self.degrees[r] != self.degrees[c]:
                        raise ValueError("generators do not preserve the degree grading")
                    if self.lengths is not None and self.lengths[r] < self.lengths[c]:
                        raise ValueError("generators do not respect the length filtration")

    # action --------------------------------------------------------------
    def act(self, i: int, v: dict) -> dict:
        return matvec(self.matrices[i - 1], v, self.field)

    def act_word(self, word, v: dict) -> dict:
        """``T_{i_1} ... T_{i_k} v``."""
        for i in reversed(tuple(word)):
            v = self.act(i, v)
        return v

    def act_perm(self, w: Permutation, v: dict) -> dict:
        return self.act_word(Permutation(w).reduced_word(), v)

    def basis_vector(self, j: int) -> dict:
        return {j: self.field(1)}

    # constructions -------------------------------------------------------
    def span_closure(self, vectors) -> list[dict]:
        """Basis of the submodule generated by ``vectors``."""
        ech = Echelon(self.field)
        queue = []
        for v in vectors:
            if ech.add(v):
                queue.append(v)
        out = list(queue)
        while queue:
            v = queue.pop()
            for i in range(1, self.n):
                u = self.act(i, v)
                if u and ech.add(u):
                    queue.append(u)
                    out.append(u)
        return out

    def restrict(self, basis, check: bool = True, **extra) -> "FiniteModule":
        """The submodule with the given (invariant, independent) basis."""
        ex = Expresser(basis, self.field)
        mats = []
        for i in range(1, self.n):
            cols = []
            for b in basis:
                c = ex(self.act(i, b))
                if c is None:
                    raise ValueError("span is not invariant under the action")
                cols.append(c)
            mats.append(cols)
        return FiniteModule(self.n, len(basis), mats, self.field, check=check, **extra)

    def quotient(self, sub_basis) -> tuple["FiniteModule", list[int]]:
        """``M / S``; the quotient basis is the images of standard vectors.

        Returns the module and the list of standard indices used.
        """
        ech = Echelon(self.field)
        for v in sub_basis:
            ech.add(v)
        keep = [j for j in range(self.dim) if j not in ech.rows]
        pos = {j: k for k, j in enumerate(keep)}
        mats = []
        for A in self.matrices:
            cols = []
            for j in keep:
                r = ech.reduce(A[j])
                cols.append({pos[k]: a for k, a in r.items()})
            mats.append(cols)
        degrees = [self.degrees[j] for j in keep] if self.degrees is not None else None
        return FiniteModule(self.n, len(keep), mats, self.field, degrees=degrees), keep

    def change_basis(self, basis, **extra) -> "FiniteModule":
        """Same module written in another basis of the whole space."""
        if len(basis) != self.dim:
            raise ValueError("a full basis is required")
        return self.restrict(basis, **extra)

    def associated_graded(self) -> "FiniteModule":
        """Drop every matrix entry that strictly raises the length."""
        if self.lengths is None:
            raise ValueError("module has no length grading")
        L = self.lengths
        mats = [[{r: a for r, a in col.items() if L[r] == L[c]} for c, col in enumerate(A)]
                for A in self.matrices]
        return FiniteModule(self.n, self.dim, mats, self.field, degrees=self.degrees,
                            lengths=self.lengths, labels=self.labels)

    def matrix_rows(self, i: int, subset=None) -> list[dict]:
        """Rows of ``T_i`` restricted to the coordinate subset (both sides)."""
        A = self.matrices[i - 1]
        if subset is None:
            rows = [dict() for _ in range(self.dim)]
            for c, col in enumerate(A):
                for r, a in col.items():
                    rows[r][c] = a
            return rows
        pos = {j: k for k, j in enumerate(subset)}
        rows = [dict() for _ in subset]
        for c in subset:
            for r, a in A[c].items():
                if r in pos:
                    rows[pos[r]][pos[c]] = a
        return rows

    def __repr__(self) -> str:
        return f"FiniteModule(n={self.n}, dim={self.dim}, field={self.field})"


def direct_sum(modules) -> "FiniteModule":
    modules = list(modules)
    n, fld = modules[0].n, modules[0].field
    mats = [[] for _ in range(n - 1)]
    degrees = [] if all(m.degrees is not None for m in modules) else None
    lengths = [] if all(m.lengths is not None for m in modules) else None
    off = 0
    for M in modules:
        for i in range(n - 1):
            mats[i].extend({r + off: a for r, a in col.items()} for col in M.matrices[i])
        if degrees is not None:
            degrees.extend(M.degrees)
        if lengths is not None:
            lengths.extend(M.lengths)
        off += M.dim
    return FiniteModule(n, off, mats, fld, degrees=degrees, lengths=lengths)


def _tableau_action(w: Permutation, i: int):
    """Effect of ``T_i`` on the ribbon tableau with reading word ``w``.

    Returns ``('neg', None)``, ``('zero', None)`` or ``('move', s_i w)``.
    """
    pos_i, pos_j = w.index(i), w.index(i + 1)
    if pos_j < pos_i:
        return "neg", None  # i sits in a higher row than i+1
    u = w.left_mul_simple(i)
    if u.descents() != w.descents():
        return "zero", None  # same row
    return "move", u


def projective_module(alpha, field=QQ, max_n: int | None = None) -> FiniteModule:
    """``P_alpha`` on standard ribbon tableaux of shape ``alpha``.

    Basis vectors are ordered like :func:`descent_class` (so index 0 is
    the column-filled tableau, the cyclic generator).  Lengths are
    ``inv(w)``: the cyclic generator already lies in filtration level
    ``inv(w_0(alpha))`` because ``T_i`` acts on it by ``-1`` for ``i`` in
    ``D(alpha)``.
    """
    alpha = Composition(alpha)
    n = alpha.n
    _check_size(n, max_n)
    cls = descent_class(alpha, max_n)
    index = {w: k for k, w in enumerate(cls)}
    mats = []
    for i in range(1, n):
        cols = []
        for w in cls:
            kind, u = _tableau_action(w, i)
            cols.append({index[w]: -1} if kind == "neg" else {index[u]: 1} if kind == "move" else {})
        mats.append(cols)
    tabs = {t.reading_word(): t for t in standard_tableaux(alpha, max_n)}
    return FiniteModule(n, len(cls), mats, field, lengths=[w.inv() for w in cls],
                        cyclic={0: field(1)}, labels=[tabs[tuple(w)] for w in cls])


def simple_module(alpha, field=QQ) -> FiniteModule:
    """``C_alpha``: ``T_i = -1`` for ``i`` in ``D(alpha)``, else ``0``."""
    alpha = Composition(alpha)
    n = alpha.n
    D = set(alpha.descents)
    mats = [[{0: -1} if i in D else {}] for i in range(1, n)]
    return FiniteModule(n, 1, mats, field, degrees=[0], lengths=[0], cyclic={0: field(1)})


def regular_module(n: int, field=QQ, max_n: int | None = None) -> FiniteModule:
    """Left multiplication on the basis ``{T_w}``, ordered by ``(inv, one-line)``."""
    _check_size(n, max_n)
    perms = sorted(permutations_of(n, max_n), key=lambda w: (w.inv(), tuple(w)))
    index = {w: k for k, w in enumerate(perms)}
    mats = []
    for i in range(1, n):
        cols = []
        for w in perms:
            if w.is_left_descent(i):
                cols.append({index[w]: -1})
            else:
                cols.append({index[w.left_mul_simple(i)]: 1})
        mats.append(cols)
    return FiniteModule(n, len(perms), mats, field, lengths=[w.inv() for w in perms],
                        cyclic={0: field(1)}, labels=perms)


def hecke_to_vector(h: HeckeElement, regular: FiniteModule) -> dict:
    index = {w: k for k, w in enumerate(regular.labels)}
    fld = regular.field
    return {index[w]: fld(c) for w, c in h.coeffs.items() if fld(c)}


def norton_generator(alpha) -> HeckeElement:
    """``T_{w_0(alpha)} T'_{w_0(alpha^c)}``."""
    alpha = Composition(alpha)
    n = alpha.n
    comp = longest_parabolic(alpha.complement().descents, n)
    return HeckeElement.T(w0(alpha)) * HeckeElement.T_prime(comp)


@dataclass
class NortonBlock:
    alpha: Composition
    basis: list          # vectors of the regular module
    words: list          # w in the descent class, aligned with ``basis``
    module: FiniteModule


def norton_submodule(alpha, regular: FiniteModule | None = None) -> NortonBlock:
    """The cyclic submodule of the regular module generated by the Norton element.

    Its basis is ``T_w T'_{w_0(alpha^c)}`` for ``w`` in the descent class;
    the span of that set is checked to equal the generated submodule.
    """
    alpha = Composition(alpha)
    n = alpha.n
    reg = regular_module(n) if regular is None else regular
    comp = HeckeElement.T_prime(longest_parabolic(alpha.complement().descents, n))
    words = descent_class(alpha)
    basis = [hecke_to_vector(HeckeElement.T(w) * comp, reg) for w in words]
    closure = reg.span_closure([hecke_to_vector(norton_generator(alpha), reg)])
    if rank(basis, reg.field) != len(words) or rank(closure, reg.field) != len(words) \
            or rank(basis + closure, reg.field) != len(words):
        raise ConsistencyError(f"Norton basis mismatch for {tuple(alpha)}")
    module = reg.restrict(basis, lengths=[w.inv() for w in words], cyclic={0: reg.field(1)})
    return NortonBlock(alpha, basis, words, module)


# ---------------------------------------------------------------- factors

def _piece_keys(M: FiniteModule, mode: str):
    if mode == "none":
        return [(0, 0)] * M.dim
    if mode == "t":
        if M.degrees is None:
            raise ValueError("t-graded factors need a degree grading")
        return [(0, d) for d in M.degrees]
    if mode == "q":
        if M.lengths is None:
            raise ValueError("q-graded factors need a length grading")
        return [(l, 0) for l in M.lengths]
    if mode == "qt":
        if M.degrees is None or M.lengths is None:
            raise ValueError("bigraded factors need degree and length gradings")
        return list(zip(M.lengths, M.degrees))
    raise ValueError(f"unknown grading mode {mode!r}")


def kernel_hilbert_series(M: FiniteModule, beta: Composition, mode: str = "none") -> BivariatePolynomial:
    """Hilbert series of ``Q_beta = intersection of ker T_j, j not in D(beta)``."""
    if mode in ("q", "qt"):
        M = M.associated_graded()
    keys = _piece_keys(M, mode)
    pieces: dict = {}
    for j, k in enumerate(keys):
        pieces.setdefault(k, []).append(j)
    D = set(beta.descents)
    out: dict = {}
    for k, idx in pieces.items():
        rows = []
        for j in range(1, M.n):
            if j not in D:
                rows.extend(M.matrix_rows(j, idx))
        dimk = len(idx) - rank(rows, M.field)
        if dimk:
            out[k] = dimk
    return BivariatePolynomial(out)


def composition_factors(M: FiniteModule, mode: str = "auto") -> dict:
    """Graded multiplicities ``c_alpha`` of every simple ``C_alpha``.

    ``mode`` is ``none``, ``t`` (degree), ``q`` (length filtration) or
    ``qt``; ``auto`` uses the degree grading when present.
    """
    if mode == "auto":
        mode = "t" if M.degrees is not None else "none"
    if M.n == 0:
        return {Composition(()): BivariatePolynomial.const(M.dim)}
    comps = compositions_of(M.n, max_n=max(M.n, 12))
    hilb = {b: kernel_hilbert_series(M, b, mode) for b in comps}
    out = {}
    for a in comps:
        total = ZERO
        for b in a.coarsenings():
            total = total + (-1) ** (len(a) - len(b)) * hilb[b]
        out[a] = total
    return out


def socle_by_type(M: FiniteModule) -> dict:
    """Common eigenspaces ``S_beta`` (``T_i = -1`` on ``D(beta)``, ``0`` elsewhere).

    Their direct sum is the socle of ``M``.
    """
    fld = M.field
    out = {}
    for a in compositions_of(M.n, max_n=max(M.n, 12)):
        D = set(a.descents)
        rows = []
        for i in range(1, M.n):
            r = M.matrix_rows(i)
            if i in D:
                for j in range(M.dim):
                    r[j] = dict(r[j])
                    v = fld.normalize(r[j].get(j, 0) + 1)
                    if v:
                        r[j][j] = v
                    else:
                        r[j].pop(j, None)
            rows.extend(r)
        out[a] = kernel(rows, M.dim, fld)
    return out


def radical(M: FiniteModule) -> list[dict]:
    """Basis of ``rad M``: the submodule generated by ``(T_i T_j - T_j T_i) M``.

    A quotient on which the ``T_i`` commute is semisimple (each ``T_i``
    is diagonalizable since ``T_i^2 = -T_i``), so this is the smallest
    submodule with semisimple quotient.
    """
    fld = M.field
    gens = []
    for j in range(M.dim):
        e = M.basis_vector(j)
        for a in range(1, M.n):
            for b in range(a + 1, M.n):
                u = vec_add(M.act(a, M.act(b, e)), M.act(b, M.act(a, e)), fld, -1)
                if u:
                    gens.append(u)
    return M.span_closure(gens) if gens else []


def top(M: FiniteModule) -> FiniteModule:
    return M.quotient(radical(M))[0]


def socle_series_factors(M: FiniteModule) -> dict:
    """Ungraded multiplicities from a composition series built by socles.

    Factor out the socle (see :func:`socle_by_type`) and repeat.
    Independent of :func:`composition_factors`.
    """
    counts = {a: 0 for a in compositions_of(M.n, max_n=max(M.n, 12))}
    while M.dim:
        soc = []
        for a, ker in socle_by_type(M).items():
            counts[a] += len(ker)
            soc.extend(ker)
        if not soc:
            raise ConsistencyError("nonzero module with zero socle")
        M, _ = M.quotient(soc)
    return counts


# ---------------------------------------------------------------- filtration

@dataclass
class LengthFiltration:
    dims: list            # dim M^(l) / M^(l+1) for l = 0, 1, ...
    factors: list         # composition factors of each successive quotient
    module: FiniteModule  # M rewritten in an adapted basis with lengths


def cyclic_length_filtration(M: FiniteModule, v: dict | None = None) -> LengthFiltration:
    """``M^(l) = span{T_w v : l(w) >= l}`` and its successive quotients."""
    v = M.cyclic if v is None else v
    if v is None:
        raise ValueError("no cyclic vector supplied")
    images = {Permutation.identity(M.n): dict(v)}
    frontier = [Permutation.identity(M.n)]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(1, M.n):
                if not w.is_left_descent(i):
                    u = w.left_mul_simple(i)
                    if u not in images:
                        images[u] = M.act(i, images[w])
                        nxt.append(u)
        frontier = nxt
    top = max(w.inv() for w in images)
    ech = Echelon(M.field)
    basis, lengths, dims = [], [], []
    for ell in range(top, -1, -1):
        added = 0
        for w in sorted(images, key=lambda w: tuple(w)):
            if w.inv() == ell and ech.add(images[w]):
                basis.append(images[w])
                lengths.append(ell)
                added += 1
        dims.append(added)
    if ech.rank != M.dim:
        raise ValueError("vector does not generate the module")
    basis.reverse()
    lengths.reverse()
    dims.reverse()
    adapted = M.change_basis(basis, lengths=lengths, cyclic={0: M.field(1)})
    gr = adapted.associated_graded()
    factors = []
    for ell in range(top + 1):
        idx = [j for j, l in enumerate(lengths) if l == ell]
        piece = gr.restrict([{j: M.field(1)} for j in idx]) if idx else None
        factors.append({a: int(m.evaluate(q=1, t=1)) for a, m in composition_factors(piece, "none").items()
                        if m} if piece else {})
    return LengthFiltration(dims, factors, adapted)


# ---------------------------------------------------------------- isomorphism

@dataclass
class IsomorphismWitness:
    found: bool
    matrix: list = dc_field(default_factory=list)  # columns: images of M's basis in N
    reason: str = ""

    def __bool__(self) -> bool:
        return self.found


def intertwines(M: FiniteModule, N: FiniteModule, X) -> bool:
    """``X A_i = B_i X`` for every generator and ``X`` invertible."""
    if M.dim != N.dim or M.n != N.n:
        return False
    fld = M.field
    for A, B in zip(M.matrices, N.matrices):
        if matmul(X, A, fld) != matmul(B, X, fld):
            return False
    return is_invertible(X, M.dim, fld)


def _invariants(M: FiniteModule):
    return tuple(kernel_hilbert_series(M, b, "none").evaluate(q=1, t=1)
                 for b in compositions_of(M.n, max_n=max(M.n, 12)))


def _cyclic_candidate(M: FiniteModule, N: FiniteModule, v: dict, v2: dict):
    """Extend ``v -> v2`` to a linear map along words generating ``M`` from ``v``."""
    fld = M.field
    ech = Echelon(fld)
    pairs = []
    queue = [(v, v2)]
    if ech.add(v):
        pairs.append((v, v2))
    while queue:
        a, b = queue.pop()
        for i in range(1, M.n):
            a2 = M.act(i, a)
            if a2 and ech.add(a2):
                item = (a2, N.act(i, b))
                pairs.append(item)
                queue.append(item)
    if ech.rank != M.dim:
        return None
    ex = Expresser([p[0] for p in pairs], fld)
    cols = []
    for j in range(M.dim):
        c = ex({j: fld(1)})
        col: dict = {}
        for k, coef in c.items():
            for r, val in pairs[k][1].items():
                s = fld.normalize(col.get(r, 0) + coef * val)
                if s:
                    col[r] = s
                else:
                    col.pop(r, None)
        cols.append(col)
    return cols


def module_isomorphic(M: FiniteModule, N: FiniteModule, candidate=None, seed: int = 0,
                      max_solve_dim: int = 40) -> IsomorphismWitness:
    """Search for an invertible intertwiner ``X`` with ``X T_i^M = T_i^N X``.

    Order of attempts: a supplied candidate; the cyclic-vector extension
    when both modules carry cyclic vectors; the full linear system for
    ``Hom(M, N)`` (only up to ``max_solve_dim``) with random elements.
    """
    if M.n != N.n or M.dim != N.dim or M.field != N.field:
        return IsomorphismWitness(False, reason="dimension, rank or field differs")
    if candidate is not None:
        ok = intertwines(M, N, candidate)
        return IsomorphismWitness(ok, candidate if ok else [], "" if ok else "candidate rejected")
    if _invariants(M) != _invariants(N):
        return IsomorphismWitness(False, reason="kernel dimensions differ")
    if M.cyclic is not None and N.cyclic is not None:
        X = _cyclic_candidate(M, N, M.cyclic, N.cyclic)
        if X is not None and intertwines(M, N, X):
            return IsomorphismWitness(True, X)
    if M.dim > max_solve_dim:
        return IsomorphismWitness(False, reason="no witness found within the size limit")
    basis = hom_space(M, N)
    rng = Random(seed)
    for _ in range(8):
        X = random_combination(basis, M.field, rng)
        cols = _unflatten(X, M.dim)
        if intertwines(M, N, cols):
            return IsomorphismWitness(True, cols)
    return IsomorphismWitness(False, reason="no invertible homomorphism found")


def hom_space(M: FiniteModule, N: FiniteModule) -> list[dict]:
    """Basis of ``Hom(M, N)``; ``X[r][c]`` is flattened to key ``c * dimN + r``."""
    d, e = M.dim, N.dim
    fld = M.field
    rows = []
    for A, B in zip(M.matrices, N.matrices):
        # (X A - B X)[r][c] = sum_k X[r][k] A[k][c] - sum_k B[r][k] X[k][c]
        Brows = [dict() for _ in range(e)]
        for k, col in enumerate(B):
            for r, a in col.items():
                Brows[r][k] = a
        for c in range(d):
            for r in range(e):
                eq: dict = {}
                for k, a in A[c].items():
                    key = k * e + r
                    eq[key] = fld.normalize(eq.get(key, 0) + a)
                for k, b in Brows[r].items():
                    key = c * e + k
                    eq[key] = fld.normalize(eq.get(key, 0) - b)
                eq = {k: v for k, v in eq.items() if v}
                if eq:
                    rows.append(eq)
    return kernel(rows, d * e, fld)


def _unflatten(x: dict, d: int) -> list[dict]:
    cols = [dict() for _ in range(d)]
    e = d
    for key, val in x.items():
        c, r = divmod(key, e)
        cols[c][r] = val
    return cols


def witness_checksum(X) -> str:
    """Stable short digest of a witness matrix (for reports)."""
    import hashlib
    payload = repr(sorted((c, sorted((r, str(a)) for r, a in col.items())) for c, col in enumerate(X)))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]
