"""Random H_n(0)-modules built as iterated extensions, for engine cross-checks."""

from random import Random

from zerohecke.combinat import compositions_of
from zerohecke.hecke0 import direct_sum, projective_module, simple_module
from zerohecke.linalg import RationalField, is_invertible, random_combination

QQ = RationalField()


def random_extension_module(n: int, rng: Random, min_dim: int = 3):
    while True:
        M = _attempt(n, rng)
        if M.dim >= min_dim:
            return M


def _attempt(n: int, rng: Random):
    """A subquotient of a sum of projectives and simples, in a scrambled basis.

    Subquotients of projectives are iterated extensions of simples with
    nontrivial gluing; the basis change hides the block structure.
    """
    comps = compositions_of(n)
    parts = [projective_module(rng.choice(comps)) for _ in range(rng.randint(2, 3))]
    parts += [simple_module(rng.choice(comps)) for _ in range(rng.randint(0, 2))]
    M = direct_sum(parts)
    basis = [M.basis_vector(j) for j in range(M.dim)]
    gens = [random_combination(basis, QQ, rng, spread=3) for _ in range(rng.randint(1, 2))]
    sub = M.span_closure([g for g in gens if g])
    if sub:
        M = M.restrict(sub)
    if M.dim > 1 and rng.random() < 0.5:
        basis = [M.basis_vector(j) for j in range(M.dim)]
        v = random_combination(basis, QQ, rng, spread=3)
        small = M.span_closure([M.act(rng.randint(1, n - 1), v)]) if n > 1 else []
        if small and len(small) < M.dim:
            M, _ = M.quotient(small)
    while True:
        cols = [{r: rng.randint(-2, 2) for r in range(M.dim)} for _ in range(M.dim)]
        cols = [{r: x for r, x in c.items() if x} for c in cols]
        if is_invertible(cols, M.dim, QQ):
            return M.change_basis(cols)


def peeled_composition_factors(M) -> dict:
    """Composition series one line at a time.

    Every nonzero module has a common eigenvector of the T_i (it contains a
    simple, and simples are one-dimensional); it spans a submodule.  Record
    its type, quotient it out and continue.
    """
    from zerohecke.linalg import kernel

    fld = M.field
    out: dict = {}
    while M.dim:
        for a in compositions_of(M.n):
            D = set(a.descents)
            rows = []
            for i in range(1, M.n):
                cols = [M.act(i, M.basis_vector(j)) for j in range(M.dim)]
                if i in D:
                    cols = [dict(c) for c in cols]
                    for j, c in enumerate(cols):
                        v = fld.normalize(c.get(j, 0) + 1)
                        if v:
                            c[j] = v
                        else:
                            c.pop(j, None)
                for r in range(M.dim):
                    row = {j: c[r] for j, c in enumerate(cols) if r in c}
                    rows.append(row)
            ker = kernel(rows, M.dim, fld)
            if ker:
                out[a] = out.get(a, 0) + 1
                M = M.quotient([ker[0]])[0]
                break
        else:
            raise AssertionError("no common eigenvector in a nonzero module")
    return out
