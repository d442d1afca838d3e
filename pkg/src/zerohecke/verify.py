"""Named verification suites.  Each returns a :class:`SuiteResult`; a failed
check carries a machine-readable witness instead of raising."""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random

from .coinvariant import (
    bigraded_characteristic_coinvariant, coinvariant_module, decompose_blocks,
    demazure_preserves_ideal, regular_witness, springer_module,
)
from .combinat import Composition, compositions_of, descent_class, partitions_of, permutations_of
from .errors import ConsistencyError
from .flagvar import flag_characteristic, flag_factor_table, hecke_action_flags, tits_chain_complex
from .hecke0 import module_isomorphic, norton_submodule, projective_module, regular_module
from .linalg import RationalField, rank
from .polyring import MultivariatePolynomial, demazure, demazure_bar
from .qtarith import BivariatePolynomial, ZERO, q_factorial, ribbon_number, ribbon_number_q

__all__ = ["SuiteResult", "SUITES", "run_suite", "random_polynomial"]


@dataclass
class SuiteResult:
    suite: str
    params: dict
    checks: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, witness) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(witness)

    def to_json(self) -> dict:
        return {"suite": self.suite, "params": self.params, "passed": self.passed,
                "checks": self.checks, "failures": self.failures, "notes": self.notes}


def random_polynomial(rng: Random, n: int, max_degree: int = 6, terms: int = 6) -> MultivariatePolynomial:
    out = {}
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(0, max_degree)
        e = [0] * n
        for _ in range(d):
            e[rng.randrange(n)] += 1
        out[tuple(e)] = out.get(tuple(e), 0) + rng.choice([-3, -2, -1, 1, 2, 3])
    return MultivariatePolynomial(n, out)


def suite_demazure_relations(n: int, seed: int = 0, count: int = 200, **_) -> SuiteResult:
    """Idempotence, braid and commutation relations for ``pi_i`` and ``pibar_i``."""
    res = SuiteResult("demazure-relations", {"n": n, "seed": seed, "count": count})
    rng = Random(seed)
    for k in range(count):
        nv = 2 + k % max(n - 1, 1) if n >= 2 else 1
        f = random_polynomial(rng, nv)
        for i in range(1, nv):
            p = demazure(i, f)
            res.check(demazure(i, p) == p, {"relation": "pi_i^2", "i": i, "f": f.to_json()})
            b = demazure_bar(i, f)
            res.check(demazure_bar(i, b) == -b, {"relation": "pibar_i^2", "i": i, "f": f.to_json()})
            if i + 1 < nv:
                for op, name in ((demazure, "pi"), (demazure_bar, "pibar")):
                    lhs = op(i, op(i + 1, op(i, f)))
                    rhs = op(i + 1, op(i, op(i + 1, f)))
                    res.check(lhs == rhs, {"relation": f"{name} braid", "i": i, "f": f.to_json()})
            for j in range(i + 2, nv):
                res.check(demazure(i, demazure(j, f)) == demazure(j, demazure(i, f)),
                          {"relation": "commutation", "i": i, "j": j, "f": f.to_json()})
    return res


def suite_norton(n: int, **_) -> SuiteResult:
    """The regular module splits into the ``2^{n-1}`` Norton blocks, each ``~ P_alpha``."""
    res = SuiteResult("norton", {"n": n})
    reg = regular_module(n)
    span, total = [], 0
    comps = compositions_of(n)
    for a in comps:
        blk = norton_submodule(a, reg)
        d = len(blk.basis)
        total += d
        span.extend(blk.basis)
        res.check(d == ribbon_number(a), {"alpha": list(a), "dimension": d})
        wit = module_isomorphic(projective_module(a), blk.module)
        res.check(bool(wit), {"alpha": list(a), "reason": wit.reason})
    res.check(len(comps) == 2 ** (n - 1), {"blocks": len(comps)})
    res.check(total == reg.dim and rank(span, RationalField()) == reg.dim,
              {"total": total, "rank": rank(span, RationalField())})
    return res


def suite_coinvariant_regular(n: int, **_) -> SuiteResult:
    """Atom basis, block witnesses, regular witness and the bigraded characteristic."""
    res = SuiteResult("coinvariant-regular", {"n": n})
    try:
        cm = coinvariant_module(n)
        res.check(cm.ring.dimension() == len(permutations_of(n)), {"dimension": cm.ring.dimension()})
        res.check(cm.ring.hilbert_series() == q_factorial(n, "t"),
                  {"hilbert_series": cm.ring.hilbert_series().to_json()})
        for rep in decompose_blocks(cm):
            res.check(rep.dimension == ribbon_number(rep.alpha), rep.to_json())
            res.notes.append(rep.to_json())
        regular_witness(cm)
        res.checks += 1
        bigraded_characteristic_coinvariant(n, cm)
        res.checks += 1
    except ConsistencyError as exc:
        res.failures.append({"error": str(exc)})
    return res


def suite_foata(n: int, **_) -> SuiteResult:
    """``r_alpha(q)`` with ``q -> t`` equals ``sum_{D(w)=D(alpha)} t^maj(w^-1)``."""
    res = SuiteResult("foata", {"n": n})
    for a in compositions_of(n):
        lhs = ribbon_number_q(a).q_to_t()
        rhs = ZERO
        for w in descent_class(a):
            rhs = rhs + BivariatePolynomial.monomial(0, w.inverse().maj())
        res.check(lhs == rhs, {"alpha": list(a), "inv": lhs.to_json(), "imaj": rhs.to_json()})
    return res


def suite_flag_multiplicity(n: int, q: int = 2, **_) -> SuiteResult:
    res = SuiteResult("flag-multiplicity", {"n": n, "q": q})
    try:
        fm = hecke_action_flags(n, q)
        res.check(len(fm.flags) == q_factorial(n).evaluate(q=q, t=1), {"flags": len(fm.flags)})
        for row in flag_factor_table(n, q, fm):
            res.checks += 1
            res.notes.append({"alpha": list(row.alpha), "dim_Q_alpha": row.dim_Q_alpha,
                              "multiplicity": row.multiplicity})
        flag_characteristic(n, q, fm)
        res.checks += 1
    except ConsistencyError as exc:
        res.failures.append({"error": str(exc)})
    return res


def suite_hook_springer(n: int, **_) -> SuiteResult:
    """Hooks: stable ideal and projective decomposition.  Non-hooks: a witness."""
    res = SuiteResult("hook-springer", {"n": n})
    cm = coinvariant_module(n)
    for mu in partitions_of(n):
        rep = demazure_preserves_ideal(mu)
        if mu.is_hook():
            res.check(rep.preserved, {"mu": list(mu), "expected": "preserved", **rep.to_json()})
            try:
                sm = springer_module(mu, cm)
                res.checks += 1
                res.notes.append({"mu": list(mu), "decomposition": sm.decomposition_json()})
            except ConsistencyError as exc:
                res.failures.append({"mu": list(mu), "error": str(exc)})
        else:
            res.check(not rep.preserved and rep.witness is not None,
                      {"mu": list(mu), "expected": "not preserved"})
            res.notes.append(rep.to_json())
    return res


def suite_chain_complex(n: int, q: int = 2, **_) -> SuiteResult:
    res = SuiteResult("chain-complex", {"n": n, "q": q})
    for a in compositions_of(n):
        try:
            cc = tits_chain_complex(n, q, a)
            res.checks += 1
            res.notes.append({"alpha": list(a), "dims": cc.dims, "chi": cc.chi_dimension})
        except ConsistencyError as exc:
            res.failures.append({"alpha": list(a), "error": str(exc)})
    return res


SUITES = {
    "demazure-relations": suite_demazure_relations,
    "norton": suite_norton,
    "coinvariant-regular": suite_coinvariant_regular,
    "foata": suite_foata,
    "flag-multiplicity": suite_flag_multiplicity,
    "hook-springer": suite_hook_springer,
    "chain-complex": suite_chain_complex,
}


def run_suite(name: str, **params) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](**params)
