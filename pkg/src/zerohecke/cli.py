"""Command-line driver: ``zerohecke {ribbon,char,verify} ...``.

Exit codes: 0 success, 1 verification failure, 2 size cap exceeded,
3 mode unavailable for the module, 4 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .charmap import characteristic, noncommutative_characteristic
from .coinvariant import coinvariant_module, springer_module
from .combinat import Composition, Partition
from .errors import ConsistencyError, SizeLimitError, UnsupportedError
from .flagvar import flag_characteristic, flag_factor_table, factor_table_csv, hecke_action_flags
from .hecke0 import projective_module, regular_module, simple_module
from .qtarith import (
    QTFactorialContext, q_multinomial, qt_multinomial, ribbon_number, ribbon_number_q,
    ribbon_number_qt, ribbon_number_t,
)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_CAP, EXIT_MODE, EXIT_USAGE = 0, 1, 2, 3, 4

DEFAULT_CAPS = {"ribbon": 8, "char": 6, "verify": 7}


class UsageError(Exception):
    pass


class ModeUnavailable(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class CommandConfig:
    command: str
    n: int | None = None
    q: int | None = None
    qt: bool = False
    alpha: Composition | None = None
    mu: Partition | None = None
    module: str = "coinvariant"
    mode: str = "plain"
    basis: str = "F"
    suite: str | None = None
    format: str = "pretty"
    max_n: int | None = None
    seed: int = 0


def _composition(text: str) -> Composition:
    try:
        parts = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad composition {text!r}")
    if not parts or any(p <= 0 for p in parts):
        raise UsageError(f"bad composition {text!r}")
    return Composition(parts)


def _partition(text: str) -> Partition:
    parts = tuple(_composition(text))
    if list(parts) != sorted(parts, reverse=True):
        raise UsageError(f"partition {text!r} must be given with decreasing parts")
    return Partition(parts)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zerohecke", description="0-Hecke algebra computations and checks")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--q", type=int)
    common.add_argument("--format", choices=["pretty", "json", "csv"], default="pretty")
    common.add_argument("--max-n", dest="max_n", type=int)
    common.add_argument("--seed", type=int, default=0)

    r = sub.add_parser("ribbon", parents=[common], help="ribbon numbers and multinomials")
    r.add_argument("--alpha", required=True)
    r.add_argument("--qt", action="store_true", help="include the (q,t) refinement at --q")

    c = sub.add_parser("char", parents=[common], help="characteristics of modules")
    c.add_argument("--module", default="coinvariant",
                   choices=["regular", "coinvariant", "projective", "simple", "springer", "flag"])
    c.add_argument("--mode", default="plain", choices=["plain", "q", "t", "qt", "nc"])
    c.add_argument("--basis", default="F", choices=["F", "M", "schur"])
    c.add_argument("--alpha")
    c.add_argument("--mu")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", required=True)
    return p


def parse_config(argv) -> CommandConfig:
    ns = build_parser().parse_args(argv)
    if ns.command is None:
        raise UsageError("missing subcommand (ribbon, char or verify)")
    alpha = _composition(ns.alpha) if getattr(ns, "alpha", None) else None
    mu = _partition(ns.mu) if getattr(ns, "mu", None) else None
    n = ns.n
    for obj in (alpha, mu):
        if obj is not None:
            if n is None:
                n = obj.n
            elif obj.n != n:
                raise UsageError(f"{tuple(obj)} is not a composition of n={n}")
    if ns.q is not None and ns.q < 2:
        raise UsageError("--q must be at least 2")
    cfg = CommandConfig(
        command=ns.command, n=n, q=ns.q, qt=getattr(ns, "qt", False), alpha=alpha, mu=mu,
        module=getattr(ns, "module", "coinvariant"), mode=getattr(ns, "mode", "plain"),
        basis=getattr(ns, "basis", "F"), suite=getattr(ns, "suite", None), format=ns.format,
        max_n=ns.max_n, seed=ns.seed,
    )
    if cfg.command == "verify" and cfg.suite not in SUITES:
        raise UsageError(f"unknown suite {cfg.suite!r}; choose from {', '.join(SUITES)}")
    if cfg.qt and cfg.q is None:
        raise UsageError("--qt needs --q")
    if cfg.n is None:
        raise UsageError("--n is required")
    if cfg.n < 1:
        raise UsageError("--n must be positive")
    cap = cfg.max_n if cfg.max_n is not None else DEFAULT_CAPS[cfg.command]
    if cfg.n > cap:
        raise SizeLimitError(f"n={cfg.n} exceeds the cap {cap} (raise it with --max-n)")
    return cfg


# ---------------------------------------------------------------- commands

def cmd_ribbon(cfg: CommandConfig) -> tuple[int, dict]:
    a = cfg.alpha
    out = {
        "alpha": list(a),
        "r": ribbon_number(a),
        "r_q": ribbon_number_q(a, max_n=cfg.max_n),
        "r_t": ribbon_number_t(a, max_n=cfg.max_n),
        "multinomial_q": q_multinomial(a.n, a),
    }
    if cfg.q is not None:
        out["q"] = cfg.q
        out["r_q_at_q"] = ribbon_number_q(a).evaluate(q=cfg.q, t=1)
    if cfg.qt:
        ctx = QTFactorialContext(cfg.q)
        rqt = ribbon_number_qt(ctx, a)
        out["r_qt"] = rqt
        out["multinomial_qt"] = qt_multinomial(ctx, a.n, a)
        if rqt.evaluate(t=1).evaluate(q=0, t=0) != out["r_q_at_q"]:
            raise ConsistencyError("r_alpha(q,t) at t=1 differs from r_alpha(q)")
    return EXIT_OK, out


def _module_for(cfg: CommandConfig):
    m = cfg.module
    if m == "regular":
        return regular_module(cfg.n)
    if m == "coinvariant":
        return coinvariant_module(cfg.n).module
    if m in ("projective", "simple"):
        if cfg.alpha is None:
            raise UsageError(f"--module {m} needs --alpha")
        return projective_module(cfg.alpha) if m == "projective" else simple_module(cfg.alpha)
    if m == "springer":
        if cfg.mu is None:
            raise UsageError("--module springer needs --mu")
        return springer_module(cfg.mu)
    raise UsageError(f"unknown module {m!r}")


def cmd_characteristic(cfg: CommandConfig) -> tuple[int, dict]:
    out = {"module": cfg.module, "n": cfg.n, "mode": cfg.mode}
    if cfg.module == "flag":
        if cfg.q is None:
            raise UsageError("--module flag needs --q")
        if cfg.mode != "plain":
            raise ModeUnavailable("the flag module carries no grading; only --mode plain")
        fm = hecke_action_flags(cfg.n, cfg.q)
        if cfg.format == "csv":
            return EXIT_OK, {"csv": factor_table_csv(flag_factor_table(cfg.n, cfg.q, fm))}
        ch = flag_characteristic(cfg.n, cfg.q, fm)
        out["q"] = cfg.q
        return EXIT_OK, _with_char(out, ch, cfg.basis)
    obj = _module_for(cfg)
    if cfg.mode == "nc":
        if cfg.module == "springer":
            out["characteristic"] = obj.noncommutative_characteristic()
        elif cfg.module == "coinvariant":
            out["characteristic"] = noncommutative_characteristic(
                [(a, a.maj) for a in sorted(coinvariant_module(cfg.n).blocks, key=_comp_key)])
        elif cfg.module == "projective":
            out["characteristic"] = noncommutative_characteristic([(cfg.alpha, 0)])
        else:
            raise ModeUnavailable(f"no projective decomposition recorded for --module {cfg.module}")
        return EXIT_OK, out
    M = obj.module if cfg.module == "springer" else obj
    if cfg.mode in ("q", "qt") and cfg.module == "springer":
        raise ModeUnavailable("R_mu is reported with its degree grading only (--mode plain, t or nc)")
    try:
        ch = characteristic(M, cfg.mode)
    except ValueError as exc:
        raise ModeUnavailable(str(exc))
    return EXIT_OK, _with_char(out, ch, cfg.basis)


def _comp_key(a):
    return (len(a.descents), a.descents)


def _with_char(out: dict, ch, basis: str) -> dict:
    if basis == "schur":
        if not ch.is_symmetric():
            raise ModeUnavailable("characteristic is not symmetric; no Schur expansion")
        out["characteristic"] = ch.to_sym().to_schur()
    else:
        out["characteristic"] = ch.in_basis(basis)
    return out


def cmd_verify(cfg: CommandConfig) -> tuple[int, dict]:
    params = {"n": cfg.n, "seed": cfg.seed}
    if cfg.suite in ("flag-multiplicity", "chain-complex"):
        params["q"] = cfg.q if cfg.q is not None else 2
    res = run_suite(cfg.suite, **params)
    return (EXIT_OK if res.passed else EXIT_FAIL), res.to_json()


COMMANDS = {"ribbon": cmd_ribbon, "char": cmd_characteristic, "verify": cmd_verify}


# ---------------------------------------------------------------- output

def _jsonable(obj):
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _pretty(report: dict, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_pretty(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(f"{pad}  - " + json.dumps(_jsonable(item), sort_keys=True))
        elif isinstance(v, list):
            lines.append(f"{pad}{k}: {json.dumps(_jsonable(v))}")
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


def render(report: dict, fmt: str) -> str:
    if "csv" in report:
        return report["csv"].rstrip("\n")
    if fmt == "json":
        return json.dumps(_jsonable(report), indent=2)
    if fmt == "csv":
        raise ModeUnavailable("CSV output exists only for the flag factor table")
    return _pretty(report)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        code, report = COMMANDS[cfg.command](cfg)
        print(render(report, cfg.format))
        return code
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeLimitError as exc:
        print(f"size cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ModeUnavailable, UnsupportedError) as exc:
        print(f"unavailable: {exc}", file=sys.stderr)
        return EXIT_MODE
    except ConsistencyError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
