"""Command-line entry point: ``tkklab <group> <action> [options]``.

Every check prints one JSON object per line with sorted keys.  Exit status is
0 when all requested checks pass, 1 when any fails, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .jordan import KINDS, normalize_kind

TIERS = ("small", "large")
_DEFAULT_N = {"hermO": 3}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    group: str
    action: str
    kind: str | None = None
    n: int | None = None
    seed: int = 0
    tier: str = "small"
    fmt: str = "json"
    extra: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _validate_kind_n(kind: str | None, n: int | None, need: bool = True) -> tuple:
    if kind is None:
        if need:
            raise UsageError("--kind is required")
        return None, None
    try:
        kind = normalize_kind(kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if n is None:
        n = _DEFAULT_N.get(kind)
        if n is None:
            raise UsageError("--n is required")
    from .jordan import _check_kind_n

    try:
        _check_kind_n(kind, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return kind, n


_CARTAN_OK = {
    "spin": lambda n: 2 <= n,
    "hermR": lambda n: n >= 2,
    "hermC": lambda n: n >= 2,
    "hermH": lambda n: n >= 2,
    "hermO": lambda n: n == 3,
}
_WEIGHTS_OK = {
    "spin": lambda n: 2 <= n <= 6,
    "hermR": lambda n: 2 <= n <= 4,
    "hermC": lambda n: 2 <= n <= 4,
    "hermH": lambda n: 2 <= n <= 4,
    "hermO": lambda n: n == 3,
}


def _parse_weight(text: str) -> tuple:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError:
        raw = [t for t in text.replace("[", "").replace("]", "").split(",") if t.strip()]
    if not isinstance(raw, list):
        raise UsageError("--weight must be a list")
    try:
        return tuple(Fraction(str(x).strip()) for x in raw)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse weight {text!r}") from None


def _parse_fraction(text: str, name: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse {name} {text!r}") from None


def make_config(ns: argparse.Namespace) -> RunConfig:
    tier = os.environ.get("TKKLAB_TIER") or ns.tier
    if tier not in TIERS:
        raise UsageError(f"tier must be one of {TIERS}")
    group, action = ns.group, ns.action
    extra = {}
    need_kind = not (group == "weights" and action == "tables") and group != "all"
    kind, n = _validate_kind_n(getattr(ns, "kind", None), getattr(ns, "n", None), need_kind)
    if group in ("cartan", "ueval") and kind and not _CARTAN_OK[kind](n):
        raise UsageError(f"{group} does not support {kind}({n})")
    if group == "ueval" and action == "lemma7" and kind == "spin":
        raise UsageError("lemma7 needs a Hermitian kind")
    if group == "weights" and kind and not _WEIGHTS_OK[kind](n):
        raise UsageError(f"no weight equations for {kind}({n})")
    if group == "weights" and action == "solve" and kind == "spin":
        raise UsageError("the bounded search covers the Hermitian kinds")
    for key in ("samples", "depth", "bound", "k_max", "jobs", "reading", "u", "hw", "format", "relation"):
        if hasattr(ns, key):
            extra[key] = getattr(ns, key)
    for key in ("samples", "bound", "jobs"):
        if key in extra and extra[key] is not None and extra[key] < 1:
            raise UsageError(f"--{key} must be positive")
    if "k_max" in extra and extra["k_max"] is not None and extra["k_max"] < 0:
        raise UsageError("--k-max must be nonnegative")
    if getattr(ns, "weight", None) is not None:
        from .cartan import weight_length

        lam = _parse_weight(ns.weight)
        if len(lam) != weight_length(kind, n):
            raise UsageError(f"weight must have {weight_length(kind, n)} coordinates")
        extra["weight"] = lam
    if getattr(ns, "a", None) is not None:
        extra["a"] = _parse_fraction(ns.a, "--a")
    if group == "ueval" and action == "hw":
        if kind == "hermO" and tier != "large":
            raise UsageError("hw_eval for e7 runs only in the large tier")
        if "weight" not in extra:
            raise UsageError("--weight is required")
    if group == "weights" and action == "check" and ("weight" not in extra or "a" not in extra):
        raise UsageError("--weight and --a are required")
    return RunConfig(group, action, kind, n, ns.seed, tier, getattr(ns, "format", None) or "json", extra)


# ---------------------------------------------------------------------------
# runners; each returns a list of JSON-ready dicts with a "status" key
# ---------------------------------------------------------------------------

def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _jordan_info(c: RunConfig) -> list:
    from .jordan import build_jordan

    out = build_jordan(c.kind, c.n).info()
    out["status"] = "pass"
    return [out]


def _jordan_verify(c: RunConfig) -> list:
    from .jordan import build_jordan, verify_frame, verify_jordan_axioms

    J = build_jordan(c.kind, c.n)
    return [verify_jordan_axioms(J, samples=c.extra.get("samples") or 50, seed=c.seed).to_json(),
            verify_frame(J).to_json()]


def _tkk_build(c: RunConfig) -> list:
    from .jordan import build_jordan
    from .tkk import build_tkk, der_dimension, str_dimension

    J = build_jordan(c.kind, c.n)
    g = build_tkk(J)
    want = (str_dimension(c.kind, c.n), 2 * J.D + str_dimension(c.kind, c.n))
    ok = (g.s_dim, g.dim) == want
    return [{"identity": f"build co({c.kind}{c.n})", "status": _status(ok), "D": J.D,
             "str": g.s_dim, "der": g.s_dim - J.D, "co": g.dim,
             "expected": {"str": want[0], "co": want[1], "der": der_dimension(c.kind, c.n)}}]


def _tkk_verify(c: RunConfig) -> list:
    from .jordan import build_jordan
    from .tkk import build_tkk, verify_epm_brackets, verify_jacobi

    g = build_tkk(build_jordan(c.kind, c.n))
    lemma = verify_epm_brackets(g).to_json()
    if c.kind == "hermO" and c.tier != "large":
        # all triples of a 133-dim algebra are large-tier work; sample a seeded index subset
        size = c.extra.get("samples") or 24
        idx = sorted(random.Random(c.seed).sample(range(g.dim), min(size, g.dim)))
        rep = verify_jacobi(g, idx)
        rep.details["mode"] = f"index subset of size {len(idx)}"
        return [rep.to_json(), lemma]
    return [verify_jacobi(g).to_json(), lemma]


def _cartan_verify(c: RunConfig) -> list:
    from .cartan import cartan_basis, verify_phi

    out = []
    if c.kind == "spin":
        out.append(verify_phi(c.n).to_json())
    reading = c.extra.get("reading")
    cb = cartan_basis(c.kind, c.n, reading)
    rep = cb.report.to_json()
    rep["constants"] = cb.constants_json()
    out.append(rep)
    return out


def _cartan_roots(c: RunConfig) -> list:
    from .cartan import root_system, simple_roots

    roots = root_system(c.kind, c.n)
    return [{"identity": f"roots {c.kind}({c.n})", "status": "pass",
             "roots": [r.to_json() for r in roots],
             "simple": [r.label for r in simple_roots(roots)]}]


def _ueval_lemma7(c: RunConfig) -> list:
    from .jordan import build_jordan
    from .ueval import verify_lemma7

    J = build_jordan(c.kind, c.n)
    rep = verify_lemma7(J, samples=c.extra.get("samples") or 50, seed=c.seed,
                        exhaustive_depth=c.extra.get("depth") or 3,
                        reading=c.extra.get("reading") or "corrected")
    return [rep.to_json()]


def _ueval_hw(c: RunConfig) -> list:
    from .ueval import hw_eval, q_elements, triangular_split
    from .weights import _u_element

    S = triangular_split(c.kind, c.n)
    a = c.extra.get("a") or Fraction(0)
    u = _u_element(S.g.J, c.extra["u"]) if c.extra.get("u") else None
    Q = q_elements(S, a, u)
    lam = c.extra["weight"]
    vals = {}
    ok = True
    for name in c.extra.get("relation") or ("Q1", "Q2", "Q3", "Q4"):
        P = getattr(Q, name)
        if P is None:
            continue
        v = hw_eval(S, P, lam).scalar_part
        vals[name] = str(v)
        ok &= v.is_zero()
    return [{"identity": f"hw_eval {c.kind}({c.n})", "status": _status(ok), "a": str(a),
             "u": c.extra.get("u"), "weight": [str(x) for x in lam], "scalar_parts": vals}]


def _weights_check(c: RunConfig) -> list:
    from .weights import check_weight

    mode = c.extra.get("hw") or "auto"
    hw = mode == "on" or (mode == "auto" and (c.kind != "hermO" or c.tier == "large"))
    rep = check_weight(c.kind, c.n, c.extra["weight"], c.extra["a"], hw=hw).to_json()
    rep["status"] = _status(rep.pop("ok"))
    rep["identity"] = f"weight check {c.kind}({c.n})"
    return [rep]


def _weights_solve(c: RunConfig) -> list:
    from .weights import solve_weights

    k_max = c.extra.get("k_max")
    bound = c.extra.get("bound")
    if bound is None:
        bound = 5 if c.kind == "hermO" else 3
    res = solve_weights(c.kind, c.n, 2 if k_max is None else k_max, bound)
    out = res.to_json()
    out["status"] = _status(res.exact)
    out["identity"] = f"weight search {c.kind}({c.n})"
    return [out]


def _weights_tables(c: RunConfig) -> list:
    from .weights import ehw_rows, tables_json, tables_markdown

    rows = ehw_rows()
    ok = all(r["named_dims_match"] and r["r_eq_rho"] and r["2C_eq_d"] for r in rows)
    if c.fmt == "md":
        return [{"status": _status(ok), "_text": tables_markdown()}]
    out = json.loads(tables_json())
    out["status"] = _status(ok)
    return [out]


RUNNERS = {
    ("jordan", "info"): _jordan_info,
    ("jordan", "verify"): _jordan_verify,
    ("tkk", "build"): _tkk_build,
    ("tkk", "verify"): _tkk_verify,
    ("cartan", "verify"): _cartan_verify,
    ("cartan", "roots"): _cartan_roots,
    ("ueval", "lemma7"): _ueval_lemma7,
    ("ueval", "hw"): _ueval_hw,
    ("weights", "solve"): _weights_solve,
    ("weights", "check"): _weights_check,
    ("weights", "tables"): _weights_tables,
}

# `verify <module>` picks the main check of each module
VERIFY_ALIAS = {
    "jordan": "verify",
    "tkk": "verify",
    "cartan": "verify",
    "ueval": "lemma7",
    "weights": "solve",
}

# quick suite for `verify all`
SUITE = (
    ("jordan", "verify", "spin", 4), ("jordan", "verify", "hermR", 3), ("jordan", "verify", "hermC", 3),
    ("jordan", "verify", "hermH", 3), ("jordan", "verify", "hermO", 3),
    ("tkk", "verify", "spin", 3), ("tkk", "verify", "hermR", 3), ("tkk", "verify", "hermC", 3),
    ("cartan", "verify", "hermR", 3), ("cartan", "verify", "hermC", 2), ("cartan", "verify", "hermH", 2),
    ("ueval", "lemma7", "hermC", 2),
    ("weights", "solve", "hermR", 3),
)


def _run_one(c: RunConfig) -> list:
    return RUNNERS[(c.group, c.action)](c)


def _run_all(c: RunConfig) -> list:
    configs = [RunConfig(g, a, k, n, c.seed, c.tier) for g, a, k, n in SUITE]
    jobs = c.extra.get("jobs") or 1
    if jobs == 1:
        results = [_run_one(x) for x in configs]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, configs))
    flat = [r for batch in results for r in batch]
    # order never depends on completion time
    return sorted(flat, key=lambda r: json.dumps(r, sort_keys=True))


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

_HELP = {
    ("jordan", "info"): "Print basis, rank and degree of a Euclidean Jordan algebra.",
    ("jordan", "verify"): "Check the Jordan identity, positivity of the trace form and the frame relations.",
    ("tkk", "build"): "Build the conformal algebra co(J) and compare its dimensions with the classification.",
    ("tkk", "verify"): "Check the Jacobi identity on basis triples of co(J).",
    ("cartan", "verify"): "Check the displayed Cartan bases: [H, E_a] = a(H) E_a and [E_a, E_-a] proportional "
                          "to H_a. For spin factors also checks the isomorphism onto so(2, m+1).",
    ("cartan", "roots"): "List the root system in the coordinates of the weight equations.",
    ("ueval", "lemma7"): "Check the A-operator closed forms and vanishing claims behind the Joseph ideal "
                         "membership argument, in the enveloping algebra.",
    ("ueval", "hw"): "Evaluate the quadratic relations Q1..Q4 on a highest weight vector.",
    ("weights", "solve"): "Bounded lattice search for weights satisfying the highest-weight equations.",
    ("weights", "check"): "Evaluate the highest-weight equations and unitarity chain at one weight.",
    ("weights", "tables"): "Emit the rank/degree, algebra and unitarity constant tables.",
}


def _add_common(p: argparse.ArgumentParser, kind: bool = True) -> None:
    if kind:
        p.add_argument("--kind", help=f"one of {', '.join(KINDS)} (aliases such as e7, sp, su, so* accepted)")
        p.add_argument("--n", type=int, help="matrix size, or m for the spin factor Gamma(m)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tier", choices=TIERS, default="small",
                   help="test tier; the TKKLAB_TIER environment variable overrides it")


def _add_action_args(p: argparse.ArgumentParser, group: str, action: str) -> None:
    _add_common(p, kind=not (group == "weights" and action == "tables"))
    if (group, action) in (("jordan", "verify"), ("tkk", "verify"), ("ueval", "lemma7")):
        p.add_argument("--samples", type=int, default=None)
    if (group, action) == ("ueval", "lemma7"):
        p.add_argument("--depth", type=int, default=None, help="exhaustive nesting depth (default 3)")
        p.add_argument("--reading", choices=("corrected", "printed"), default=None)
    if (group, action) == ("cartan", "verify"):
        p.add_argument("--reading", default=None, help="interpretation of ambiguous displayed lines")
    if (group, action) in (("ueval", "hw"), ("weights", "check")):
        p.add_argument("--weight", help='weight as a list, e.g. "[-1/2,-1/2,-1/2]"')
        p.add_argument("--a", help="the constant a (fraction)")
    if (group, action) == ("ueval", "hw"):
        p.add_argument("--relation", choices=("Q1", "Q2", "Q3", "Q4"), action="append",
                       help="restrict to these relations (repeatable); default all")
        p.add_argument("--u", help='Jordan element for Q3/Q4, e.g. "r*e11" or "e11+e22" (r* means sqrt(rho))')
    if (group, action) == ("weights", "check"):
        p.add_argument("--hw", choices=("auto", "on", "off"), default="auto",
                       help="cross-check through highest weight evaluation")
    if (group, action) == ("weights", "solve"):
        p.add_argument("--bound", type=int, default=None)
        p.add_argument("--k-max", dest="k_max", type=int, default=None)
    if (group, action) == ("weights", "tables"):
        p.add_argument("--format", choices=("json", "md"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tkklab", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)
    by_group: dict = {}
    for (g, a) in RUNNERS:
        by_group.setdefault(g, []).append(a)
    for g, actions in by_group.items():
        gp = groups.add_parser(g, help=f"{g} checks")
        sub = gp.add_subparsers(dest="action", required=True)
        for a in actions:
            ap = sub.add_parser(a, help=_HELP[(g, a)], description=_HELP[(g, a)])
            _add_action_args(ap, g, a)
    vp = groups.add_parser("verify", help="run the main check of a module, or the quick suite with 'all'",
                           description="Alias: 'verify tkk' is 'tkk verify', 'verify ueval' is "
                                       "'ueval lemma7', 'verify weights' is 'weights solve'.")
    vp.add_argument("module", choices=sorted(VERIFY_ALIAS) + ["all"])
    _add_common(vp)
    vp.add_argument("--samples", type=int, default=None)
    vp.add_argument("--jobs", type=int, default=1, help="worker processes for 'all'")
    return parser


def _emit(records: list, stream) -> None:
    for r in records:
        if "_text" in r:
            stream.write(r["_text"])
            if not r["_text"].endswith("\n"):
                stream.write("\n")
        else:
            stream.write(json.dumps(r, sort_keys=True) + "\n")


def run(argv: list[str] | None = None, stream=None) -> int:
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if ns.group == "verify":
        if ns.module == "all":
            ns.group, ns.action = "all", "all"
        else:
            ns.group, ns.action = ns.module, VERIFY_ALIAS[ns.module]
    try:
        cfg = make_config(ns)
    except UsageError as exc:
        sys.stderr.write(f"tkklab: error: {exc}\n")
        return 2
    records = _run_all(cfg) if cfg.group == "all" else _run_one(cfg)
    _emit(records, stream)
    return 0 if all(r.get("status") == "pass" for r in records) else 1


def main() -> None:
    # LF endings regardless of platform
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(newline="\n")
    sys.exit(run())
