"""Command-line front end: configuration, dispatch, bit-stable reports.

Commands:
  hardylab catalogue   -- domain properties of the built-in catalogue
  hardylab constants   -- predicted sharp constants for one domain
  hardylab quotient    -- evaluate one functional on one profile
  hardylab sweep       -- a parameter-ladder convergence study
  hardylab divcheck    -- divergence residuals of a proof vector field
  hardylab verify      -- run the acceptance suite (exit 0 iff all pass)

Environment: HARDYLAB_TOL (default tolerance, 1e-8), HARDYLAB_OUT (output
directory for relative --out paths).  Exit codes: 0 success, 1 acceptance
failure, 2 usage error, 3 numerical/hypothesis error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import acceptance
from . import constants as consts
from . import functionals as fn
from . import geometry as geo
from . import profiles as pr
from .errors import HardylabError

COLUMNS = (
    "domain", "dim", "geom_params", "family", "family_params", "functional",
    "s", "beta", "gamma", "p", "value", "err_est", "prediction", "gap", "pass",
)

FUNCTIONALS = (
    "ratio-plain", "qbeta", "qgamma", "qgamma-general", "grad", "im", "im-x",
    "meanlap", "lp", "gap",
)

FAMILIES = (
    "annulus-indicator", "power", "ball-shell", "strip-slab", "cheeger-concentric", "bump",
)


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    domain_kind: str | None = None
    dim: int = 3
    radius: float | None = None
    r0: float | None = None
    R0: float | None = None
    family: str | None = None
    family_params: dict = field(default_factory=dict)
    functional: str | None = None
    params: dict = field(default_factory=dict)
    ladder: list[float] = field(default_factory=list)
    prediction: float | None = None
    zero_threshold: float | None = None
    tol: float = 1e-8
    out: str | None = None
    format: str = "csv"
    inequality: str | None = None
    div_field: str | None = None
    grid: int = 64
    suite: str = "acceptance"


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    v = float(value)
    if math.isinf(v):
        return "-inf" if v < 0 else "inf"
    return format(v, ".17g")


def expand_ladder(text: str) -> list[float]:
    """Either a comma list or 'start:stop:count:log' (geometric points)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 4 or parts[3] != "log":
            raise UsageError(f"ladder spec {text!r} must be 'start:stop:count:log'")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 2 or start <= 0 or stop <= 0:
            raise UsageError("ladder needs count >= 2 and positive endpoints")
        return [float(v) for v in np.geomspace(start, stop, count)]
    return [float(v) for v in text.split(",") if v]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hardylab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    def add_domain(p: argparse.ArgumentParser) -> None:
        p.add_argument("--domain", choices=(
            "ball", "strip", "punctured-space", "punctured-ball", "annulus"))
        p.add_argument("--dim", type=int, default=3)
        p.add_argument("--radius", type=float, help="R for ball/strip, R_U for punctured-ball")
        p.add_argument("--r0", type=float)
        p.add_argument("--R0", type=float)

    def add_family(p: argparse.ArgumentParser) -> None:
        p.add_argument("--family", choices=FAMILIES)
        p.add_argument("--delta", type=float)
        p.add_argument("--eta", type=float)
        p.add_argument("--eps", type=float)
        p.add_argument("--exponent", type=float)
        p.add_argument("--rho", type=float)
        p.add_argument("--center", type=float)
        p.add_argument("--width", type=float)
        p.add_argument("--tscale", type=float)
        p.add_argument("--tscale-exp", type=float, dest="tscale_exp",
                       help="transverse scale as (ladder parameter)^exp")

    def add_functional(p: argparse.ArgumentParser) -> None:
        p.add_argument("--functional", choices=FUNCTIONALS)
        p.add_argument("--s", type=float)
        p.add_argument("--beta", type=float)
        p.add_argument("--gamma", type=float)
        p.add_argument("--p", type=float)
        p.add_argument("--alpha", type=float)
        p.add_argument("--c0", type=float)
        p.add_argument("--m", type=int)
        p.add_argument("--eps-lp", type=float, dest="eps_lp")
        p.add_argument("--inequality")

    p = sub.add_parser("catalogue", help="domain properties of the catalogue")
    p.add_argument("--dim", type=int, default=3)
    add_common(p)

    p = sub.add_parser("constants", help="predicted sharp constants")
    add_domain(p)
    add_functional(p)
    add_common(p)

    p = sub.add_parser("quotient", help="evaluate one functional")
    add_domain(p)
    add_family(p)
    add_functional(p)
    add_common(p)

    p = sub.add_parser("sweep", help="parameter-ladder convergence study")
    add_domain(p)
    add_family(p)
    add_functional(p)
    p.add_argument("--ladder", required=True)
    p.add_argument("--prediction", type=float)
    p.add_argument("--zero-threshold", type=float, dest="zero_threshold")
    add_common(p)

    p = sub.add_parser("divcheck", help="divergence residual of a proof field")
    add_domain(p)
    p.add_argument("--field", required=True, choices=fn.FIELD_IDS, dest="div_field")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--R", type=float, dest="field_R")
    add_common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", default="acceptance", choices=("acceptance",))
    add_common(p)
    return parser


def parse_config(argv: list[str], env: dict | None = None) -> RunConfig:
    """Parse flags (which override the environment defaults) into a RunConfig."""
    env = dict(env if env is not None else os.environ)
    ns = _build_parser().parse_args(argv)
    cfg = RunConfig(command=ns.command)
    cfg.tol = float(env.get("HARDYLAB_TOL", 1e-8))
    if getattr(ns, "tol", None) is not None:
        cfg.tol = ns.tol
    cfg.out = getattr(ns, "out", None)
    if cfg.out is not None and not os.path.isabs(cfg.out) and env.get("HARDYLAB_OUT"):
        cfg.out = os.path.join(env["HARDYLAB_OUT"], cfg.out)
    cfg.format = getattr(ns, "format", "csv")
    cfg.dim = getattr(ns, "dim", 3)
    cfg.domain_kind = getattr(ns, "domain", None)
    cfg.radius = getattr(ns, "radius", None)
    cfg.r0 = getattr(ns, "r0", None)
    cfg.R0 = getattr(ns, "R0", None)
    cfg.family = getattr(ns, "family", None)
    for key in ("delta", "eta", "eps", "exponent", "rho", "center", "width",
                "tscale", "tscale_exp"):
        value = getattr(ns, key, None)
        if value is not None:
            cfg.family_params[key] = value
    cfg.functional = getattr(ns, "functional", None)
    for key in ("s", "beta", "gamma", "p", "alpha", "c0", "m", "eps_lp", "field_R"):
        value = getattr(ns, key, None)
        if value is not None:
            cfg.params[key] = value
    cfg.inequality = getattr(ns, "inequality", None)
    cfg.div_field = getattr(ns, "div_field", None)
    cfg.grid = getattr(ns, "grid", 64)
    cfg.suite = getattr(ns, "suite", "acceptance")
    if getattr(ns, "ladder", None):
        cfg.ladder = expand_ladder(ns.ladder)
    cfg.prediction = getattr(ns, "prediction", None)
    cfg.zero_threshold = getattr(ns, "zero_threshold", None)
    if cfg.functional is None and cfg.command in ("quotient", "sweep"):
        cfg.functional = _infer_functional(cfg.params)
    _validate(cfg)
    return cfg


def _infer_functional(params: dict) -> str:
    if "beta" in params:
        return "qbeta"
    if "gamma" in params:
        return "qgamma"
    if "alpha" in params:
        return "grad"
    return "ratio-plain"


def _validate(cfg: RunConfig) -> None:
    """Report precondition violations before any computation starts."""
    if cfg.command in ("quotient", "sweep"):
        if cfg.domain_kind is None:
            raise UsageError(f"{cfg.command} requires --domain")
        s = cfg.params.get("s")
        if cfg.functional in ("qbeta", "qgamma", "qgamma-general", "grad", "im",
                              "im-x", "ratio-plain", "lp", "gap") and s is None:
            raise UsageError(f"functional {cfg.functional} requires --s")
        if cfg.functional == "qbeta":
            if s <= 1.0:
                raise UsageError("Q_beta requires s > 1")
            beta = cfg.params.get("beta")
            if beta is None or not 0.0 < beta <= s - 1.0:
                raise UsageError("Q_beta requires 0 < beta <= s-1")
        if cfg.functional in ("qgamma", "qgamma-general") and cfg.params.get("gamma", 0) < 1.0:
            raise UsageError("log-weighted quotients require --gamma >= 1")
        if cfg.functional == "grad" and ("alpha" not in cfg.params or "c0" not in cfg.params):
            raise UsageError("grad quotient requires --alpha and --c0")
        if cfg.functional == "im" and ("m" not in cfg.params or "beta" not in cfg.params):
            raise UsageError("im requires --m and --beta")
        if cfg.functional == "im-x" and "m" not in cfg.params:
            raise UsageError("im-x requires --m")
        if cfg.functional == "lp" and "p" not in cfg.params:
            raise UsageError("lp requires --p")
        if cfg.functional == "gap" and not cfg.inequality:
            raise UsageError("gap requires --inequality")
        if cfg.functional not in ("lp",) and cfg.family is None:
            raise UsageError(f"{cfg.command} requires --family")
    if cfg.command == "sweep" and cfg.prediction is None and cfg.zero_threshold is None:
        raise UsageError("sweep requires --prediction or --zero-threshold")


def build_domain(cfg: RunConfig) -> geo.Domain:
    kind = cfg.domain_kind
    if kind == "ball":
        if cfg.radius is None:
            raise UsageError("ball requires --radius")
        return geo.ball(cfg.dim, cfg.radius)
    if kind == "strip":
        if cfg.radius is None:
            raise UsageError("strip requires --radius")
        return geo.strip(cfg.dim, cfg.radius)
    if kind == "punctured-space":
        return geo.punctured_space(cfg.dim)
    if kind == "punctured-ball":
        if cfg.radius is None:
            raise UsageError("punctured-ball requires --radius")
        return geo.punctured_ball(cfg.dim, cfg.radius)
    if kind == "annulus":
        if cfg.r0 is None or cfg.R0 is None:
            raise UsageError("annulus requires --r0 and --R0")
        return geo.annulus(cfg.dim, cfg.r0, cfg.R0)
    raise UsageError(f"unknown domain {kind!r}")


_LADDER_PARAM = {
    "annulus-indicator": "delta",
    "ball-shell": "delta",
    "strip-slab": "eps",
    "cheeger-concentric": "rho",
    "bump": "width",
    "power": "exponent",
}


def build_profile(cfg: RunConfig, domain: geo.Domain, ladder_value: float | None = None):
    fp = dict(cfg.family_params)
    if ladder_value is not None:
        fp[_LADDER_PARAM[cfg.family]] = ladder_value
    if cfg.family == "annulus-indicator":
        return pr.annulus_indicator(domain, fp["delta"], fp["eta"])
    if cfg.family == "power":
        return pr.power_profile(domain, fp["exponent"])
    if cfg.family == "ball-shell":
        return pr.ball_shell_indicator(domain, fp["delta"])
    if cfg.family == "strip-slab":
        if "tscale_exp" in fp:
            scale = fp["eps"] ** fp["tscale_exp"]
        else:
            scale = fp.get("tscale", 1.0)
        return pr.strip_slab_profile(domain, fp["eps"], fp["eta"], scale)
    if cfg.family == "cheeger-concentric":
        return pr.cheeger_concentric(domain, fp["rho"])
    if cfg.family == "bump":
        return pr.radial_bump(domain, fp["center"], fp["width"])
    raise UsageError(f"quotient evaluation requires a --family (got {cfg.family!r})")


def evaluate_functional(cfg: RunConfig, domain: geo.Domain, profile) -> fn.EvaluationReport:
    s = cfg.params.get("s")
    if cfg.functional == "ratio-plain":
        return fn.ratio_plain_report(domain, profile, s)
    if cfg.functional == "qbeta":
        return fn.quotient_Qbeta_report(domain, profile, s, cfg.params["beta"])
    if cfg.functional == "qgamma":
        return fn.quotient_Qgamma_report(domain, profile, s, cfg.params["gamma"])
    if cfg.functional == "qgamma-general":
        return fn.quotient_Qgamma_general_report(domain, profile, s, cfg.params["gamma"])
    if cfg.functional == "grad":
        return fn.gradient_quotient_report(domain, profile, s, cfg.params["c0"], cfg.params["alpha"])
    if cfg.functional == "im":
        return fn.remainder_ratio_Im_report(
            domain, profile, s, cfg.params["m"], denom="power", beta=cfg.params["beta"])
    if cfg.functional == "im-x":
        return fn.remainder_ratio_Im_report(domain, profile, s, cfg.params["m"], denom="xweight")
    if cfg.functional == "meanlap":
        return fn.meanlap_ratio_report(domain, profile)
    if cfg.functional == "lp":
        return fn.lp_ratio_report(domain, s, cfg.params["p"], cfg.params.get("eps_lp", 0.1))
    if cfg.functional == "gap":
        return fn.inequality_gap_report(
            domain, profile, cfg.inequality, s=s,
            gamma=cfg.params.get("gamma"), p=cfg.params.get("p"))
    raise UsageError(f"unknown functional {cfg.functional!r}")


# ---------------------------------------------------------------------------
# Report emission.


def _blank_row() -> dict:
    return {col: "" for col in COLUMNS}


def _domain_cells(domain: geo.Domain) -> dict:
    return {
        "domain": domain.kind,
        "dim": str(domain.dim),
        "geom_params": ";".join(f"{k}={v:g}" for k, v in sorted(domain.spec.params.items())),
    }


def _report_row(cfg: RunConfig, domain: geo.Domain, rep: fn.EvaluationReport) -> dict:
    row = _blank_row()
    row.update(_domain_cells(domain))
    row.update({
        "family": rep.family,
        "family_params": rep.family_params,
        "functional": rep.functional,
        "s": fmt(rep.params.get("s")),
        "beta": fmt(rep.params.get("beta")),
        "gamma": fmt(rep.params.get("gamma")),
        "p": fmt(rep.params.get("p")),
        "value": fmt(rep.value),
        "err_est": fmt(rep.error_estimate),
    })
    return row


def emit_report(rows: list[dict], fmt_kind: str) -> bytes:
    """Render rows into the fixed CSV/JSON schema, byte-stable."""
    if any(set(row) - set(COLUMNS) for row in rows):
        raise ValueError("row with unknown columns")
    if fmt_kind == "csv":
        lines = [",".join(COLUMNS)]
        lines += [",".join(row.get(col, "") for col in COLUMNS) for row in rows]
        return ("\n".join(lines) + "\n").encode()
    if fmt_kind == "json":
        payload = {"schema_version": 1,
                   "runs": [{col: row.get(col, "") for col in COLUMNS} for row in rows]}
        return (json.dumps(payload, indent=1) + "\n").encode()
    raise ValueError(f"unknown format {fmt_kind!r}")


def _write_output(data: bytes, cfg: RunConfig) -> None:
    if cfg.out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    tmp = cfg.out + ".tmp"
    with open(tmp, "wb") as handle:
        handle.write(data)
    os.replace(tmp, cfg.out)


# ---------------------------------------------------------------------------
# Command implementations.


def _run_catalogue(cfg: RunConfig) -> list[dict]:
    rows = []
    for domain in geo.catalogue(cfg.dim):
        props = domain.properties()
        cells = _domain_cells(domain)
        entries = [
            ("inradius", props.inradius),
            ("reach", props.curvature.reach),
            ("satisfies_C", props.satisfies_c),
            ("H_min", props.curvature.h_min),
            ("H_max", props.curvature.h_max),
            ("H_mean", props.curvature.h_mean),
        ]
        for name, value in entries:
            row = _blank_row()
            row.update(cells)
            row["functional"] = name
            row["value"] = fmt(value)
            rows.append(row)
    return rows


def _run_constants(cfg: RunConfig) -> list[dict]:
    domain = build_domain(cfg)
    rows = []
    s = cfg.params.get("s")
    candidates = ("2.4", "2.9", "2.13", "B1", "gamma-remainder", "6.1-first", "6.1-second")
    for ineq in candidates:
        try:
            pc = consts.predicted_constant(
                ineq, domain, s=s, p=cfg.params.get("p"),
                gamma=cfg.params.get("gamma"), k=cfg.params.get("m"))
        except HardylabError:
            continue
        row = _blank_row()
        row.update(_domain_cells(domain))
        row["functional"] = f"constant-{pc.inequality_id}"
        row["s"] = fmt(s)
        row["gamma"] = fmt(cfg.params.get("gamma"))
        row["p"] = fmt(cfg.params.get("p"))
        row["prediction"] = fmt(pc.value)
        row["value"] = fmt(pc.value)
        rows.append(row)
    try:
        lo, hi = consts.b1_bounds(domain)
        row = _blank_row()
        row.update(_domain_cells(domain))
        row["functional"] = "B1-bounds"
        row["prediction"] = f"{fmt(lo)}..{fmt(hi)}"
        rows.append(row)
    except HardylabError:
        pass
    return rows


def _run_quotient(cfg: RunConfig) -> list[dict]:
    domain = build_domain(cfg)
    profile = build_profile(cfg, domain) if cfg.functional != "lp" else None
    rep = evaluate_functional(cfg, domain, profile)
    return [_report_row(cfg, domain, rep)]


def _run_sweep(cfg: RunConfig) -> list[dict]:
    domain = build_domain(cfg)

    def evaluate(param: float) -> tuple[float, float]:
        if cfg.functional == "lp":
            local = RunConfig(**{**cfg.__dict__})
            local.params = {**cfg.params, "eps_lp": param}
            rep = evaluate_functional(local, domain, None)
        else:
            rep = evaluate_functional(cfg, domain, build_profile(cfg, domain, param))
        return rep.value, rep.error_estimate

    mode = "limit" if cfg.prediction is not None else "decreasing-to-zero"
    study = consts.convergence_study(
        evaluate, cfg.ladder, cfg.prediction, cfg.tol,
        family=cfg.family or "lp", quotient=cfg.functional,
        fixed_params=cfg.family_params, mode=mode, threshold=cfg.zero_threshold,
    )
    rows = []
    for param, value, err in zip(study.ladder, study.values, study.error_estimates):
        row = _blank_row()
        row.update(_domain_cells(domain))
        ladder_param = _LADDER_PARAM.get(cfg.family, "eps") if cfg.functional != "lp" else "eps_lp"
        fixed = ";".join(f"{k}={v:g}" for k, v in cfg.family_params.items())
        row["family"] = study.family
        row["family_params"] = ";".join(x for x in (f"{ladder_param}={param:.6g}", fixed) if x)
        row["functional"] = study.quotient
        row["s"] = fmt(cfg.params.get("s"))
        row["beta"] = fmt(cfg.params.get("beta"))
        row["gamma"] = fmt(cfg.params.get("gamma"))
        row["p"] = fmt(cfg.params.get("p"))
        row["value"] = fmt(value)
        row["err_est"] = fmt(err)
        row["prediction"] = fmt(study.prediction)
        if study.prediction is not None:
            row["gap"] = fmt(value - study.prediction)
        row["pass"] = fmt(study.passed)
        rows.append(row)
    return rows


def _run_divcheck(cfg: RunConfig) -> list[dict]:
    if cfg.domain_kind is not None:
        domain = build_domain(cfg)
    else:
        default = {case[0]: case[1] for case in acceptance._DIV_CASES}[cfg.div_field]
        domain = acceptance._div_domain(default)
    grid = acceptance.divcheck_grid(domain, cfg.grid)
    worst = 0.0
    for t in grid:
        worst = max(worst, fn.div_T_residual(
            domain, cfg.div_field, float(t),
            cfg.params["s"], cfg.params.get("gamma", 1.0), R=cfg.params.get("field_R")))
    row = _blank_row()
    row.update(_domain_cells(domain))
    row["functional"] = f"divcheck-{cfg.div_field}"
    row["s"] = fmt(cfg.params.get("s"))
    row["gamma"] = fmt(cfg.params.get("gamma"))
    row["family_params"] = f"grid={cfg.grid}"
    row["value"] = fmt(worst)
    row["prediction"] = fmt(cfg.tol)
    row["pass"] = fmt(worst <= cfg.tol)
    return [row]


def _run_verify(cfg: RunConfig) -> int:
    failures = 0
    for result in acceptance.run_acceptance():
        print(result.summary())
        if not result.passed:
            failures += 1
    print(f"acceptance: {14 - failures}/14 criteria passed")
    return 0 if failures == 0 else 1


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_config(argv, dict(os.environ))
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        if cfg.command == "verify":
            return _run_verify(cfg)
        rows = {
            "catalogue": _run_catalogue,
            "constants": _run_constants,
            "quotient": _run_quotient,
            "sweep": _run_sweep,
            "divcheck": _run_divcheck,
        }[cfg.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except HardylabError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    _write_output(emit_report(rows, cfg.format), cfg)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
