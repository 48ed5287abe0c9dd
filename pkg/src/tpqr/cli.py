"""Command-line front end.

Exit codes: 0 all checks passed, 1 a mathematical check failed (the
failing certificate is in the report), 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import cuspdual, k3glue, milnorfiber, numcheck, quadlattice, sl2z

CONFIG_ENV = "TPQR_CONFIG"

_JSON_INT_LIMIT = 2**53


def _sanitize(obj):
    """Decimal-string any integer too wide for consumers that parse JSON
    numbers as doubles."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) < _JSON_INT_LIMIT else str(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return _sanitize(obj.tolist())
    return obj


def _emit(report: dict, as_json: bool, lines: list[str] | None = None) -> None:
    if as_json:
        print(json.dumps(_sanitize(report), indent=2, sort_keys=True))
    else:
        for line in lines or []:
            print(line)


def _parse_triple(values: list[str] | str) -> tuple[int, int, int]:
    if isinstance(values, str):
        values = [values]
    if len(values) == 1 and "," in values[0]:
        values = values[0].split(",")
    if len(values) != 3:
        raise ValueError("a triple p q r (or p,q,r) is required")
    return tuple(int(v) for v in values)  # type: ignore[return-value]


def _load_config(args) -> numcheck.NumericalConfig:
    path = getattr(args, "tolerance_file", None) or os.environ.get(CONFIG_ENV)
    cfg = numcheck.parse_config_file(path) if path else numcheck.NumericalConfig()
    updates = {}
    if getattr(args, "samples", None) is not None:
        updates["samples"] = args.samples
    if getattr(args, "seed", None) is not None:
        updates["seed"] = args.seed
    if updates:
        cfg = numcheck.NumericalConfig(
            residual_tol=cfg.residual_tol,
            rank_tol=cfg.rank_tol,
            fd_step=cfg.fd_step,
            samples=updates.get("samples", cfg.samples),
            seed=updates.get("seed", cfg.seed),
        )
    return cfg


def _cmd_monodromy(args) -> int:
    p, q, r = _parse_triple(args.triple)
    m = sl2z.monodromy_matrix(p, q, r)
    cls = sl2z.classify(m)
    report = {
        "triple": [p, q, r],
        "matrix": m.to_json(),
        "trace": m.trace,
        "class": cls.value,
    }
    if cls is sl2z.MatrixClass.HYPERBOLIC:
        report["rl_word"] = list(sl2z.rl_word(m).exponents)
    if 1 / p + 1 / q + 1 / r <= 1:
        sys_ = milnorfiber.surface_system(p, q, r)
        mu = milnorfiber.monodromy_action(p, q, r)
        report["h2_action"] = {
            "labels": list(sys_.labels),
            "gram": [list(row) for row in sys_.lattice.gram],
            "mu": [list(row) for row in mu],
            "char_poly": list(milnorfiber.char_poly(mu)),
        }
    _emit(
        report,
        args.json,
        [
            f"A_{{{p},{q},{r}}} = {m}",
            f"trace {m.trace}, {cls.value}",
        ],
    )
    return 0


def _cmd_dual(args) -> int:
    p, q, r = _parse_triple(args.triple)
    rep = cuspdual.verify_duality(p, q, r)
    ok = rep.verify()
    report = rep.to_json()
    report["alpha_v"] = str(rep.alpha_self)
    report["dual"] = list(rep.dual.sorted)
    report["passed"] = ok
    _emit(
        report,
        args.json,
        [
            f"dual of ({p},{q},{r}): {rep.dual}",
            f"cycle {rep.self_cycle.entries} <-> {rep.dual_side_cycle.entries}",
            f"alpha_v = {rep.alpha_self} (dual side {rep.alpha_dual}, equal: {rep.alphas_equal})",
            f"conjugacy certificates verified: {ok}",
        ],
    )
    return 0 if ok else 1


def _cmd_lattice(args) -> int:
    name = args.name
    if name == "t":
        lat = quadlattice.t_lattice(*_parse_triple(args.triple))
    elif name == "ttilde":
        lat = quadlattice.t_tilde_lattice(
            *_parse_triple(args.triple), generator=args.generator
        )
    elif name == "e":
        lat = quadlattice.e_lattice(args.k)
    elif name == "h":
        lat = quadlattice.hyperbolic_plane()
    elif name == "k3":
        lat = quadlattice.k3_lattice()
    else:
        raise ValueError(f"unknown lattice {name!r}")
    snf = quadlattice.smith_normal_form(lat)
    report = {
        "lattice": lat.to_json(),
        "rank": lat.rank,
        "disc": quadlattice.discriminant(lat),
        "signature": list(quadlattice.signature(lat)),
        "parity": quadlattice.parity(lat),
        "snf": snf.to_json(),
        "radical_rank": len(quadlattice.radical(lat)),
    }
    _emit(
        report,
        args.json,
        [
            f"rank {report['rank']}, disc {report['disc']}, "
            f"signature {tuple(report['signature'])}, {report['parity']}",
            f"SNF divisors: {snf.divisors}",
        ],
    )
    return 0


def _cmd_k3(args) -> int:
    p, q, r = _parse_triple(args.pair)
    pair = k3glue.pair_for_triple(p, q, r)
    if pair is None:
        print(f"({p},{q},{r}) is not in the duality table", file=sys.stderr)
        return 2
    lat, verdict = k3glue.glued_lattice(pair)
    count = k3glue.critical_count(pair)
    a = sl2z.monodromy_matrix(*pair.left)
    b = sl2z.monodromy_matrix(*pair.right)
    cert = sl2z.is_conjugate_to_inverse(a, b)
    ok = count == 24 and cert is not None
    report = {
        "pair": pair.to_json(),
        "critical_count": count,
        "glued": verdict.to_json(),
        "glued_rank": lat.rank,
        "boundary_inverse_conjugacy": cert.to_json() if cert else None,
        "passed": ok,
    }
    _emit(
        report,
        args.json,
        [
            f"{pair.left_label} {pair.left} <-> {pair.right_label} {pair.right}",
            f"critical count {count}",
            f"glued lattice: det {verdict.det}, signature {verdict.signature}, "
            f"{verdict.parity}, unimodular {verdict.unimodular}",
            f"boundary monodromies inverse-conjugate: {cert is not None}",
        ],
    )
    return 0 if ok else 1


def _cmd_inose(args) -> int:
    counts = tuple(int(v) for v in args.case.split(","))
    case = k3glue.InoseCase(counts)
    m = k3glue.inose_monodromy(case)
    cls = k3glue.classify_inose_boundary(case)
    report = {
        "case": list(counts),
        "monodromy": m.to_json(),
        "trace": m.trace,
        "boundary": None,
        "side": None,
    }
    lines = [f"monodromy {m}, trace {m.trace}"]
    if cls is not None:
        p, q, r = cls.triple.sorted
        report["boundary"] = f"X_{{{p},{q},{r}}}"
        report["side"] = cls.side
        report["certificate"] = cls.certificate.to_json()
        lines.append(f"boundary of X_{{{p},{q},{r}}} (matched: {cls.side})")
    else:
        lines.append("no duality-table boundary matches")
    _emit(report, args.json, lines)
    return 0


def _cmd_verify_fibration(args) -> int:
    p, q, r = _parse_triple(args.pqr)
    cfg = _load_config(args)
    if args.a is not None:
        params = numcheck.FibrationParams(p, q, r, a=args.a, theta=args.theta, t=args.t)
    else:
        params = numcheck.FibrationParams.minimal(p, q, r, theta=args.theta, t=args.t)

    report: dict = {
        "params": {
            "pqr": [p, q, r],
            "a": params.a,
            "theta": params.theta,
            "t": params.t,
        },
        "config": {
            "residual_tol": cfg.residual_tol,
            "rank_tol": cfg.rank_tol,
            "samples": cfg.samples,
            "seed": cfg.seed,
        },
    }
    try:
        params.check()
    except numcheck.AdmissibilityError as exc:
        print(f"inadmissible parameters: {exc}", file=sys.stderr)
        return 2

    crit_reports = numcheck.verify_critical_points(params, cfg)
    report["critical_points"] = {
        "count": len(crit_reports),
        "expected": p + q + r,
        "all_ok": all(rep.ok for rep in crit_reports),
        "worst_residual": max(rep.residual_rel for rep in crit_reports),
        "worst_rank_ratio": max(rep.rank_ratio for rep in crit_reports),
    }
    hess = numcheck.hessian_fd_check(params, numcheck.critical_points(params)[0], cfg)
    report["hessian_x_axis"] = hess.to_json()
    audit = numcheck.symplectic_inequality_audit(params, cfg)
    report["symplectic_inequality"] = audit.to_json()
    if params.t == 1.0:
        defect = numcheck.lagrangian_defect(params, config=cfg)
        report["lagrangian_defect"] = defect.to_json()
        if params.domain_y_admissible:
            report["domain_y"] = numcheck.domain_y_audit(params, cfg).to_json()

    passed = (
        report["critical_points"]["all_ok"]
        and report["critical_points"]["count"] == p + q + r
        and hess.matches
        and audit.passed
        and all(
            report[k]["passed"]
            for k in ("lagrangian_defect", "domain_y")
            if k in report
        )
    )
    report["passed"] = passed
    _emit(
        report,
        args.json,
        [
            f"critical points: {len(crit_reports)} verified, all_ok="
            f"{report['critical_points']['all_ok']}",
            f"hessian (x-axis): matches={hess.matches} lambda={hess.lam_measured:.6g}",
            f"inequality audit: passed={audit.passed} min_margin={audit.min_margin:.3g}",
            f"overall: {'PASS' if passed else 'FAIL'}",
        ],
    )
    return 0 if passed else 1


def _cmd_table(args) -> int:
    rows = []
    ok = True
    for pair in k3glue.strange_duality_table():
        rep = cuspdual.verify_duality(*pair.left)
        row = {
            "labels": [pair.left_label, pair.right_label],
            "triple": list(pair.left),
            "dual": list(pair.right),
            "self_dual": pair.self_dual,
            "cycle": rep.self_cycle.to_json(),
            "dual_cycle": rep.dual_side_cycle.to_json(),
            "alpha_v": str(rep.alpha_self),
            "alphas_equal": rep.alphas_equal,
            "conjugacy_verified": rep.verify(),
            "critical_count": k3glue.critical_count(pair),
        }
        ok = ok and rep.verify() and row["critical_count"] == 24
        ok = ok and tuple(sorted(rep.dual.sorted)) == pair.right
        rows.append(row)
    report = {"rows": rows, "passed": ok}
    lines = [
        "{:<4} {:<9} -> {:<4} {:<9} cycle {:<12} alpha_v {:<18} 24:{} ok:{}".format(
            row["labels"][0],
            str(tuple(row["triple"])),
            row["labels"][1],
            str(tuple(row["dual"])),
            str(tuple(row["cycle"])),
            row["alpha_v"],
            row["critical_count"],
            row["conjugacy_verified"],
        )
        for row in rows
    ]
    _emit(report, args.json, lines)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tpqr",
        description="Exact monodromy/lattice arithmetic and numerical "
        "fibration checks for the T_{p,q,r} singularity family",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("monodromy", help="torus-bundle monodromy of a triple")
    sp.add_argument("triple", nargs="+")
    add_json(sp)
    sp.set_defaults(func=_cmd_monodromy)

    sp = sub.add_parser("dual", help="verify the strange-duality data of a triple")
    sp.add_argument("triple", nargs="+")
    add_json(sp)
    sp.set_defaults(func=_cmd_dual)

    sp = sub.add_parser("lattice", help="lattice invariants")
    sp.add_argument("name", choices=["t", "ttilde", "e", "h", "k3"])
    sp.add_argument("--triple", nargs="+", default=["2,3,7"])
    sp.add_argument("--generator", default="S'", choices=["S", "S'"])
    sp.add_argument("--k", type=int, default=8)
    add_json(sp)
    sp.set_defaults(func=_cmd_lattice)

    sp = sub.add_parser("k3", help="glued-lattice and boundary checks for a pair")
    sp.add_argument("--pair", required=True, help="p,q,r of either side")
    add_json(sp)
    sp.set_defaults(func=_cmd_k3)

    sp = sub.add_parser("inose", help="classify a boundary loop by quadrant counts")
    sp.add_argument("--case", required=True, help="c1,c2,c3,c4")
    add_json(sp)
    sp.set_defaults(func=_cmd_inose)

    sp = sub.add_parser("verify-fibration", help="numerical fibration verifier")
    sp.add_argument("--pqr", required=True)
    sp.add_argument("--t", type=float, default=1.0)
    sp.add_argument("--theta", type=float, default=0.0)
    sp.add_argument("--a", type=float, default=None, help="default: minimal admissible + 1")
    sp.add_argument("--samples", type=int, default=None)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--tolerance-file", default=None, help="key=value overrides")
    add_json(sp)
    sp.set_defaults(func=_cmd_verify_fibration)

    sp = sub.add_parser("table", help="the full duality table with verdicts")
    add_json(sp)
    sp.set_defaults(func=_cmd_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
