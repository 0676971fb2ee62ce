"""Command-line interface: ``symkl <command> [options]``.

Exit status is 0 iff every check passed. On a failed check a JSON failure
report is written to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .arith.fields import build_extension
from .arith.numtheory import is_prime, primes_upto
from .errors import CheckFailed, SymKlError


class Report:
    """Rows of output plus an overall pass flag."""

    def __init__(self, title: str):
        self.title = title
        self.rows: list[dict] = []
        self.meta: dict = {}
        self.ok = True
        self.failures: list[dict] = []

    def add(self, **row):
        self.rows.append(row)
        if row.get("pass") is False:
            self.ok = False

    def fail(self, info: dict):
        self.ok = False
        self.failures.append(info)


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.3e}"
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v)
    return str(v)


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"title": report.title, "ok": report.ok, "meta": report.meta,
                           "rows": report.rows}, indent=1, default=str)
    keys: list[str] = []
    for row in report.rows:
        for key in row:
            if key not in keys:
                keys.append(key)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys)
        w.writeheader()
        for row in report.rows:
            w.writerow({key: _fmt(row.get(key, "")) for key in keys})
        return buf.getvalue().rstrip("\n")
    lines = [report.title]
    for key, v in report.meta.items():
        lines.append(f"  {key}: {_fmt(v)}")
    if report.rows:
        cells = [[_fmt(row.get(key, "")) for key in keys] for row in report.rows]
        widths = [max(len(key), *(len(c[i]) for c in cells)) for i, key in enumerate(keys)]
        lines.append("  ".join(key.ljust(w) for key, w in zip(keys, widths)))
        for c in cells:
            lines.append("  ".join(x.ljust(w) for x, w in zip(c, widths)))
    lines.append("all checks passed" if report.ok else "FAILED")
    return "\n".join(lines)


# commands

def cmd_moments(args) -> Report:
    from .moments import moments_upto
    if not is_prime(args.p):
        raise ValueError(f"{args.p} is not prime")
    rep = Report(f"moments m_2^{args.k}(p^i), p={args.p}")
    for i in range(1, args.n + 1):
        F = build_extension(args.p, i)
        rep.add(i=i, q=F.q, moment=str(moments_upto(args.k, F)[args.k]))
    return rep


def _euler_job(job):
    from .cache import load_or_compute
    k, p, directory, complete, predict, use_cache = job
    try:
        rec, entry, hit = load_or_compute(k, p, directory=directory, complete=complete,
                                          predict=predict, use_cache=use_cache)
        return {"entry": entry, "hit": hit}
    except SymKlError as exc:
        info = exc.to_dict() if isinstance(exc, CheckFailed) else {"error": type(exc).__name__,
                                                                    "message": str(exc)}
        info.update(k=k, p=p)
        return {"failure": info}


def cmd_euler(args) -> Report:
    directory = Path(args.cache_dir) if args.cache_dir else None
    jobs = [(args.k, p, directory, args.complete, args.predict, not args.no_cache)
            for p in primes_upto(args.pmax)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_euler_job, jobs))
    else:
        results = [_euler_job(j) for j in jobs]
    rep = Report(f"Euler factors for k={args.k}, p <= {args.pmax}")
    for res in results:
        if "failure" in res:
            rep.fail(res["failure"])
            rep.add(p=res["failure"]["p"], M="", checks="", cached="", **{"pass": False})
            continue
        e = res["entry"]
        rep.add(p=e["p"], M=" ".join(e["M"]), checks=",".join(sorted(e["checks"])),
                cached=res["hit"], **{"pass": all(e["checks"].values())})
    rep.meta["entries"] = sum(1 for r in results if "entry" in r)
    return rep


def cmd_invariants(args) -> Report:
    from .arithmetic_invariants import conductor, epsilon_sign
    from .hodge import dims, gamma_factor, hodge_numbers, hodge_polygon_compact, irregularity_and_rigidity
    k = args.k
    rep = Report(f"invariants of Sym^{k} Kl_2")
    cond = conductor(k)
    g = gamma_factor(k)
    sign = epsilon_sign(k)
    d = dims(k)
    ir = irregularity_and_rigidity(k)
    rep.add(item="conductor", value=cond.value, conjectural=cond.conjectural)
    rep.add(item="conductor_odd_part", value=cond.odd_part, conjectural=False)
    rep.add(item="gamma_m", value=g.m, conjectural=False)
    rep.add(item="gamma_shifts", value=list(g.shifts), conjectural=False)
    rep.add(item="sign", value=sign.sign, conjectural=sign.conjectural)
    if sign.t_k is not None:
        rep.add(item="t_k", value=sign.t_k, conjectural=True)
    rep.add(item="dims", value=list(d.as_tuple()), conjectural=False)
    for variant in ("H1", "H1_mid"):
        hd = hodge_numbers(k, variant)
        rep.add(item=f"hodge_{variant}",
                value=[f"({p},{q})w{w}" for (p, q, w) in sorted(hd.entries)], conjectural=False)
    rep.add(item="hodge_polygon_compact",
            value=[f"({x},{y})" for x, y in hodge_polygon_compact(k).vertices], conjectural=False)
    rep.add(item="irr_inf", value=ir.irr_inf, conjectural=False)
    rep.add(item="swan_2", value=ir.swan_2, conjectural=False)
    rep.add(item="rigidity", value=[ir.rig, ir.rig_tilde], conjectural=False)
    return rep


def cmd_derham(args) -> Report:
    from .derham import cohomology, filtration_jumps, graded_kernel_generator
    k = args.k
    rep = Report(f"de Rham cohomology of Sym^{k} Kl_2")
    c = cohomology(k)
    rep.add(item="dim_H0", value=c.h0_dim, **{"pass": c.h0_dim == 0})
    rep.add(item="dim_H1", value=c.h1_dim, **{"pass": c.h1_dim == (k + 1) // 2})
    rep.add(item="H1_basis", value=[repr(b) for b in c.h1_basis], **{"pass": True})
    if k % 2 == 0:
        rep.add(item="kernel_generator", value=repr(graded_kernel_generator(k)), **{"pass": True})
    fj = filtration_jumps(k)
    rep.add(item="filtration_jumps", value=fj.jumps, **{"pass": True})
    rep.add(item="jumps_with_hodge_fill", value=fj.full, **{"pass": True})
    if fj.theorem_sourced:
        rep.add(item="theorem_sourced_jumps", value=fj.theorem_sourced, **{"pass": True})
    return rep


def _parse_points(text: str | None, k: int) -> list[complex]:
    if text:
        return [complex(x.replace(" ", "")) for x in text.split(",")]
    center = (k + 2) / 2
    return [complex(center + 0.2, 0.3), complex(center - 0.3, 0), complex(center + 0.45, -0.7)]


def cmd_fe_check(args) -> Report:
    from .lfunction import QuadParams, build_spec, completed_lambda_full, fe_defect, truncation_length
    quad = QuadParams(step=args.step, t_max=args.tmax, A=args.A, B=args.B)
    points = _parse_points(args.points, args.k)
    probe = build_spec(args.k, 2)
    pmax = max(max(truncation_length(probe, s, quad) for s in points), 2)
    spec = build_spec(args.k, pmax)
    rep = Report(f"functional equation check for k={args.k}")
    rep.meta.update(conductor=spec.conductor, sign=spec.sign, m=spec.m, pmax=pmax,
                    conjectural=sorted(spec.conjectural_flags))
    for s in points:
        v = completed_lambda_full(spec, s, quad)
        dfct = fe_defect(spec, s, quad)
        rep.add(s=str(s), Lambda=str(v.value), error_estimate=v.error_estimate, defect=dfct,
                **{"pass": dfct < args.tol})
    return rep


def cmd_selfcheck(args) -> Report:
    from .arithmetic_invariants import conductor, det_frobenius_check
    from .derham import cohomology, filtration_jumps, graded_kernel_generator
    from .hodge import dims, gamma_factor, hodge_numbers
    from .lfunction import build_spec, fe_defect, lambda3_closed_form, completed_lambda
    from .local_factors import euler_record, mid_poly_completed
    rep = Report("self-check")

    def run(name, fn):
        try:
            fn()
            rep.add(check=name, **{"pass": True})
        except (SymKlError, AssertionError, ValueError) as exc:
            rep.add(check=name, detail=str(exc), **{"pass": False})
            rep.failures.append({"check": name, "message": str(exc)})

    def euler():
        for k in range(1, 7):
            for p in (2, 3, 5, 7):
                euler_record(k, p, predict=True)

    def conductors():
        for k in range(1, 100):
            conductor(k)

    def hodge():
        for k in range(1, 101):
            d = dims(k)
            assert hodge_numbers(k, "H1").dimension == d.h1
            assert hodge_numbers(k, "H1_mid").dimension == d.h1_mid
            gamma_factor(k)

    def det():
        for k in (3, 5, 7):
            for p in (11, 13):
                det_frobenius_check(k, p, mid_poly_completed(k, p)[0])

    def derham():
        for k in range(1, 9):
            c = cohomology(k)
            assert c.h0_dim == 0 and c.h1_dim == (k + 1) // 2
            filtration_jumps(k)
            if k % 2 == 0:
                graded_kernel_generator(k)

    def fe():
        s3 = build_spec(3, 100)
        assert fe_defect(s3, 2.4 + 0.7j) < 1e-6
        assert abs(completed_lambda(s3, 2.7) / lambda3_closed_form(2.7) - 1) < 1e-8
        s6 = build_spec(6, 80)
        assert fe_defect(s6, 3.7) < 1e-6

    for name, fn in (("euler_records", euler), ("conductors", conductors), ("hodge", hodge),
                     ("determinant", det), ("derham", derham), ("functional_equation", fe)):
        run(name, fn)
    return rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symkl", description=__doc__.splitlines()[0])
    fmt = argparse.ArgumentParser(add_help=False)
    g = fmt.add_mutually_exclusive_group()
    g.add_argument("--json", dest="fmt", action="store_const", const="json")
    g.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    fmt.set_defaults(fmt="table")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", parents=[fmt], help="m_2^k(p^i) for i <= n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("euler", parents=[fmt], help="compute and cache Euler factors")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--complete", action="store_true",
                   help="rebuild M from half its coefficients by reciprocity")
    p.add_argument("--predict", action="store_true", help="also check the next moment")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("invariants", parents=[fmt], help="conductor, gamma factor, sign, Hodge data")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("derham", parents=[fmt], help="de Rham cohomology and filtration jumps")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_derham)

    p = sub.add_parser("fe-check", parents=[fmt], help="functional-equation defect table")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--points", default=None, help="comma-separated complex points, e.g. 2.4+0.7j,2.5")
    p.add_argument("--step", type=float, default=0.25)
    p.add_argument("--tmax", type=float, default=60.0)
    p.add_argument("--A", type=float, default=30.0)
    p.add_argument("--B", type=float, default=1.2)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_fe_check)

    p = sub.add_parser("selfcheck", parents=[fmt], help="run the invariant suite")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = args.func(args)
    except SymKlError as exc:
        info = exc.to_dict() if isinstance(exc, CheckFailed) else {
            "error": type(exc).__name__, "message": str(exc)}
        info["command"] = args.command
        print(json.dumps(info), file=sys.stderr)
        return 1
    except ValueError as exc:
        print(json.dumps({"error": "ValueError", "message": str(exc), "command": args.command}),
              file=sys.stderr)
        return 2
    print(render(rep, args.fmt))
    if not rep.ok:
        print(json.dumps({"command": args.command, "failures": rep.failures}, default=str),
              file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
