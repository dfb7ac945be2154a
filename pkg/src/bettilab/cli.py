"""Command-line front end.

    bettilab resolve R.ring --module k --imax 8
    bettilab series tate --dim 0 --codim 2
    bettilab hilbert R.ring --jmax 10
    bettilab construct optimal --d 3 --c 3 --q 1 --a 0 -o out/
    bettilab compare out/R_3310.ring --module out/S_3310.ring --imax 12
    bettilab verify optimal --dmax 3 --imax 12

Exit status: 0 when every verdict passes, 1 when any row fails, 2 on usage
or input errors.  Random choices use splitmix64 seeded by ``--seed``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

from . import formulas, grids
from .algebra import RingSpec, hilbert
from .constructions import golod_quotient_ideal, optimal_family, staircase
from .errors import BettiLabError
from .fplinalg import DEFAULT_PRIME
from .grids import FAIL, PASS, Phase, RunReport
from .resolution import minimal_betti_table
from .ringfile import format_ring_spec, parse_ring_specs
from .series import BiPoly, RationalSeries, betti_polynomials, pole_orders, specialize_y


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    g = c.add_argument_group("common options")
    g.add_argument("--prime", type=int, default=None, help=f"field characteristic (default {DEFAULT_PRIME})")
    g.add_argument("--seed", type=int, default=None, help="seed for random choices")
    g.add_argument("--imax", type=int, default=None, help="homological truncation")
    g.add_argument("--jmax", type=int, default=None, help="internal-degree truncation")
    g.add_argument("--trials", type=int, default=5, help="random trials for dimension tests")
    g.add_argument("--cap", type=int, default=None, help="degree cap for dimension probing")
    fmt = g.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report")
    fmt.add_argument("--csv", action="store_true", help="CSV rows")
    g.add_argument("-o", "--output", default=None, help="output file (directory for construct)")
    g.add_argument("--timings", action="store_true", help="include wall-clock phases in JSON")
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="bettilab", description="Betti numbers, Poincare series and granularity checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resolve", parents=[common], help="graded Betti table of a cyclic module")
    p.add_argument("ringfile")
    p.add_argument("--ring", default=None, help="ring block to use (default: first)")
    p.add_argument("--module", default="k", help="k, a ring name in the same file, or another ring file")
    p.add_argument("--strict", action="store_true", help="fail when a column is not certified complete")

    p = sub.add_parser("series", parents=[common], help="closed-form series and granularity formulas")
    p.add_argument("kind", choices=["tate", "ci", "golod", "residue", "adequate", "det", "gring", "bound"])
    for name in ("dim", "codim", "s", "h", "e", "a", "c", "d", "q"):
        p.add_argument(f"--{name}", type=int, default=None)
    p.add_argument("--degrees", default=None, help="relation degrees, comma separated")
    p.add_argument("--pqj", default=None, help="coefficients of P^Q_J, comma separated from z^0")
    p.add_argument("--det-h", type=int, default=None, help="take P^Q_J from the determinantal formula (s=2)")
    p.add_argument("--expand", type=int, default=None, help="also print coefficients through z^N")

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert function and series")
    p.add_argument("ringfile")
    p.add_argument("--ring", default=None)

    p = sub.add_parser("construct", parents=[common], help="write ring files for explicit families")
    p.add_argument("family", choices=["optimal", "golod"])
    for name in ("d", "c", "q", "a", "s", "h", "e"):
        p.add_argument(f"--{name}", type=int, default=None)

    p = sub.add_parser("compare", parents=[common], help="oracle against every applicable closed formula")
    p.add_argument("ringfile")
    p.add_argument("--ring", default=None)
    p.add_argument("--module", default="k")

    p = sub.add_parser("verify", parents=[common], help="theorem verification grids")
    p.add_argument("theorem", choices=["optimal", "gring", "minmult", "family", "loewy", "minv"])
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--cmax", type=int, default=None)
    p.add_argument("--emax", type=int, default=None)
    p.add_argument("--amax", type=int, default=None)
    p.add_argument("--samples", type=int, default=2, help="random sequences per (e, q) for minmult")
    p.add_argument("--only", default=None, help="a single parameter tuple, comma separated")
    p.add_argument("--no-oracle", action="store_true", help="skip resolutions (optimal grid)")
    return ap


# ---------------------------------------------------------------------------
# helpers


def _load(path: str) -> dict[str, RingSpec]:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_ring_specs(fh.read())
    except OSError as ex:
        raise UsageError(f"cannot read {path}: {ex.strerror}") from ex


def _pick(rings: dict[str, RingSpec], name: str | None, prime: int | None) -> RingSpec:
    if name is None:
        ring = next(iter(rings.values()))
    elif name in rings:
        ring = rings[name]
    else:
        raise UsageError(f"no ring named {name!r}; file has {', '.join(rings)}")
    if prime is not None and prime != ring.p:
        ring = RingSpec(prime, ring.var_names, ring.gens, ring.name)
    return ring


def _module(arg: str, rings: dict[str, RingSpec], A: RingSpec) -> RingSpec | None:
    """None for the residue field, otherwise the ring S = P/J' sharing A's variables."""
    if arg == "k":
        return None
    if arg in rings:
        S = rings[arg]
    elif os.path.exists(arg):
        S = next(iter(_load(arg).values()))
    else:
        raise UsageError(f"module {arg!r} is neither k, a ring in the file, nor a ring file")
    if S.var_names != A.var_names:
        raise UsageError(f"module ring {S.name} uses variables {S.var_names}, expected {A.var_names}")
    return RingSpec(A.p, S.var_names, S.gens, S.name)


def _ints(text: str | None) -> list[int]:
    if not text:
        return []
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} {getattr(args, 'kind', getattr(args, 'family', ''))} needs "
                         + ", ".join("--" + m for m in missing))
    return [getattr(args, n) for n in names]


def _series_block(s: RationalSeries, n: int | None) -> dict:
    out = {"series": s.pretty(), "text": s.to_text()}
    uni = specialize_y(s) if not s.is_univariate() else s
    try:
        cx, gn = pole_orders(uni)
        out["cx"], out["gn"] = cx, gn
        qp = betti_polynomials(uni)
        ev, od = qp.format()
        out["betaEven"], out["betaOdd"], out["validFrom"] = ev, od, qp.valid_from
    except BettiLabError:
        pass
    if n is not None:
        out["coefficients"] = [c.to_text() for c in s.expand(n)]
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_resolve(args, report: RunReport):
    rings = _load(args.ringfile)
    A = _pick(rings, args.ring, args.prime)
    S = _module(args.module, rings, A)
    imax = 6 if args.imax is None else args.imax
    report.inputs.update({"ringfile": args.ringfile, "ring": A.name, "module": args.module, "prime": A.p,
                          "imax": imax, "jmax": args.jmax})
    with Phase(report, "resolve"):
        table = minimal_betti_table(A, None if S is None else list(S.gens), imax, args.jmax, strict=args.strict)
    report.tags.append("exact" if all(table.certified) else "heuristic")
    report.results = {"table": table.to_json(), "totals": table.totals()}
    report.text = table.macaulay()
    report.csv_rows = [{"i": i, "j": j, "count": c} for (i, j), c in sorted(table.entries.items())]


def cmd_series(args, report: RunReport):
    k = args.kind
    report.inputs.update({k2: v for k2, v in vars(args).items()
                          if k2 in ("kind", "dim", "codim", "s", "h", "e", "a", "c", "d", "q", "degrees", "pqj",
                                    "det_h") and v is not None})
    if k == "tate":
        dim, codim = _need(args, "dim", "codim")
        report.results = _series_block(formulas.tate_series(dim, codim), args.expand)
    elif k == "ci":
        (e,) = _need(args, "e")
        report.results = _series_block(formulas.graded_ci_pk(e, _ints(args.degrees)), args.expand)
    elif k == "golod":
        s, h, e = _need(args, "s", "h", "e")
        pbi = formulas.adequate_ideal_series(s, h, e)
        report.results = _series_block(formulas.golod_pk(e, pbi), args.expand)
        report.results["pBI"] = pbi.to_text()
    elif k == "residue":
        a, c, d, e = _need(args, "a", "c", "d", "e")
        if args.det_h is not None:
            pqj = formulas.det_poincare(2, args.det_h, e)
        else:
            pqj = BiPoly.from_z_coeffs(_ints(args.pqj))
        report.results = _series_block(formulas.golod_residue_series(a, c, d, e, pqj), args.expand)
        report.results["pQJ"] = pqj.to_text()
    elif k == "adequate":
        s, h, e = _need(args, "s", "h", "e")
        report.results = {"series": formulas.adequate_ideal_series(s, h, e).to_text()}
    elif k == "det":
        s, h, e = _need(args, "s", "h", "e")
        report.results = {"series": formulas.det_power_series(s, h, e).to_text()}
    elif k == "gring":
        c, d, e, a, h = _need(args, "c", "d", "e", "a", "h")
        gp = formulas.GringParams(c, d, e, a, h)
        report.results = {"gn": formulas.gring_granularity(gp), "case": gp.case_tag}
    elif k == "bound":
        c, q = _need(args, "c", "q")
        report.results = {"gn": formulas.granularity_bound(c, q)}
    res = report.results
    report.text = str(res.get("series", res.get("gn")))
    if "cx" in res:
        report.text += f"\ncx = {res['cx']}, gn = {res['gn']}"
    if "coefficients" in res:
        report.text += "\n" + "\n".join(f"z^{i}: {c}" for i, c in enumerate(res["coefficients"]))


def cmd_hilbert(args, report: RunReport):
    A = _pick(_load(args.ringfile), args.ring, args.prime)
    jmax = 10 if args.jmax is None else args.jmax
    seed = 0 if args.seed is None else args.seed
    report.inputs.update({"ringfile": args.ringfile, "ring": A.name, "prime": A.p, "jmax": jmax, "seed": seed})
    with Phase(report, "hilbert"):
        h = hilbert(A, jmax, args.cap, args.trials, seed)
    report.tags.append("exact" if h.exact else "heuristic")
    report.results = {
        "values": list(h.values),
        "krullDim": h.krull_dim,
        "numerator": None if h.numerator is None else h.numerator.to_text().replace("z", "t"),
        "multiplicity": h.multiplicity,
        "exact": h.exact,
    }
    r = report.results
    report.text = (f"H: {' '.join(map(str, h.values))}\ndim: {r['krullDim']}\n"
                   f"numerator: {r['numerator']}\nmultiplicity: {r['multiplicity']}")


def cmd_construct(args, report: RunReport):
    prime = args.prime or DEFAULT_PRIME
    files: dict[str, str] = {}
    if args.family == "optimal":
        d, c, q, a = _need(args, "d", "c", "q", "a")
        fam = optimal_family(d, c, q, a, prime)
        tag = f"{d}{c}{q}{a}"
        files[f"R_{tag}.ring"] = format_ring_spec(fam.R)
        files[f"S_{tag}.ring"] = format_ring_spec(fam.Stilde)
        manifest = fam.manifest()
        if fam.U is not None:
            manifest["U"] = fam.U.to_text([f"u{i + 1}" for i in range(fam.e)]).splitlines()
    else:
        s, h, e = _need(args, "s", "h", "e")
        J = golod_quotient_ideal(staircase(s, h, e), e, prime)
        files[f"{J.name}.ring"] = format_ring_spec(J)
        manifest = {"params": {"s": s, "h": h, "e": e}}
    manifest["files"] = sorted(files)
    report.inputs.update(manifest["params"] | {"prime": prime})
    report.results = manifest
    if args.output:
        os.makedirs(args.output, exist_ok=True)
        for name, text in files.items():
            with open(os.path.join(args.output, name), "w", encoding="utf-8") as fh:
                fh.write(text)
        with open(os.path.join(args.output, "manifest.json"), "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
        report.output_written = True
        report.text = "\n".join(f"wrote {os.path.join(args.output, n)}" for n in [*sorted(files), "manifest.json"])
    else:
        report.text = "\n".join(files.values()) + json.dumps(manifest, indent=2, sort_keys=True)


def cmd_compare(args, report: RunReport):
    rings = _load(args.ringfile)
    A = _pick(rings, args.ring, args.prime)
    S = _module(args.module, rings, A)
    imax = 8 if args.imax is None else args.imax
    seed = 0 if args.seed is None else args.seed
    report.inputs.update({"ringfile": args.ringfile, "ring": A.name, "module": args.module, "prime": A.p,
                          "imax": imax, "jmax": args.jmax, "seed": seed})
    with Phase(report, "compare"):
        res = grids.compare(A, None if S is None else list(S.gens), S, imax, args.jmax, args.trials, seed)
    failed = sorted(k for k, v in res["formulas"].items() if k != "golod" and v["diffs"])
    res["verdict"] = FAIL if failed or not res["complete"] else PASS
    res["failed"] = failed
    report.results = res
    report.tags.append("exact" if res["complete"] else "heuristic")
    lines = [f"oracle totals: {' '.join(map(str, res['oracle']['totals']))}"]
    po = res["oracle"]["poleOrders"]
    if po:
        lines.append(f"oracle fit: cx = {po['cx']}, gn = {po['gn']} (heuristic)")
    for name, v in sorted(res["formulas"].items()):
        state = "match" if not v["diffs"] else f"{len(v['diffs'])} differences"
        extra = f"  cx = {v['poleOrders']['cx']}, gn = {v['poleOrders']['gn']}" if "poleOrders" in v else ""
        lines.append(f"{name}: {state}{extra}")
    lines.append(res["verdict"])
    report.text = "\n".join(lines)


def cmd_verify(args, report: RunReport):
    th = args.theorem
    prime = args.prime or DEFAULT_PRIME
    only = tuple(_ints(args.only)) or None
    report.inputs.update({"theorem": th, "prime": prime})
    with Phase(report, "grid"):
        if th == "optimal":
            dmax = args.dmax or 3
            imax = 12 if args.imax is None else args.imax
            seed = 0 if args.seed is None else args.seed
            report.inputs.update({"dmax": dmax, "imax": imax, "seed": seed, "oracle": not args.no_oracle})
            rows = grids.verify_optimal(dmax, imax, not args.no_oracle, prime, args.trials, seed, only)
        elif th == "gring":
            cmax, emax = args.cmax or 5, args.emax or 5
            amax = 6 if args.amax is None else args.amax
            dmax = args.dmax or cmax
            report.inputs.update({"cmax": cmax, "dmax": dmax, "emax": emax, "amax": amax})
            rows = grids.verify_gring(cmax, dmax, emax, amax, only)
        elif th == "minmult":
            emax = args.emax or 4
            seed = 7 if args.seed is None else args.seed
            imax = 8 if args.imax is None else args.imax
            report.inputs.update({"emax": emax, "seed": seed, "imax": imax, "samples": args.samples,
                                  "trials": args.trials})
            rows = grids.verify_minmult(emax, args.samples, prime, args.trials, seed, imax)
        elif th == "family":
            emax = args.emax or 4
            seed = 1 if args.seed is None else args.seed
            trials = args.trials if args.trials != 5 else 20
            report.inputs.update({"emax": emax, "seed": seed, "trials": trials})
            rows = grids.verify_family(emax, prime, trials, seed)
        elif th == "loewy":
            dmax = args.dmax or 3
            seed = 0 if args.seed is None else args.seed
            report.inputs.update({"dmax": dmax, "seed": seed})
            rows = grids.verify_loewy(dmax, prime, args.trials, seed, only)
        else:
            emax = args.emax or 6
            report.inputs.update({"emax": emax})
            rows = grids.m_invariant_rows(emax)
    report.rows = rows
    report.tags.extend("heuristic" if r.verdict == "PASS*" else "exact" for r in rows)
    report.text = _row_table(rows) + "\n" + _summary_line(report)
    report.csv_rows = [_flat_row(r) for r in rows]


def _flat_row(r) -> dict:
    out = dict(r.params)
    out["verdict"] = r.verdict
    for k, v in r.details.items():
        out[k] = v if isinstance(v, (int, str, bool, float)) or v is None else json.dumps(v, sort_keys=True)
    if r.repro:
        out["repro"] = r.repro
    return out


def _row_table(rows) -> str:
    if not rows:
        return "(no rows)"
    keys = list(rows[0].params)
    lines = ["  ".join(f"{k:>3}" for k in keys) + "  verdict  details"]
    for r in rows:
        shown = {k: v for k, v in r.details.items() if not isinstance(v, (list, dict))}
        detail = " ".join(f"{k}={v}" for k, v in shown.items())
        lines.append("  ".join(f"{r.params[k]:>3}" for k in keys) + f"  {r.verdict:<7}  {detail}")
        if r.repro:
            lines.append(f"      repro: {r.repro}")
    return "\n".join(lines)


def _summary_line(report: RunReport) -> str:
    s = report.summary()
    return f"{s['PASS']} PASS, {s['PASS*']} PASS*, {s['FAIL']} FAIL"


def _csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    keys: list[str] = []
    for r in rows:
        keys.extend(k for k in r if k not in keys)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


COMMANDS = {
    "resolve": cmd_resolve,
    "series": cmd_series,
    "hilbert": cmd_hilbert,
    "construct": cmd_construct,
    "compare": cmd_compare,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return int(ex.code or 0)
    report = RunReport(["bettilab", *argv], {})
    try:
        COMMANDS[args.command](args, report)
    except (UsageError, BettiLabError, KeyError, ValueError, SyntaxError) as ex:
        print(f"bettilab: error: {ex}", file=sys.stderr)
        return 2
    if args.json:
        out = report.dumps(args.timings)
    elif args.csv:
        rows = report.csv_rows or [{"key": k, "value": json.dumps(v, sort_keys=True)} for k, v in
                                   sorted(report.results.items())]
        out = _csv(rows)
    else:
        out = report.text.rstrip("\n") + "\n"
    if args.output and not report.output_written:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
