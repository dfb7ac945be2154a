"""Verification grids, oracle-versus-formula comparisons and run reports.

Each grid row is an independent job.  Rows run on a bounded thread pool
(``BETTILAB_THREADS``) and are sorted by parameters before they are reported,
so the JSON output does not depend on scheduling.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

from .algebra import (
    HomogPoly,
    RingSpec,
    default_var_names,
    hilbert,
    is_regular_sequence,
    min_multiplicity_check,
    monomials,
    weakest,
)
from .constructions import check_point, optimal_family, sample_regular_point
from .errors import BettiLabError
from .formulas import (
    GringParams,
    det_poincare,
    det_power_series,
    golod_residue_series,
    graded_ci_pk,
    granularity_bound,
    gring_granularity,
    tate_series,
)
from .invariants import invariants, loewy_bound_check
from .resolution import (
    golod_comparison,
    is_koszul_truncated,
    minimal_betti_table,
    regular_presentation,
)
from .rng import trial_rng
from .series import BiPoly, RationalSeries, expand, pole_orders, root_multiplicity, univariate

PASS, PASS_STAR, FAIL = "PASS", "PASS*", "FAIL"


def worker_count() -> int:
    env = os.environ.get("BETTILAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


@dataclass
class Row:
    params: dict
    verdict: str
    details: dict = field(default_factory=dict)
    repro: str | None = None

    def sort_key(self):
        return tuple(self.params[k] for k in sorted(self.params))

    def to_json(self) -> dict:
        out = {"params": self.params, "verdict": self.verdict, "details": self.details}
        if self.repro:
            out["repro"] = self.repro
        return out


@dataclass
class RunReport:
    command: list[str]
    inputs: dict
    results: dict = field(default_factory=dict)
    rows: list[Row] = field(default_factory=list)
    tags: list[str] = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    # presentation state filled in by the CLI
    text: str = ""
    csv_rows: list | None = None
    output_written: bool = False

    @property
    def ok(self) -> bool:
        return all(r.verdict != FAIL for r in self.rows) and self.results.get("verdict", PASS) != FAIL

    def summary(self) -> dict:
        counts = {PASS: 0, PASS_STAR: 0, FAIL: 0}
        for r in self.rows:
            counts[r.verdict] = counts.get(r.verdict, 0) + 1
        return counts

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "tag": weakest(*self.tags),
        }
        if self.rows:
            out["rows"] = [r.to_json() for r in sorted(self.rows, key=Row.sort_key)]
            out["summary"] = self.summary()
        if timings:
            out["timings"] = self.timings
        return out

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), indent=2, sort_keys=True) + "\n"


class Phase:
    """Context manager that records wall-clock time for a named phase."""

    def __init__(self, report: RunReport, name: str):
        self.report, self.name = report, name

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.report.timings[self.name] = round(time.perf_counter() - self.t0, 6)
        return False


def run_rows(jobs: Sequence[Callable[[], Row]], threads: int | None = None) -> list[Row]:
    threads = threads or worker_count()
    if threads == 1 or len(jobs) <= 1:
        rows = [job() for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda job: job(), jobs))
    return sorted(rows, key=Row.sort_key)


def totals_of(series: RationalSeries, n: int) -> list[int]:
    return [sum(c.terms.values()) for c in expand(series, n)]


# ---------------------------------------------------------------------------
# optimality grid


def optimal_row(d: int, c: int, q: int, a: int, imax: int, oracle: bool, prime: int, trials: int,
                seed: int) -> Row:
    params = {"d": d, "c": c, "q": q, "a": a}
    repro = f"bettilab verify optimal --only {d},{c},{q},{a} --imax {imax} --prime {prime} --seed {seed}"
    details: dict = {}
    try:
        fam = optimal_family(d, c, q, a, prime)
        rep = invariants(fam.R, fam.Stilde, trials=trials, seed=seed)
    except BettiLabError as ex:
        return Row(params, FAIL, {"error": str(ex)}, repro)
    vals = rep.values()
    predicted = granularity_bound(c, q)
    details["invariants"] = dict(zip(("d", "c", "q", "r", "e", "m", "a"), vals))
    details["tag"] = rep.tag()
    details["gn"] = rep.gn
    details["predictedGn"] = predicted
    ok = vals[0] == d and vals[1] == c and vals[2] == q and vals[6] == a and rep.gn == predicted
    if oracle and rep.series is not None:
        table = minimal_betti_table(fam.R, list(fam.Stilde.gens), imax)
        got = table.totals()
        want = totals_of(rep.series, imax)
        details["oracle"] = got
        details["formula"] = want
        details["complete"] = all(table.complete)
        ok = ok and got == want and all(table.complete)
    elif oracle:
        ok = False
    verdict = PASS if ok else FAIL
    if ok and rep.tag() == "heuristic":
        verdict = PASS_STAR
    return Row(params, verdict, details, None if ok else repro)


def optimal_grid(dmax: int) -> list[tuple[int, int, int, int]]:
    out = []
    for d in range(1, dmax + 1):
        for c, q, a in product(range(d + 1), repeat=3):
            if q <= c and a <= c:
                out.append((d, c, q, a))
    return out


def verify_optimal(dmax: int = 3, imax: int = 12, oracle: bool = True, prime: int = 32003, trials: int = 5,
                   seed: int = 0, only: tuple | None = None, threads: int | None = None) -> list[Row]:
    grid = [tuple(only)] if only else optimal_grid(dmax)
    jobs = [lambda g=g: optimal_row(*g, imax, oracle, prime, trials, seed) for g in grid]
    return run_rows(jobs, threads)


# ---------------------------------------------------------------------------
# symbolic case analysis for Golod residue rings


def gring_row(c: int, d: int, e: int, a: int, h: int) -> Row:
    params = {"c": c, "d": d, "e": e, "a": a, "h": h}
    gp = GringParams(c, d, e, a, h)
    series = golod_residue_series(a, c, d, e, det_poincare(2, h, e))
    _, gn = pole_orders(series)
    want = gring_granularity(gp)
    ok = gn == want
    return Row(params, PASS if ok else FAIL, {"gn": gn, "formula": want, "case": gp.case_tag},
               None if ok else f"bettilab verify gring --only {c},{d},{e},{a},{h}")


def verify_gring(cmax: int = 5, dmax: int = 5, emax: int = 5, amax: int = 6, only: tuple | None = None,
                 threads: int | None = None) -> list[Row]:
    if only:
        grid = [tuple(only)]
    else:
        grid = [(c, d, e, a, h) for d in range(dmax + 1) for c in range(min(cmax, d) + 1)
                for e in range(1, emax + 1) for h in range(1, e + 1) for a in range(amax + 1)]
    return run_rows([lambda g=g: gring_row(*g) for g in grid], threads or 1)


def m_invariant_rows(emax: int = 6) -> list[Row]:
    rows = []
    for e in range(1, emax + 1):
        for h in range(1, e + 1):
            m = root_multiplicity(det_power_series(2, h, e) - BiPoly.const(1), -1)
            want = e if h == e else h + 1
            rows.append(Row({"e": e, "h": h}, PASS if m == want else FAIL, {"m": m, "expected": want}))
    return rows


# ---------------------------------------------------------------------------
# quadric complete intersections


def random_quadrics(e: int, count: int, p: int, seed: int) -> list[HomogPoly]:
    rng = trial_rng(seed, 0)
    mons = monomials(e, 2)
    out = []
    for _ in range(count):
        out.append(HomogPoly({m: c for m, c in zip(mons, rng.residues(len(mons), p)) if c}, e, 2).mod(p))
    return out


def minmult_row(e: int, q: int, sample: int, p: int, trials: int, seed: int, imax: int) -> Row:
    params = {"e": e, "q": q, "sample": sample}
    s = seed + 1000 * e + 100 * q + sample
    forms = random_quadrics(e, q, p, s)
    A = RingSpec(p, default_var_names(e), tuple(forms), f"ci_{e}_{q}_{sample}")
    regular = is_regular_sequence(e, forms, trials, p, seed=s)
    minmult = min_multiplicity_check(e, forms, trials, p, seed=s)
    koszul = is_koszul_truncated(A, imax)
    h = hilbert(A, 2 * e + 6, trials=trials, seed=s)
    mult = h.multiplicity
    ok = bool(regular.value) and minmult and koszul and mult == 2 ** q
    details = {"regular": regular.tag, "koszul": koszul, "multiplicity": mult, "expected": 2 ** q}
    verdict = PASS if ok else FAIL
    if ok and not h.exact:
        verdict = PASS_STAR
    return Row(params, verdict, details,
               None if ok else f"bettilab verify minmult --emax {e} --trials {trials} --seed {seed}")


def verify_minmult(emax: int = 4, samples: int = 2, prime: int = 32003, trials: int = 5, seed: int = 7,
                   imax: int = 8, threads: int | None = None) -> list[Row]:
    grid = [(e, q, k) for e in range(1, emax + 1) for q in range(1, e + 1) for k in range(samples)]
    return run_rows([lambda g=g: minmult_row(*g, prime, trials, seed, imax) for g in grid], threads)


# ---------------------------------------------------------------------------
# sampling of perturbed quadric families


def family_row(e: int, q: int, p: int, trials: int, seed: int) -> Row:
    """x_1^2..x_e^2 followed by a random quadric f_r; f_i - a_i f_r for generic a."""
    params = {"e": e, "q": q}
    forms = [HomogPoly.monomial(tuple(2 if k == i else 0 for k in range(e))) for i in range(e)]
    forms.append(random_quadrics(e, 1, p, seed + e)[0])
    results, ratio = sample_regular_point(e, forms, q, seed, trials, p)
    ok = ratio == 1.0
    return Row(params, PASS if ok else FAIL, {"ratio": ratio, "samples": len(results)},
               None if ok else f"bettilab verify family --emax {e} --trials {trials} --seed {seed}")


def engineered_family_row(p: int) -> Row:
    """f = (x^2, xy, y^2): the point a = 0 gives (x^2, xy), which is not regular."""
    x2, xy, y2 = (HomogPoly.monomial(m) for m in ((2, 0), (1, 1), (0, 2)))
    at_zero = check_point(2, [x2, xy, y2], 2, (0, 0), p)
    at_generic = check_point(2, [x2, xy, y2], 2, (5, 3), p)
    ok = not at_zero and at_generic
    return Row({"e": 2, "q": 2, "fixture": 1}, PASS if ok else FAIL, {"aZero": at_zero, "aGeneric": at_generic})


def verify_family(emax: int = 4, prime: int = 32003, trials: int = 20, seed: int = 1,
                  threads: int | None = None) -> list[Row]:
    grid = [(e, q) for e in range(1, emax + 1) for q in range(0, e + 1)]
    rows = run_rows([lambda g=g: family_row(*g, prime, trials, seed) for g in grid], threads)
    for r in rows:
        r.params.setdefault("fixture", 0)
    rows.append(engineered_family_row(prime))
    return sorted(rows, key=Row.sort_key)


# ---------------------------------------------------------------------------
# Loewy length bound


def loewy_row(d: int, c: int, q: int, a: int, prime: int, trials: int, seed: int) -> Row | None:
    fam = optimal_family(d, c, q, a, prime)
    rep = invariants(fam.R, fam.Stilde, trials=trials, seed=seed)
    if rep.gn != 0:
        return None
    lhs, rhs, holds = loewy_bound_check(fam.R, (), trials, seed)
    return Row({"d": d, "c": c, "q": q, "a": a}, PASS if holds else FAIL, {"lhs": lhs, "rhs": rhs},
               None if holds else f"bettilab verify loewy --only {d},{c},{q},{a}")


def verify_loewy(dmax: int = 3, prime: int = 32003, trials: int = 5, seed: int = 0, only: tuple | None = None,
                 threads: int | None = None) -> list[Row]:
    grid = [tuple(only)] if only else optimal_grid(dmax)
    rows = run_rows([lambda g=g: loewy_row(*g, prime, trials, seed) or Row({"skip": 1}, "SKIP") for g in grid],
                    threads)
    return [r for r in rows if r.verdict != "SKIP"]


# ---------------------------------------------------------------------------
# oracle against closed formulas


def fit_pole_orders(values: Sequence[int], max_order: int = 8, check: int = 3) -> tuple[int, int] | None:
    """Smallest (cx, gn) with sum b_i z^i times (1-z)^cx (1+z)^gn a polynomial.

    Only the known prefix is used: the product must vanish in its last
    ``check`` coefficients.  The answer is a guess from finitely many terms.
    """
    n = len(values)
    base = BiPoly.from_z_coeffs(values)
    for total in range(max_order + 1):
        for gn in range(total + 1):
            cx = total - gn
            if n - total <= check:
                return None
            prod = base * univariate(1, -1) ** cx * univariate(1, 1) ** gn
            coeffs = prod.univariate_coeffs() + [0] * n
            if not any(coeffs[n - check:n]):
                return cx, gn
    return None


def compare(A: RingSpec, module_gens: Sequence[HomogPoly] | None, S: RingSpec | None, imax: int,
            jmax: int | None, trials: int = 5, seed: int = 0) -> dict:
    """Run the oracle and every closed formula that applies; report coefficient-wise differences."""
    out: dict = {}
    table = minimal_betti_table(A, module_gens, imax, jmax)
    totals = table.totals()
    out["oracle"] = {"table": table.to_json(), "totals": totals}
    fit = fit_pole_orders(totals)
    out["oracle"]["poleOrders"] = None if fit is None else {"cx": fit[0], "gn": fit[1], "tag": "heuristic"}
    checks = {}
    ci = regular_presentation(A)
    if module_gens is None:
        if ci:
            degs = A.gen_degrees()
            if all(n >= 2 for n in degs):
                bi = graded_ci_pk(A.e, degs).expand(imax)
                diffs = [(i, j, table[(i, j)], bi[i][(j, 0)]) for i in range(imax + 1)
                         for j in range(table.jmax + 1) if table[(i, j)] != bi[i][(j, 0)]]
                checks["ci"] = {"diffs": diffs}
            if all(n == 2 for n in degs):
                dim = A.e - len(degs)
                want = totals_of(tate_series(dim, len(degs)), imax)
                checks["tate"] = {"diffs": [(i, totals[i], want[i]) for i in range(imax + 1) if totals[i] != want[i]],
                                  "poleOrders": dict(zip(("cx", "gn"), pole_orders(tate_series(dim, len(degs)))))}
        jm = table.jmax
        _, _, diffs = golod_comparison(A, imax, jm)
        checks["golod"] = {"diffs": diffs, "golod": not diffs}
    elif S is not None and ci:
        rep = invariants(A, S, trials=trials, seed=seed)
        out["invariants"] = rep.to_json()
        if rep.series is not None:
            want = totals_of(rep.series, imax)
            checks["golodResidue"] = {
                "series": rep.series.to_text(),
                "diffs": [(i, totals[i], want[i]) for i in range(imax + 1) if totals[i] != want[i]],
                "poleOrders": {"cx": rep.cx, "gn": rep.gn},
            }
    out["formulas"] = checks
    applicable = [k for k, v in checks.items() if k != "golod" or v["golod"]]
    out["matched"] = sorted(k for k in applicable if not checks[k]["diffs"])
    out["complete"] = all(table.complete)
    return out
