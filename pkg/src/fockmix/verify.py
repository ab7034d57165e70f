"""Named verification suites over the package's invariants.

Each suite runs a block of identity and tolerance checks and returns a
machine-readable result; the CLI maps them onto `verify --suite NAME` and the
acceptance tests drive the same functions, so a CI failure can cite the
failing identity by suite name. `scale="quick"` trims index ranges for fast
runs; `scale="full"` uses the ranges the package promises.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .errors import ConvergenceError
from .asymptotics import bs_diag_asymptotic, convergence_report
from .genfun import (
    GenFunPoint,
    check_energy_scaling,
    diagonal_gf_bs,
    diagonal_series_bs,
    eval_f_bs,
    eval_f_tms,
    eval_g_bs,
    eval_g_tms,
    f_bs_series,
    g_bs_series,
    g_tms_series,
)
from .params import BeamSplitterParam, Device, PhotonConfig, SqueezerParam
from .probabilities import (
    bs_prob_direct,
    bs_prob_double_sum,
    bs_prob_exact,
    normalization_residual,
    tms_prob,
    tms_prob_exact,
)
from .recurrences import (
    ClassicalTable,
    bs_table_convolution,
    bs_table_direct,
    bs_table_recurrence,
    bs_tilde_row,
    c_coeff,
    classical_recurrence_check,
    tms_recurrence_check,
    tms_table_direct,
    tms_table_recurrence,
)

__all__ = ["Failure", "VerificationResult", "SUITE_NAMES", "run_suite", "hom_sweep", "tms_sweep"]

SUITE_NAMES = [
    "normalization",
    "recurrence-bs",
    "recurrence-tms",
    "ptr",
    "hom",
    "energy",
    "genfun-series",
    "classical",
    "asymptotics",
]


@dataclass
class Failure:
    indices: str
    parameter: str
    expected: str
    got: str
    tolerance: str


@dataclass
class VerificationResult:
    suite: str
    cases: int = 0
    failures: list[Failure] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "failures": [asdict(f) for f in self.failures],
            "seconds": self.seconds,
        }

    def check(self, ok: bool, indices: str, parameter, expected, got, tolerance) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(
                Failure(indices, str(parameter), str(expected), str(got), str(tolerance))
            )


def hom_sweep(steps: int = 101) -> list[tuple[float, float]]:
    """(eta, B(1,1->1)) over a uniform grid on [0, 1]."""
    return [
        (eta, bs_prob_double_sum(1, 1, 1, eta))
        for eta in (idx / (steps - 1) for idx in range(steps))
    ]


def tms_sweep(steps: int = 101) -> list[tuple[float, float]]:
    """(lam, A(1,1->1)) over a uniform grid on [0, 1].

    The lam=1 endpoint is taken as the continuous limit through the reversed
    beam splitter at eta=0 (the parameter type itself keeps lam < 1).
    """
    out = []
    for idx in range(steps):
        lam = idx / (steps - 1)
        out.append((lam, (1.0 - lam) * bs_prob_double_sum(1, 1, 1, 1.0 - lam)))
    return out


# ---------------------------------------------------------------------------
# Suites


def _suite_hom(res: VerificationResult, scale: str) -> None:
    half = Fraction(1, 2)
    exact_bs = bs_prob_exact(PhotonConfig(1, 1, 1), half)
    res.check(exact_bs == 0, "(i=1,k=1,n=1)", "eta=1/2", "0 (exact)", exact_bs, "exact")
    exact_tms = tms_prob_exact(PhotonConfig(1, 1, 1, Device.TMS), half)
    res.check(exact_tms == 0, "(i=1,k=1,n=1)", "lam=1/2", "0 (exact)", exact_tms, "exact")

    p = BeamSplitterParam(0.5)
    cfg = PhotonConfig(1, 1, 1)
    for name, value in [
        ("direct", bs_prob_direct(cfg, p)),
        ("convolution", float(bs_table_convolution(1, 1, p).value(1, 1, 1))),
        ("recurrence", float(bs_table_recurrence(1, 1, p).value(1, 1, 1))),
    ]:
        res.check(abs(value) <= 1e-15, f"(1,1,1) float {name}", "eta=0.5", 0.0, value, 1e-15)
    tms_float = tms_prob(PhotonConfig(1, 1, 1, Device.TMS), SqueezerParam(0.5))
    res.check(abs(tms_float) <= 1e-15, "(1,1,1) float tms", "lam=0.5", 0.0, tms_float, 1e-15)

    for lam, value in tms_sweep(101):
        closed = (1.0 - lam) * (1.0 - 2.0 * lam) ** 2
        res.check(
            abs(value - closed) <= 1e-12,
            f"sweep lam={lam:.2f}",
            "lam grid [0,1]",
            closed,
            value,
            1e-12,
        )


def _suite_normalization(res: VerificationResult, scale: str) -> None:
    total_max = 30 if scale == "full" else 12
    p = BeamSplitterParam(0.7)
    for i in range(total_max + 1):
        for k in range(total_max + 1 - i):
            r = normalization_residual(i, k, p)
            res.check(r <= 1e-10, f"bs row (i={i},k={k})", "eta=0.7", "sum=1", f"residual {r:.3e}", 1e-10)

    kmax = 8 if scale == "full" else 4
    lams = (0.5, 0.8) if scale == "full" else (0.5,)
    for lam in lams:
        sp = SqueezerParam(lam)
        for i in range(kmax + 1):
            for k in range(kmax + 1):
                try:
                    r = normalization_residual(i, k, sp)
                except ConvergenceError as exc:
                    res.check(False, f"tms row (i={i},k={k})", f"lam={lam}", "sum=1", str(exc), 1e-10)
                    continue
                res.check(
                    r <= 1e-10, f"tms row (i={i},k={k})", f"lam={lam}", "sum=1", f"residual {r:.3e}", 1e-10
                )
    r = normalization_residual(0, 0, SqueezerParam(0.5))
    res.check(r <= 1e-12, "tms row (0,0)", "lam=0.5", "geometric sum 1", f"residual {r:.3e}", 1e-12)


def _theorem1_exact(res: VerificationResult, imax: int, eta_values) -> None:
    for eta in eta_values:
        p = BeamSplitterParam.from_value(eta)
        table = bs_table_direct(imax, imax, p, "rational")
        cache: dict[tuple[int, int, int], list] = {}

        def tilde(i: int, k: int, j: int) -> list:
            if min(i, k) < 0 or j < 0 or j > i + k:
                return []
            key = (i, k, j)
            if key not in cache:
                cache[key] = bs_tilde_row(i, k, j, table)
            return cache[key]

        for i in range(imax + 1):
            for k in range(imax + 1):
                row = table.row(i, k)
                for j in range(i + k + 1):
                    cur = tilde(i, k, j)
                    prev = tilde(i - 1, k - 1, j - 1)
                    for n in range(i + k + 1):
                        rhs = cur[n]
                        if prev and 1 <= n and n - 1 < len(prev):
                            rhs -= prev[n - 1]
                        residual = row[n] - rhs
                        res.check(
                            residual == 0,
                            f"(i={i},k={k},n={n},j={j})",
                            f"eta={eta}",
                            "residual 0 (exact)",
                            residual,
                            "exact",
                        )


def _suite_recurrence_bs(res: VerificationResult, scale: str) -> None:
    imax = 8 if scale == "full" else 6
    etas = [Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(1)]
    _theorem1_exact(res, imax, etas)

    # j=1 in float against the accuracy-guarded direct table
    fmax = 20 if scale == "full" else 10
    p = BeamSplitterParam(0.7)
    table = bs_table_direct(fmax, fmax, p)
    worst = 0.0
    for i in range(fmax + 1):
        for k in range(fmax + 1):
            if i + k == 0:
                continue
            cur = bs_tilde_row(i, k, 1, table) if i + k >= 1 else []
            prev = bs_tilde_row(i - 1, k - 1, 0, table) if min(i, k) >= 1 else []
            row = table.row(i, k)
            for n in range(i + k + 1):
                rhs = cur[n]
                if prev and 1 <= n and n - 1 < len(prev):
                    rhs -= prev[n - 1]
                worst = max(worst, abs(float(row[n]) - float(rhs)))
    res.check(worst <= 1e-10, f"j=1 float i,k<={fmax}", "eta=0.7", "residual<=1e-10", worst, 1e-10)

    # route agreement: float tables pairwise
    rmax = 25 if scale == "full" else 12
    tables = {
        "direct": bs_table_direct(rmax, rmax, p),
        "convolution": bs_table_convolution(rmax, rmax, p),
        "recurrence": bs_table_recurrence(rmax, rmax, p),
    }
    names = list(tables)
    for a_idx in range(len(names)):
        for b_idx in range(a_idx + 1, len(names)):
            a, b = names[a_idx], names[b_idx]
            worst = 0.0
            for key in tables[a].entries:
                ra, rb = tables[a].entries[key], tables[b].entries[key]
                worst = max(worst, max(abs(float(x) - float(y)) for x, y in zip(ra, rb)))
            res.check(
                worst <= 1e-10,
                f"{a} vs {b} i,k<={rmax}",
                "eta=0.7",
                "pairwise<=1e-10",
                worst,
                1e-10,
            )

    # route agreement: exact tables pairwise equal
    emax = 10 if scale == "full" else 6
    ep = BeamSplitterParam.from_value("1/3")
    exact_tables = {
        "direct": bs_table_direct(emax, emax, ep, "rational"),
        "convolution": bs_table_convolution(emax, emax, ep, "rational"),
        "recurrence": bs_table_recurrence(emax, emax, ep, "rational"),
    }
    for a_idx in range(3):
        for b_idx in range(a_idx + 1, 3):
            a, b = list(exact_tables)[a_idx], list(exact_tables)[b_idx]
            equal = all(
                exact_tables[a].entries[key] == exact_tables[b].entries[key]
                for key in exact_tables[a].entries
            )
            res.check(equal, f"{a} vs {b} i,k<={emax}", "eta=1/3", "exact equality", equal, "exact")


def _suite_recurrence_tms(res: VerificationResult, scale: str) -> None:
    nmax = 6 if scale == "full" else 4
    lams = ["1/4", "1/2", "3/4"] if scale == "full" else ["1/2"]
    for lam in lams:
        sp = SqueezerParam.from_value(lam)
        table = tms_table_direct(nmax, 2 * nmax, nmax, sp, "rational")
        for i in range(nmax + 1):
            for k in range(nmax + 1):
                for n in range(nmax + 1):
                    for j in range(n + k + 1):
                        residual = tms_recurrence_check(i, k, n, j, table)
                        res.check(
                            residual == 0,
                            f"(i={i},k={k},n={n},j={j})",
                            f"lam={lam}",
                            "residual 0 (exact)",
                            residual,
                            "exact",
                        )

    # recurrence table against the reversal-route values, float
    sp = SqueezerParam(0.2)
    rec = tms_table_recurrence(8, 8, 16, sp)
    direct = tms_table_direct(8, 8, 16, sp)
    worst = 0.0
    for key in rec.entries:
        worst = max(
            worst,
            max(abs(float(x) - float(y)) for x, y in zip(rec.entries[key], direct.entries[key])),
        )
    res.check(worst <= 1e-10, "recurrence vs direct i,k<=8,n<=16", "lam=0.2", "<=1e-10", worst, 1e-10)
    got = float(rec.value(1, 1, 1))
    res.check(abs(got - 0.288) <= 1e-12, "(1,1,1)", "lam=0.2", 0.288, got, 1e-12)


def _suite_ptr(res: VerificationResult, scale: str) -> None:
    rng = random.Random(20260810)
    points = 100 if scale == "full" else 25
    for lam in (0.2, 0.5, 0.8):
        sp = SqueezerParam(lam)
        bp = sp.ptr_beamsplitter()
        worst_g = 0.0
        for _ in range(points):
            x, y, z, w = (rng.uniform(-0.5, 0.5) for _ in range(4))
            lhs = eval_g_tms(GenFunPoint(x, y, z, w), sp)
            rhs = math.sqrt(1.0 - lam) * eval_g_bs(GenFunPoint(x, w, z, y), bp)
            worst_g = max(worst_g, abs(lhs - rhs))
        res.check(worst_g <= 1e-12, "amplitude-gf grid", f"lam={lam}", "<=1e-12", worst_g, 1e-12)
        worst_f = 0.0
        for _ in range(points):
            x, y, z, w = (rng.uniform(0.0, 0.6) for _ in range(4))
            lhs = eval_f_tms(GenFunPoint(x, y, z, w), sp)
            rhs = (1.0 - lam) * eval_f_bs(GenFunPoint(x, w, z, y), bp)
            worst_f = max(worst_f, abs(lhs - rhs))
        res.check(worst_f <= 1e-12, "probability-gf grid", f"lam={lam}", "<=1e-12", worst_f, 1e-12)

    # exact probability-level relation against the squeezer-side recurrence fill
    nmax = 10 if scale == "full" else 5
    lam_exact = Fraction(2, 5)
    sp = SqueezerParam.from_value(lam_exact)
    rec = tms_table_recurrence(nmax, nmax, nmax, sp, "rational")
    ok = True
    for i in range(nmax + 1):
        for k in range(nmax + 1):
            for n in range(nmax + 1):
                bridge_k = n + k - i
                expected = Fraction(0)
                if bridge_k >= 0:
                    expected = (1 - lam_exact) * bs_prob_exact(
                        PhotonConfig(i, bridge_k, n), 1 - lam_exact
                    )
                if rec.value(i, k, n) != expected:
                    ok = False
    res.check(ok, f"reversal relation i,k,n<={nmax}", "lam=2/5", "exact equality", ok, "exact")


def _suite_energy(res: VerificationResult, scale: str) -> None:
    rng = random.Random(42)
    pairs = 50 if scale == "full" else 15
    bp = BeamSplitterParam(0.35)
    sp = SqueezerParam(0.45)
    worst_bs = worst_tms = 0.0
    for _ in range(pairs):
        pt = GenFunPoint(*(rng.uniform(0.05, 0.5) for _ in range(4)))
        t = rng.uniform(0.7, 1.4)
        worst_bs = max(worst_bs, check_energy_scaling(pt, t, bp))
        worst_tms = max(worst_tms, check_energy_scaling(pt, t, sp))
    res.check(worst_bs <= 1e-12, f"{pairs} random (point,t)", "eta=0.35", "<=1e-12", worst_bs, 1e-12)
    res.check(worst_tms <= 1e-12, f"{pairs} random (point,t)", "lam=0.45", "<=1e-12", worst_tms, 1e-12)
    pt = GenFunPoint(0.2, 0.3, 0.4, 0.5)
    res.check(check_energy_scaling(pt, 1.0, bp) == 0.0, "t=1", "eta=0.35", 0.0, "residual", "exact")


def _suite_genfun_series(res: VerificationResult, scale: str) -> None:
    p = BeamSplitterParam(0.7)
    half = BeamSplitterParam(0.5)

    pt = GenFunPoint(0.3, 0.3, 0.3, 1.0)
    series = f_bs_series(pt, p, order=40 if scale == "full" else 24)
    closed = eval_f_bs(pt, p)
    res.check(
        abs(series.value - closed) <= 1e-8,
        "triple series (0.3,0.3,0.3,w=1)",
        "eta=0.7",
        closed,
        series.value,
        1e-8,
    )

    order = 60 if scale == "full" else 30
    diag = diagonal_series_bs(0.3, 0.5, half, order=order)
    closed = diagonal_gf_bs(0.3, 0.5, half)
    res.check(
        abs(diag.value - closed) <= 1e-8, "diagonal series (0.3,0.5)", "eta=1/2", closed, diag.value, 1e-8
    )
    reduced = 1.0 / math.sqrt((1.0 - 0.3) * (1.0 - 0.5**2 * 0.3))
    res.check(
        abs(closed - reduced) <= 1e-14, "diagonal closed form factorization", "eta=1/2", reduced, closed, 1e-14
    )

    for coords in [(0.2, 0.2, 0.2, 0.2), (0.25, -0.25, 0.25, -0.25)]:
        gpt = GenFunPoint(*coords)
        g_series = g_bs_series(gpt, p, order=24)
        g_closed = eval_g_bs(gpt, p)
        res.check(
            abs(g_series.value - g_closed) <= 1e-8,
            f"amplitude series {coords}",
            "eta=0.7",
            g_closed,
            g_series.value,
            1e-8,
        )
    sp = SqueezerParam(0.36)
    gpt = GenFunPoint(0.2, 0.2, 0.2, 0.2)
    g_series = g_tms_series(gpt, sp, order=24)
    g_closed = eval_g_tms(gpt, sp)
    res.check(
        abs(g_series.value - g_closed) <= 1e-8,
        "squeezer amplitude series (0.2,...)",
        "lam=0.36",
        g_closed,
        g_series.value,
        1e-8,
    )

    sp_slice = SqueezerParam(0.36)
    for x in (0.0, 0.3, 0.7):
        for y in (0.0, 0.3, 0.7):
            want = 1.0 / ((1.0 - x) * (1.0 - y))
            got_bs = eval_f_bs(GenFunPoint(x, y, 1.0, 1.0), p)
            got_tms = eval_f_tms(GenFunPoint(x, y, 1.0, 1.0), sp_slice)
            res.check(
                abs(got_bs - want) <= 1e-12,
                f"bs normalization slice ({x},{y},1,1)",
                "eta=0.7",
                want,
                got_bs,
                1e-12,
            )
            res.check(
                abs(got_tms - want) <= 1e-12,
                f"tms normalization slice ({x},{y},1,1)",
                "lam=0.36",
                want,
                got_tms,
                1e-12,
            )

    # swapping (x,y) with (z,w) leaves the beam-splitter closed form fixed
    rng = random.Random(7)
    worst = 0.0
    for _ in range(50):
        x, y, z, w = (rng.uniform(0.0, 0.7) for _ in range(4))
        worst = max(
            worst, abs(eval_f_bs(GenFunPoint(x, y, z, w), p) - eval_f_bs(GenFunPoint(y, x, w, z), p))
        )
    res.check(worst <= 1e-14, "input-swap symmetry grid", "eta=0.7", "<=1e-14", worst, 1e-14)


def _suite_classical(res: VerificationResult, scale: str) -> None:
    kmax = 12 if scale == "full" else 6
    p = BeamSplitterParam(0.6)
    worst = 0.0
    for i in range(1, kmax + 1):
        for k in range(1, kmax + 1):
            for n in range(i + k + 1):
                worst = max(worst, classical_recurrence_check(i, k, n, 1, p))
    res.check(worst <= 1e-12, f"j=1 half-sum i,k<={kmax}", "eta=0.6", "<=1e-12", worst, 1e-12)

    jmax = 8 if scale == "full" else 5
    worst = 0.0
    for i in range(jmax + 1):
        for k in range(jmax + 1):
            for j in range(i + k + 1):
                for n in range(i + k + 1):
                    worst = max(worst, classical_recurrence_check(i, k, n, j, p))
    res.check(worst <= 1e-12, f"general-j i,k<={jmax}", "eta=0.6", "<=1e-12", worst, 1e-12)

    half = BeamSplitterParam.from_value("1/2")
    ct = ClassicalTable(half, "rational")
    classical = ct.prob(1, 1, 1)
    quantum = bs_prob_exact(PhotonConfig(1, 1, 1), Fraction(1, 2))
    res.check(classical == Fraction(1, 2), "p(1|1,1)", "eta=1/2", "1/2", classical, "exact")
    gap = classical - quantum
    res.check(gap == Fraction(1, 2), "interference gap", "eta=1/2", "1/2", gap, "exact")

    # dropping the interference term and halving reproduces the classical row
    eta = p.eta
    ctf = ClassicalTable(p)
    worst = 0.0
    for i in range(1, 9):
        for k in range(1, 9):
            for n in range(i + k + 1):
                four = (
                    eta * ctf.prob(i - 1, k, n - 1)
                    + (1.0 - eta) * ctf.prob(i - 1, k, n)
                    + eta * ctf.prob(i, k - 1, n)
                    + (1.0 - eta) * ctf.prob(i, k - 1, n - 1)
                )
                worst = max(worst, abs(four - 2.0 * ctf.prob(i, k, n)))
    res.check(worst <= 1e-12, "four-term doubling i,k<=8", "eta=0.6", "<=1e-12", worst, 1e-12)

    ok = True
    for i in range(11):
        for k in range(11):
            for j in range(i + k + 1):
                count = min(j, k) - max(0, j - i) + 1
                if count != c_coeff(i, k, j):
                    ok = False
    res.check(ok, "c(i,k,j) equals term count", "i,k<=10", True, ok, "exact")


def _suite_asymptotics(res: VerificationResult, scale: str) -> None:
    probes = [50, 100, 200] if scale == "full" else [30, 60]
    report = convergence_report(probes, Device.BS)
    res.check(
        report.monotone,
        f"bs max central error over {probes}",
        "eta=1/2",
        "non-increasing",
        report.max_rel_error,
        "monotone",
    )
    if scale == "full":
        exact = report.detail[200]
        idx = exact["n"].index(200.0)
        rel = exact["rel_error"][idx]
        res.check(rel <= 0.10, "(i=200,n=200)", "eta=1/2", "rel err<=10%", rel, 0.10)

    tms_probes = [50, 100] if scale == "full" else [30, 60]
    tms_report = convergence_report(tms_probes, Device.TMS)
    res.check(
        tms_report.monotone,
        f"tms max central error over {tms_probes}",
        "lam=1/2",
        "non-increasing",
        tms_report.max_rel_error,
        "monotone",
    )

    # parity suppression is exact, checked in rational arithmetic
    pmax = 20 if scale == "full" else 10
    table = bs_table_recurrence(pmax, pmax, BeamSplitterParam.from_value("1/2"), "rational")
    ok = True
    for i in range(pmax + 1):
        row = table.row(i, i)
        for n in range(1, 2 * i + 1, 2):
            if row[n] != 0:
                ok = False
    res.check(ok, f"odd-n diagonal zeros i<={pmax}", "eta=1/2", "exact zeros", ok, "exact")
    mid = bs_diag_asymptotic(100, 100)
    res.check(abs(mid - 2.0 / (math.pi * 100.0)) < 1e-15, "(i=100,n=100) formula", "-", 2.0 / (math.pi * 100), mid, 1e-15)


_SUITES = {
    "normalization": _suite_normalization,
    "recurrence-bs": _suite_recurrence_bs,
    "recurrence-tms": _suite_recurrence_tms,
    "ptr": _suite_ptr,
    "hom": _suite_hom,
    "energy": _suite_energy,
    "genfun-series": _suite_genfun_series,
    "classical": _suite_classical,
    "asymptotics": _suite_asymptotics,
}


def run_suite(name: str, scale: str = "full") -> VerificationResult:
    """Run one named suite (or 'all') and return its result."""
    if scale not in ("quick", "full"):
        raise ValueError(f"unknown scale {scale!r}")
    if name == "all":
        merged = VerificationResult("all")
        start = time.perf_counter()
        for sub in SUITE_NAMES:
            part = run_suite(sub, scale)
            merged.cases += part.cases
            merged.failures.extend(part.failures)
        merged.seconds = time.perf_counter() - start
        return merged
    if name not in _SUITES:
        raise KeyError(f"unknown suite {name!r}")
    res = VerificationResult(name)
    start = time.perf_counter()
    _SUITES[name](res, scale)
    res.seconds = time.perf_counter() - start
    return res
