"""Command-line front end.

Exit codes: 0 success (verify: all checks passed), 1 verification failure or
a failed internal self-check, 2 usage errors (bad flags, out-of-range
parameters, points outside a convergence domain).

Parameters accept decimal literals ("0.3") or exact ratios ("1/3"); rational
precision requires the ratio form so the exact routes are never silently fed
a rounded decimal. Floats print in shortest round-trip form; rationals print
as canonical lowest-term fractions, which makes rational CSV output
bit-stable across runs.
"""

from __future__ import annotations

import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

import click

from .asymptotics import convergence_report
from .errors import DomainError
from .genfun import GenFunPoint, diagonal_gf_bs, eval_f_bs, eval_f_tms, eval_g_bs, eval_g_tms
from .params import BeamSplitterParam, Device, PhotonConfig, SqueezerParam
from .probabilities import bs_prob_direct, bs_prob_double_sum, bs_prob_exact, tms_prob, tms_prob_exact
from .recurrences import (
    ClassicalTable,
    ProbabilityTable,
    bs_table_convolution,
    bs_table_direct,
    bs_table_recurrence,
    tms_table_direct,
    tms_table_recurrence,
)
from .amplitudes import bs_amplitude, tms_amplitude
from .verify import SUITE_NAMES, hom_sweep, run_suite, tms_sweep

_NORMALIZATION_TOLERANCE = 1e-10


@dataclass
class RunConfig:
    """Parsed command options shared by the computational subcommands."""

    device: Device
    param_text: str
    precision: str = "float"
    method: str = "direct"
    fmt: str = "csv"
    out: str | None = None

    def __post_init__(self) -> None:
        self.rational_literal = "/" in self.param_text
        if self.method == "exact":
            self.precision = "rational"
        if self.precision == "rational" and not self.rational_literal:
            raise click.UsageError("rational precision requires a p/q parameter literal")

    def bs_param(self) -> BeamSplitterParam:
        try:
            return BeamSplitterParam.from_value(_parse_number(self.param_text))
        except (ValueError, ZeroDivisionError) as exc:
            raise click.UsageError(str(exc)) from exc

    def tms_param(self) -> SqueezerParam:
        try:
            return SqueezerParam.from_value(_parse_number(self.param_text))
        except (ValueError, ZeroDivisionError) as exc:
            raise click.UsageError(str(exc)) from exc


def _parse_number(text: str) -> float | Fraction:
    try:
        return Fraction(text) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(f"cannot parse parameter {text!r}") from exc


def _require_param(device: str, eta: str | None, lam: str | None) -> str:
    if device == "bs":
        if eta is None:
            raise click.UsageError("--eta is required for the beam splitter")
        return eta
    if lam is None:
        raise click.UsageError("--lambda is required for the squeezer")
    return lam


def _config(i: int, k: int, n: int, device: Device) -> PhotonConfig:
    try:
        return PhotonConfig(i, k, n, device)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=not text.endswith("\n"))
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="print timing diagnostics to stderr")
@click.pass_context
def main(ctx: click.Context, verbose: bool) -> None:
    """Fock-basis transition amplitudes and probabilities for two-mode
    Gaussian couplers (beam splitter and two-mode squeezer).

    The process is single-threaded; table builds are vectorized internally.
    """
    ctx.obj = {"verbose": verbose}


def _note(message: str) -> None:
    ctx = click.get_current_context(silent=True)
    if ctx is not None and ctx.obj and ctx.obj.get("verbose"):
        click.echo(message, err=True)


@main.command()
@click.option("--device", type=click.Choice(["bs", "tms"]), required=True)
@click.option("--i", "i", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--eta", default=None, help="transmittance, decimal or p/q")
@click.option("--lambda", "lam", default=None, help="squeezing parameter, decimal or p/q")
@click.option("--method", type=click.Choice(["direct", "convolution"]), default="direct")
def amp(device: str, i: int, k: int, n: int, eta: str | None, lam: str | None, method: str) -> None:
    """Print one transition amplitude."""
    cfg = RunConfig(Device(device), _require_param(device, eta, lam), method=method)
    if cfg.device is Device.BS:
        value = bs_amplitude(_config(i, k, n, Device.BS), cfg.bs_param(), method=method)
    else:
        value = tms_amplitude(_config(i, k, n, Device.TMS), cfg.tms_param(), method=method)
    click.echo(repr(value))


@main.command()
@click.option("--device", type=click.Choice(["bs", "tms"]), required=True)
@click.option("--i", "i", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--eta", default=None)
@click.option("--lambda", "lam", default=None)
@click.option("--precision", type=click.Choice(["float", "rational"]), default="float")
@click.option("--method", type=click.Choice(["direct", "convolution", "recurrence", "exact"]), default="direct")
def prob(device, i, k, n, eta, lam, precision, method) -> None:
    """Print one transition probability."""
    cfg = RunConfig(Device(device), _require_param(device, eta, lam), precision=precision, method=method)
    pc = _config(i, k, n, cfg.device)
    if cfg.precision == "rational":
        value = _prob_rational(pc, cfg)
        click.echo(str(value))
        return
    value = _prob_float(pc, cfg)
    click.echo(repr(value))


def _prob_rational(pc: PhotonConfig, cfg: RunConfig) -> Fraction:
    if pc.device is Device.BS:
        param = cfg.bs_param()
        exact = param.eta_exact
        if cfg.method == "convolution":
            return bs_prob_double_sum(pc.i, pc.k, pc.n, exact)
        if cfg.method == "recurrence":
            return bs_table_recurrence(pc.i, pc.k, param, "rational").value(pc.i, pc.k, pc.n)
        return bs_prob_exact(pc, exact)
    param = cfg.tms_param()
    exact = param.lam_exact
    if cfg.method == "convolution":
        raise click.UsageError(
            "squeezer amplitudes are irrational; rational precision supports "
            "direct, exact and recurrence methods"
        )
    if cfg.method == "recurrence":
        return tms_table_recurrence(pc.i, pc.k, pc.n, param, "rational").value(pc.i, pc.k, pc.n)
    return tms_prob_exact(pc, exact)


def _prob_float(pc: PhotonConfig, cfg: RunConfig) -> float:
    if pc.device is Device.BS:
        param = cfg.bs_param()
        if cfg.method == "convolution":
            return bs_amplitude(pc, param, method="convolution") ** 2
        if cfg.method == "recurrence":
            return float(bs_table_recurrence(pc.i, pc.k, param).value(pc.i, pc.k, pc.n))
        return bs_prob_direct(pc, param)
    param = cfg.tms_param()
    if cfg.method == "convolution":
        return tms_amplitude(pc, param, method="convolution") ** 2
    if cfg.method == "recurrence":
        return float(tms_table_recurrence(pc.i, pc.k, pc.n, param).value(pc.i, pc.k, pc.n))
    return tms_prob(pc, param)


def _format_value(v, precision: str) -> str:
    return str(v) if precision == "rational" else repr(float(v))


def _table_rows(table: ProbabilityTable):
    for (i, k) in sorted(table.entries):
        row = table.entries[(i, k)]
        for n, value in enumerate(row):
            m = i + k - n if table.device is Device.BS else n + k - i
            if m < 0:
                continue
            yield i, k, n, m, value


def _render_table(table: ProbabilityTable, fmt: str, param_text: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["i", "k", "n", "m", "value"])
        for i, k, n, m, value in _table_rows(table):
            writer.writerow([i, k, n, m, _format_value(value, table.precision)])
        return buf.getvalue()
    param: float | str
    if table.precision == "rational":
        param = param_text
    else:
        param = (
            table.param.eta if isinstance(table.param, BeamSplitterParam) else table.param.lam
        )
    doc = {
        "device": table.device.value,
        "param": param,
        "method": table.method,
        "entries": [
            {"i": i, "k": k, "n": n, "m": m, "value": _format_value(value, table.precision)
             if table.precision == "rational" else float(value)}
            for i, k, n, m, value in _table_rows(table)
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


@main.command()
@click.option("--device", type=click.Choice(["bs", "tms"]), required=True)
@click.option("--imax", type=int, required=True)
@click.option("--kmax", type=int, required=True)
@click.option("--nmax", type=int, default=None, help="output cutoff, squeezer tables only")
@click.option("--eta", default=None)
@click.option("--lambda", "lam", default=None)
@click.option("--precision", type=click.Choice(["float", "rational"]), default="float")
@click.option("--method", type=click.Choice(["direct", "convolution", "recurrence", "exact"]), default="recurrence")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", type=click.Path(), default=None)
def table(device, imax, kmax, nmax, eta, lam, precision, method, fmt, out) -> None:
    """Build a probability table and write it as CSV or JSON."""
    if imax < 0 or kmax < 0:
        raise click.UsageError("table sizes must be nonnegative")
    param_text = _require_param(device, eta, lam)
    cfg = RunConfig(Device(device), param_text, precision=precision, method=method, fmt=fmt, out=out)
    route = "direct" if cfg.method == "exact" else cfg.method
    started = time.perf_counter()
    if cfg.device is Device.BS:
        builder = {
            "direct": bs_table_direct,
            "convolution": bs_table_convolution,
            "recurrence": bs_table_recurrence,
        }[route]
        t = builder(imax, kmax, cfg.bs_param(), cfg.precision)
    else:
        if nmax is None:
            raise click.UsageError("--nmax is required for squeezer tables")
        if nmax < 0:
            raise click.UsageError("table sizes must be nonnegative")
        if route == "convolution":
            raise click.UsageError("squeezer tables support direct and recurrence methods")
        builder = tms_table_direct if route == "direct" else tms_table_recurrence
        t = builder(imax, kmax, nmax, cfg.tms_param(), cfg.precision)
    residual = t.normalization_max_residual()
    _note(
        f"built {len(t.entries)} rows in {time.perf_counter() - started:.3f}s, "
        f"normalization residual {residual:.3e}"
    )
    if residual > _NORMALIZATION_TOLERANCE:
        click.echo(f"normalization self-check failed: residual {residual:.3e}", err=True)
        sys.exit(1)
    _emit(_render_table(t, fmt, param_text), out)


@main.command()
@click.option("--which", type=click.Choice(["g", "f", "diag"]), required=True)
@click.option("--device", type=click.Choice(["bs", "tms"]), default="bs")
@click.option("--x", type=float, default=0.0)
@click.option("--y", type=float, default=0.0)
@click.option("--z", type=float, default=0.0)
@click.option("--w", type=float, default=0.0)
@click.option("--eta", default=None)
@click.option("--lambda", "lam", default=None)
def genfun(which, device, x, y, z, w, eta, lam) -> None:
    """Evaluate a closed-form generating function at a real point."""
    if which == "diag" and device != "bs":
        raise click.UsageError("the diagonal generating function is a beam-splitter object")
    cfg = RunConfig(Device(device), _require_param(device, eta, lam))
    pt = GenFunPoint(x, y, z, w)
    try:
        if which == "diag":
            value = diagonal_gf_bs(x, z, cfg.bs_param())
        elif which == "g":
            value = (
                eval_g_bs(pt, cfg.bs_param())
                if cfg.device is Device.BS
                else eval_g_tms(pt, cfg.tms_param())
            )
        else:
            value = (
                eval_f_bs(pt, cfg.bs_param())
                if cfg.device is Device.BS
                else eval_f_tms(pt, cfg.tms_param())
            )
    except DomainError as exc:
        raise click.UsageError(str(exc)) from exc
    click.echo(repr(value))


@main.command()
@click.option("--suite", type=click.Choice(SUITE_NAMES + ["all"]), required=True)
@click.option("--scale", type=click.Choice(["quick", "full"]), default="full")
@click.option("--out", type=click.Path(), default=None)
def verify(suite, scale, out) -> None:
    """Run a named invariant suite; exit 0 on all-pass, 1 on any failure."""
    result = run_suite(suite, scale)
    _emit(json.dumps(result.to_dict(), indent=2) + "\n", out)
    if not result.ok:
        sys.exit(1)


@main.command()
@click.option(
    "--kind",
    type=click.Choice(["hom-sweep", "tms-sweep", "diag-asymptotic", "quantum-classical"]),
    required=True,
)
@click.option("--steps", type=int, default=101)
@click.option("--i", "i", type=int, default=100,
              help="equal input count (diag-asymptotic) or input a count (quantum-classical)")
@click.option("--k", "k", type=int, default=None, help="input b count for quantum-classical")
@click.option("--eta", default="1/2", help="transmittance for quantum-classical")
@click.option("--out", type=click.Path(), default=None)
def plotdata(kind, steps, i, k, eta, out) -> None:
    """Emit plot-ready CSV curves (suppression sweeps, asymptotic overlays,
    quantum versus distinguishable-photon output distributions)."""
    if steps < 2:
        raise click.UsageError("--steps must be at least 2")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if kind == "hom-sweep":
        writer.writerow(["eta", "prob"])
        for x, v in hom_sweep(steps):
            writer.writerow([repr(x), repr(v)])
    elif kind == "tms-sweep":
        writer.writerow(["lambda", "prob"])
        for x, v in tms_sweep(steps):
            writer.writerow([repr(x), repr(v)])
    elif kind == "quantum-classical":
        if i < 0 or (k is not None and k < 0):
            raise click.UsageError("photon counts must be nonnegative")
        k = i if k is None else k
        p = RunConfig(Device.BS, eta).bs_param()
        table = ClassicalTable(p)
        writer.writerow(["n", "quantum", "classical"])
        for n in range(i + k + 1):
            quantum = bs_prob_direct(PhotonConfig(i, k, n), p)
            writer.writerow([n, repr(quantum), repr(float(table.prob(i, k, n)))])
    else:
        if i < 1:
            raise click.UsageError("--i must be positive")
        report = convergence_report([i], Device.BS)
        detail = report.detail[i]
        writer.writerow(["n", "exact", "predicted"])
        for n, exact, pred in zip(detail["n"], detail["exact"], detail["predicted"]):
            writer.writerow([int(n), repr(exact), repr(pred)])
    _emit(buf.getvalue(), out)


if __name__ == "__main__":
    main()
