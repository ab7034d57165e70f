"""Closed-form generating functions and their series cross-checks.

Four closed forms are evaluated at real points v = (x, y, z, w):

    amplitude type (entire in v):
        g_bs  = exp( sqrt(eta)(xz+yw) + sqrt(1-eta)(yz-xw) )
        g_tms = sqrt(1-lam) exp( sqrt(1-lam)(xz+yw) + sqrt(lam)(zw-xy) )

    probability type (thermal-state parameterization, coords in [0,1) and
    positive denominator):
        f_bs  = 1 / (1 - eta(xz+yw) - (1-eta)(xw+yz) + xyzw)
        f_tms = (1-lam) / (1 - lam(xy+zw) - (1-lam)(xz+yw) + xyzw)

plus the two-variable closed form of the diagonal (equal input) sequence.
Everything here is real-valued only; the probability-type evaluators raise
DomainError outside their convergence region rather than guessing.

Series comparisons pick their truncation order at runtime from a geometric
tail bound (largest coordinate against the device parameter), capped at total
order 80; hitting the cap is reported on the result, never silently accepted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .numerics import log_factorial
from .params import BeamSplitterParam, Device, PhotonConfig, SqueezerParam
from .amplitudes import bs_amplitude_direct, tms_amplitude
from .recurrences import ProbabilityTable, bs_table_recurrence

__all__ = [
    "GenFunPoint",
    "SeriesResult",
    "eval_g_bs",
    "eval_g_tms",
    "eval_f_bs",
    "eval_f_tms",
    "eval_f_bs_w1",
    "check_energy_scaling",
    "diagonal_gf_bs",
    "g_bs_series",
    "g_tms_series",
    "f_bs_series",
    "diagonal_series_bs",
]

_SERIES_TOLERANCE = 1e-10
_SERIES_MAX_ORDER = 80


@dataclass(frozen=True)
class GenFunPoint:
    """A real evaluation point (x, y, z, w)."""

    x: float
    y: float
    z: float
    w: float = 0.0

    def coords(self) -> tuple[float, float, float, float]:
        return (self.x, self.y, self.z, self.w)

    def in_unit_box(self) -> bool:
        """Thermal-state parameterization constraint for the f-type forms."""
        return all(0.0 <= c < 1.0 for c in self.coords())


@dataclass(frozen=True)
class SeriesResult:
    """A truncated series value with its tail bookkeeping."""

    value: float
    order: int
    tail_bound: float
    converged: bool


def eval_g_bs(pt: GenFunPoint, p: BeamSplitterParam) -> float:
    x, y, z, w = pt.coords()
    se, so = math.sqrt(p.eta), math.sqrt(1.0 - p.eta)
    return math.exp(se * (x * z + y * w) + so * (y * z - x * w))


def eval_g_tms(pt: GenFunPoint, p: SqueezerParam) -> float:
    x, y, z, w = pt.coords()
    sl, so = math.sqrt(p.lam), math.sqrt(1.0 - p.lam)
    return so * math.exp(so * (x * z + y * w) + sl * (z * w - x * y))


def _f_bs_denominator(pt: GenFunPoint, p: BeamSplitterParam) -> float:
    x, y, z, w = pt.coords()
    return 1.0 - p.eta * (x * z + y * w) - (1.0 - p.eta) * (x * w + y * z) + x * y * z * w


def _f_tms_denominator(pt: GenFunPoint, p: SqueezerParam) -> float:
    x, y, z, w = pt.coords()
    return 1.0 - p.lam * (x * y + z * w) - (1.0 - p.lam) * (x * z + y * w) + x * y * z * w


def eval_f_bs(pt: GenFunPoint, p: BeamSplitterParam) -> float:
    den = _f_bs_denominator(pt, p)
    if den <= 0.0:
        raise DomainError(f"probability generating function undefined at {pt} (denominator {den})")
    return 1.0 / den


def eval_f_tms(pt: GenFunPoint, p: SqueezerParam) -> float:
    den = _f_tms_denominator(pt, p)
    if den <= 0.0:
        raise DomainError(f"probability generating function undefined at {pt} (denominator {den})")
    return (1.0 - p.lam) / den


def eval_f_bs_w1(x: float, y: float, z: float, p: BeamSplitterParam) -> float:
    """The w=1 slice: the three-variable generating function of the
    beam-splitter output distribution."""
    return eval_f_bs(GenFunPoint(x, y, z, 1.0), p)


def check_energy_scaling(pt: GenFunPoint, t: float, p: BeamSplitterParam | SqueezerParam) -> float:
    """Residual of the conservation-law scaling identity.

    Photon-number conservation (beam splitter) leaves f invariant under
    (x,y,z,w) -> (tx, ty, z/t, w/t). For the squeezer the conserved quantity
    is the photon-number difference i-k-n+m = 0, whose invariant scaling is
    (x,y,z,w) -> (tx, y/t, z/t, tw): every product the closed form contains
    (xy, zw, xz, yw, xyzw) is then fixed.
    """
    if t == 0.0:
        raise DomainError("scaling parameter t must be nonzero")
    x, y, z, w = pt.coords()
    if isinstance(p, BeamSplitterParam):
        scaled = GenFunPoint(t * x, t * y, z / t, w / t)
        return abs(eval_f_bs(pt, p) - eval_f_bs(scaled, p))
    scaled = GenFunPoint(t * x, y / t, z / t, t * w)
    return abs(eval_f_tms(pt, p) - eval_f_tms(scaled, p))


def diagonal_gf_bs(x: float, z: float, p: BeamSplitterParam) -> float:
    """Closed form of sum_{i,n} B(i,i->n) x^i z^n.

    At eta = 1/2 the radicand factors as (1-x)(1-x z^2).
    """
    eta = p.eta
    radicand = (1.0 + x * z) ** 2 - 4.0 * (eta + (1.0 - eta) * z) * (x * (1.0 - eta) + eta * x * z)
    if radicand <= 0.0:
        raise DomainError(f"diagonal generating function undefined at x={x}, z={z}")
    return 1.0 / math.sqrt(radicand)


def _pick_order(tail_at, cap: int = _SERIES_MAX_ORDER) -> tuple[int, float, bool]:
    for order in range(2, cap + 1):
        bound = tail_at(order)
        if bound < _SERIES_TOLERANCE:
            return order, bound, True
    return cap, tail_at(cap), False


def g_bs_series(pt: GenFunPoint, p: BeamSplitterParam, order: int | None = None) -> SeriesResult:
    """Truncated quadruple series of the amplitude generating function.

    Terms are amplitude / sqrt(i! k! n! m!) with m pinned by photon-number
    conservation, summed through total order i+k+n+m <= order;
    |amplitude| <= 1 gives the tail bound.
    """
    r = max(abs(c) for c in pt.coords())
    if order is None:
        order, bound, ok = _series_order_amp(r)
    else:
        bound = _g_tail(r, order)
        ok = bound < _SERIES_TOLERANCE
    x, y, z, w = pt.coords()
    total = []
    for i in range(order // 2 + 1):
        for k in range(order // 2 + 1 - i):
            # total order is 2(i+k) since m = i+k-n
            for n in range(i + k + 1):
                m = i + k - n
                b = bs_amplitude_direct(PhotonConfig(i, k, n), p)
                if b == 0.0:
                    continue
                lg = -0.5 * (log_factorial(i) + log_factorial(k) + log_factorial(n) + log_factorial(m))
                total.append(b * math.exp(lg) * x**i * y**k * z**n * w**m)
    return SeriesResult(math.fsum(total), order, bound, ok)


def _g_tail(r: float, order: int) -> float:
    # sum over shells s > order of r^s * sum 1/sqrt(i!k!n!m!); the inner sum
    # is bounded by (sum_j 1/sqrt(j!))^4 < 38 for every shell.
    if r >= 1.0:
        return math.inf
    return 38.0 * r ** (order + 1) / (1.0 - r)


def _series_order_amp(r: float) -> tuple[int, float, bool]:
    return _pick_order(lambda o: _g_tail(r, o))


def g_tms_series(pt: GenFunPoint, p: SqueezerParam, order: int | None = None) -> SeriesResult:
    """Truncated quadruple series of the squeezer amplitude generating
    function; m is pinned by conservation of the photon-number difference."""
    r = max(abs(c) for c in pt.coords())
    if order is None:
        order, bound, ok = _series_order_amp(r)
    else:
        bound = _g_tail(r, order)
        ok = bound < _SERIES_TOLERANCE
    x, y, z, w = pt.coords()
    total = []
    for n in range(order // 2 + 1):
        for k in range(order // 2 + 1 - n):
            # total order is 2(n+k) since m = n+k-i
            for i in range(n + k + 1):
                m = n + k - i
                a = tms_amplitude(PhotonConfig(i, k, n, Device.TMS), p)
                if a == 0.0:
                    continue
                lg = -0.5 * (log_factorial(i) + log_factorial(k) + log_factorial(n) + log_factorial(m))
                total.append(a * math.exp(lg) * x**i * y**k * z**n * w**m)
    return SeriesResult(math.fsum(total), order, bound, ok)


def f_bs_series(
    pt: GenFunPoint,
    p: BeamSplitterParam,
    order: int | None = None,
    table: ProbabilityTable | None = None,
) -> SeriesResult:
    """Truncated series sum B(i,k->n) x^i y^k z^n w^(i+k-n) from a table.

    Row sums are 1, so shells beyond the order contribute at most
    sum_{s>N} (s+1) r^s, a closed geometric form.
    """
    x, y, z, w = pt.coords()
    r = max(abs(x), abs(y))
    if max(abs(z), abs(w)) > 1.0:
        raise DomainError("series tail bound needs |z|, |w| <= 1")
    if order is None:
        order, bound, ok = _pick_order(lambda o: _f_tail(r, o))
    else:
        bound = _f_tail(r, order)
        ok = bound < _SERIES_TOLERANCE
    if table is None:
        table = bs_table_recurrence(order, order, p)
    total = []
    for i in range(order + 1):
        for k in range(order + 1 - i):
            row = table.row(i, k)
            for n in range(i + k + 1):
                total.append(row[n] * x**i * y**k * z**n * w ** (i + k - n))
    return SeriesResult(math.fsum(total), order, bound, ok)


def _f_tail(r: float, order: int) -> float:
    if r >= 1.0:
        return math.inf
    n = order
    return r ** (n + 1) * ((n + 2) - (n + 1) * r) / (1.0 - r) ** 2


def diagonal_series_bs(
    x: float,
    z: float,
    p: BeamSplitterParam,
    order: int | None = None,
    table: ProbabilityTable | None = None,
) -> SeriesResult:
    """Truncated series sum_i x^i sum_n B(i,i->n) z^n from a table."""
    if abs(z) > 1.0:
        raise DomainError("series tail bound needs |z| <= 1")
    r = abs(x)

    def tail(o: int) -> float:
        return r ** (o + 1) / (1.0 - r) if r < 1.0 else math.inf

    if order is None:
        order, bound, ok = _pick_order(tail)
    else:
        bound = tail(order)
        ok = bound < _SERIES_TOLERANCE
    if table is None:
        table = bs_table_recurrence(order, order, p)
    total = []
    for i in range(order + 1):
        row = table.row(i, i)
        for n in range(2 * i + 1):
            total.append(row[n] * x**i * z**n)
    return SeriesResult(math.fsum(total), order, bound, ok)
