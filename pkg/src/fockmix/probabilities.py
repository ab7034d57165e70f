"""Transition probabilities with an exact rational core.

The direct probability of a beam splitter is an integer-coefficient
polynomial in the transmittance, so an exact rational evaluation is always
available and serves as ground truth for each floating-point route. The
double sum factors as (sum over m) * (sum over j) because its coefficient
splits into an m-part and a j-part; the exact engine evaluates the two
single sums over a common power-of-the-denominator scale.

The float route tracks a running bound on its own cancellation error and
silently re-evaluates through the exact engine when double precision cannot
deliver ~1e-12 absolute accuracy. Squeezer probabilities go through partial
time reversal: A(i,k->n; lam) = (1-lam) * B(i, n+k-i -> n; eta=1-lam).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ConvergenceError
from .numerics import gamma_small, log_binomial
from .params import BeamSplitterParam, Device, PhotonConfig, SqueezerParam

__all__ = [
    "bs_prob_direct",
    "bs_prob_exact",
    "bs_prob_double_sum",
    "tms_prob",
    "tms_prob_exact",
    "normalization_residual",
]

# Plain float products are safe (no overflow, exactly representable binomials)
# up to this total photon number; beyond it terms are built in log scale.
_PLAIN_FLOAT_MAX_TOTAL = 24

# Absolute accuracy the float route must deliver before it trusts itself.
_FLOAT_ERROR_BUDGET = 2e-13

_EPS = 2.0 ** -52


def _term_range(i: int, k: int, n: int) -> tuple[int, int]:
    return max(0, n - k), min(i, n)


def _scaled_factor_sums(i: int, k: int, n: int, num: int, den: int) -> tuple[int, int]:
    """Integer pair (U, V) with B = U*V / den**(i+k) for eta = num/den."""
    lo, hi = _term_range(i, k, n)
    r = den - num
    npow = [1] * (i + k + 1)
    rpow = [1] * (i + k + 1)
    for e in range(1, i + k + 1):
        npow[e] = npow[e - 1] * num
        rpow[e] = rpow[e - 1] * r
    u = 0
    v = 0
    for m in range(lo, hi + 1):
        t = math.comb(i, m) * math.comb(k, n - m) * npow[m] * rpow[n - m]
        u += -t if m & 1 else t
    for j in range(lo, hi + 1):
        t = math.comb(n, j) * math.comb(i + k - n, i - j) * npow[k - n + j] * rpow[i - j]
        v += -t if j & 1 else t
    return u, v


def bs_prob_exact(c: PhotonConfig, eta: Fraction) -> Fraction:
    """Exact rational B(i,k->n) for rational transmittance."""
    if c.device is not Device.BS:
        raise ValueError("bs_prob_exact expects a beam-splitter configuration")
    if not 0 <= eta <= 1:
        raise ValueError(f"transmittance must lie in [0, 1], got {eta}")
    i, k, n = c.i, c.k, c.n
    lo, hi = _term_range(i, k, n)
    if n > i + k or lo > hi:
        return Fraction(0)
    eta = Fraction(eta)
    u, v = _scaled_factor_sums(i, k, n, eta.numerator, eta.denominator)
    return Fraction(u * v, eta.denominator ** (i + k))


def bs_prob_double_sum(i: int, k: int, n: int, eta):
    """Literal double sum over (m, j) with the four-binomial coefficients.

    Works for float and Fraction transmittance alike; this is the
    convolution-squared route written out (amplitude times amplitude with the
    square roots paired into exact integers), kept separate from the factored
    engine so the two can cross-check each other.
    """
    lo, hi = _term_range(i, k, n)
    if n > i + k or lo > hi:
        return 0 * eta
    om = 1 - eta
    total = 0 * eta
    for m in range(lo, hi + 1):
        for j in range(lo, hi + 1):
            term = gamma_small(i, k, n, m, j) * eta ** (k - n + m + j) * om ** (i + n - m - j)
            total += -term if (m + j) & 1 else term
    return total


def _float_factor_sums(i: int, k: int, n: int, eta: float):
    """(U, V, error bound) for the factored sums in double precision."""
    lo, hi = _term_range(i, k, n)
    om = 1.0 - eta
    if i + k <= _PLAIN_FLOAT_MAX_TOTAL:
        u_terms = []
        v_terms = []
        for m in range(lo, hi + 1):
            t = math.comb(i, m) * math.comb(k, n - m) * eta**m * om ** (n - m)
            u_terms.append(-t if m & 1 else t)
        for j in range(lo, hi + 1):
            t = math.comb(n, j) * math.comb(i + k - n, i - j) * eta ** (k - n + j) * om ** (i - j)
            v_terms.append(-t if j & 1 else t)
        u = math.fsum(u_terms)
        v = math.fsum(v_terms)
        err_u = 4.0 * _EPS * math.fsum(map(abs, u_terms))
        err_v = 4.0 * _EPS * math.fsum(map(abs, v_terms))
    else:
        # Log-scaled terms: binomials and powers can leave float range here.
        # A term exp(lg) inherits the absolute error of lg itself, which grows
        # with the magnitudes that were summed into it, so the per-term error
        # bound carries that magnitude, not just a few ulp.
        log_eta = math.log(eta) if eta > 0.0 else -math.inf
        log_om = math.log(om) if om > 0.0 else -math.inf

        def term_log(parts):
            lg = math.fsum(parts)
            return lg, math.fsum(abs(p) for p in parts)

        u_logs = []
        for m in range(lo, hi + 1):
            parts = [log_binomial(i, m), log_binomial(k, n - m)]
            if m:
                parts.append(m * log_eta)
            if n - m:
                parts.append((n - m) * log_om)
            lg, mag = term_log(parts)
            u_logs.append((lg, -1.0 if m & 1 else 1.0, mag))
        v_logs = []
        for j in range(lo, hi + 1):
            parts = [log_binomial(n, j), log_binomial(i + k - n, i - j)]
            if k - n + j:
                parts.append((k - n + j) * log_eta)
            if i - j:
                parts.append((i - j) * log_om)
            lg, mag = term_log(parts)
            v_logs.append((lg, -1.0 if j & 1 else 1.0, mag))

        def run(logs_signs_full):
            pairs = [(lg, s) for lg, s, _ in logs_signs_full]
            if not pairs:
                return 0.0, 0.0
            top = max(lg for lg, _ in pairs)
            if top == -math.inf:
                return 0.0, 0.0
            total = math.fsum(s * math.exp(lg - top) for lg, s in pairs)
            abssum = math.fsum(math.exp(lg - top) for lg, _ in pairs)
            magnitude = max(mag for _, _, mag in logs_signs_full)
            scale = math.exp(top)
            return total * scale, _EPS * (8.0 + 4.0 * magnitude) * abssum * scale

        u, err_u = run(u_logs)
        v, err_v = run(v_logs)
    err = err_u * abs(v) + abs(u) * err_v + _EPS * abs(u * v)
    return u, v, err


def bs_prob_direct(c: PhotonConfig, p: BeamSplitterParam) -> float:
    """Direct-route B(i,k->n) in floating point, accurate to ~1e-12 absolute.

    Escalates to the exact engine whenever its own cancellation-error bound
    exceeds the budget, so tables built from this route stay trustworthy at
    sizes where the raw double sum would lose most of its digits.
    """
    if c.device is not Device.BS:
        raise ValueError("bs_prob_direct expects a beam-splitter configuration")
    i, k, n = c.i, c.k, c.n
    lo, hi = _term_range(i, k, n)
    if n > i + k or lo > hi:
        return 0.0
    if p.eta == 0.0:
        return 1.0 if n == k else 0.0
    if p.eta == 1.0:
        return 1.0 if n == i else 0.0
    u, v, err = _float_factor_sums(i, k, n, p.eta)
    if err > _FLOAT_ERROR_BUDGET:
        exact = p.eta_exact if p.eta_exact is not None else Fraction(p.eta)
        return _clamp01(float(bs_prob_exact(c, exact)))
    return _clamp01(u * v)


def _clamp01(x: float) -> float:
    return 0.0 if x < 0.0 else (1.0 if x > 1.0 else x)


def _bridge(c: PhotonConfig) -> PhotonConfig | None:
    m = c.n + c.k - c.i
    return None if m < 0 else PhotonConfig(c.i, m, c.n, Device.BS)


def tms_prob(c: PhotonConfig, p: SqueezerParam) -> float:
    """A(i,k->n) = (1-lam) B(i, n+k-i -> n) at eta = 1-lam; 0 if unreachable."""
    if c.device is not Device.TMS:
        raise ValueError("tms_prob expects a squeezer configuration")
    bridge = _bridge(c)
    if bridge is None:
        return 0.0
    return (1.0 - p.lam) * bs_prob_direct(bridge, p.ptr_beamsplitter())


def tms_prob_exact(c: PhotonConfig, lam: Fraction) -> Fraction:
    """Exact rational A(i,k->n) for rational squeezing parameter."""
    if c.device is not Device.TMS:
        raise ValueError("tms_prob_exact expects a squeezer configuration")
    if not 0 <= lam < 1:
        raise ValueError(f"squeezing parameter must lie in [0, 1), got {lam}")
    bridge = _bridge(c)
    if bridge is None:
        return Fraction(0)
    lam = Fraction(lam)
    return (1 - lam) * bs_prob_exact(bridge, 1 - lam)


# Tail control for the squeezer normalization sum. The term ratio tends to
# lam from above at large n; (1+lam)/2 is a safe geometric majorant there.
_TAIL_TOLERANCE = 1e-14


def normalization_residual(i: int, k: int, p: BeamSplitterParam | SqueezerParam) -> float:
    """|sum of the output distribution - 1| over all reachable n.

    Beam splitter rows are finite. Squeezer rows are summed until a geometric
    tail estimate drops below 1e-14; if that never happens before the cutoff,
    a ConvergenceError is raised rather than silently truncating. The cutoff
    is 10*(i+k+1)/(1-lam), raised to a floor of 60/(1-lam) + i + k because
    the shorter form cannot reach the tail tolerance when i+k <= 2.
    """
    if isinstance(p, BeamSplitterParam):
        cfg = [PhotonConfig(i, k, n, Device.BS) for n in range(i + k + 1)]
        return abs(math.fsum(bs_prob_direct(c, p) for c in cfg) - 1.0)
    lam = p.lam
    n_cut = max(
        math.ceil(10 * (i + k + 1) / (1.0 - lam)),
        math.ceil(60 / (1.0 - lam)) + i + k,
    )
    ratio = 0.5 * (1.0 + lam)
    n0 = max(0, i - k)
    terms: list[float] = []
    settled = n0 + i + k + 2  # past the oscillatory head / structural zeros
    for n in range(n0, n_cut + 1):
        terms.append(tms_prob(PhotonConfig(i, k, n, Device.TMS), p))
        if n >= settled:
            recent = max(terms[-3:])
            tail = recent * ratio / (1.0 - ratio)
            if tail < _TAIL_TOLERANCE:
                return abs(math.fsum(terms) - 1.0)
    raise ConvergenceError(
        f"squeezer row (i={i}, k={k}, lam={lam}) did not reach the "
        f"{_TAIL_TOLERANCE} tail bound by n={n_cut}"
    )
