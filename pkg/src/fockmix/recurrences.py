"""Recurrence-based probability tables and the identities behind them.

The production recurrences are the five-term forms (the j=1 special case):

    beam splitter, i,k >= 1:
        B(i,k->n) = eta B(i-1,k->n-1) + (1-eta) B(i-1,k->n)
                  + eta B(i,k-1->n)   + (1-eta) B(i,k-1->n-1)
                  - B(i-1,k-1->n-1)

    squeezer, k,n >= 1:
        A(i,k->n) = (1-lam) A(i,k-1->n) + lam A(i-1,k-1->n)
                  + lam A(i,k->n-1)    + (1-lam) A(i-1,k->n-1)
                  - A(i-1,k-1->n-1)

seeded by the binomial vacuum rows (beam splitter) and by the amplifier
two-term recurrence plus the reversal-derived n=0 boundary (squeezer). The
general-j forms, built from convolutions of smaller rows, are kept as
checkable identities only; j=1 costs O(1) per cell, general j does not.

Tables fill by increasing total photon number, so every cell depends only on
cells from smaller shells; a built table is immutable and safe to share.

The last term of each five-term form is the interference correction. The
distinguishable-photon model at the end of the module has no such term: its
general-j relation holds with a counting coefficient c(i,k,j) instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import TableCoverageError
from .numerics import binomial_exact
from .params import BeamSplitterParam, Device, PhotonConfig, SqueezerParam
from .probabilities import bs_prob_direct, bs_prob_double_sum, bs_prob_exact, tms_prob, tms_prob_exact
from .amplitudes import bs_amplitude_convolution

__all__ = [
    "ProbabilityTable",
    "ClassicalTable",
    "bs_table_direct",
    "bs_table_convolution",
    "bs_table_recurrence",
    "tms_table_direct",
    "tms_table_recurrence",
    "bs_tilde",
    "bs_tilde_row",
    "bs_recurrence_check",
    "tms_tilde",
    "tms_recurrence_check",
    "c_coeff",
    "classical_prob",
    "classical_gf",
    "classical_recurrence_check",
]

Param = Union[BeamSplitterParam, SqueezerParam]


@dataclass
class ProbabilityTable:
    """Triangular (beam splitter) or rectangular (squeezer) probability table.

    entries maps (i, k) to the row over the output count n: beam-splitter
    rows hold exactly i+k+1 values (n = 0..i+k), squeezer rows hold nmax+1
    values. Rows are numpy arrays in float precision and lists of Fractions
    in rational precision.
    """

    device: Device
    param: Param
    method: str
    precision: str
    imax: int
    kmax: int
    nmax: int | None = None
    entries: dict = field(default_factory=dict)

    @property
    def zero(self):
        return Fraction(0) if self.precision == "rational" else 0.0

    def row(self, i: int, k: int):
        try:
            return self.entries[(i, k)]
        except KeyError:
            raise TableCoverageError(
                f"table ({self.device.value}, imax={self.imax}, kmax={self.kmax}) "
                f"has no row (i={i}, k={k})"
            ) from None

    def value(self, i: int, k: int, n: int):
        if n < 0:
            return self.zero
        row = self.row(i, k)
        if self.device is Device.BS:
            return row[n] if n < len(row) else self.zero
        if n >= len(row):
            raise TableCoverageError(
                f"squeezer table holds n <= {len(row) - 1}, asked for n={n}"
            )
        return row[n]

    def normalization_max_residual(self) -> float:
        """Worst row-sum defect. Squeezer rows are partial sums, so only the
        excess above 1 counts there."""
        worst = 0.0
        for row in self.entries.values():
            s = float(sum(row))
            defect = abs(s - 1.0) if self.device is Device.BS else max(s - 1.0, 0.0)
            worst = max(worst, defect)
        return worst


def _eta_of(p: BeamSplitterParam, precision: str):
    if precision == "rational":
        if p.eta_exact is None:
            raise ValueError("rational precision needs an exact transmittance carrier")
        return p.eta_exact
    return p.eta


def _lam_of(p: SqueezerParam, precision: str):
    if precision == "rational":
        if p.lam_exact is None:
            raise ValueError("rational precision needs an exact squeezing carrier")
        return p.lam_exact
    return p.lam


def _bs_binomial_row(count: int, eta, mode_a: bool):
    """Vacuum-seeded row: binomial distribution of `count` photons, each
    landing in output a with probability eta (input a) or 1-eta (input b)."""
    q = eta if mode_a else 1 - eta
    return [binomial_exact(count, n) * q**n * (1 - q) ** (count - n) for n in range(count + 1)]


def _shell_pairs(imax: int, kmax: int):
    for s in range(imax + kmax + 1):
        for i in range(max(0, s - kmax), min(imax, s) + 1):
            yield i, s - i


def bs_table_direct(imax: int, kmax: int, p: BeamSplitterParam, precision: str = "float") -> ProbabilityTable:
    """Direct-route table; float rows stay within ~1e-12 of the exact values."""
    t = ProbabilityTable(Device.BS, p, "direct", precision, imax, kmax)
    eta = _eta_of(p, precision)
    for i, k in _shell_pairs(imax, kmax):
        if precision == "rational":
            row = [bs_prob_exact(PhotonConfig(i, k, n), eta) for n in range(i + k + 1)]
        else:
            row = np.array([bs_prob_direct(PhotonConfig(i, k, n), p) for n in range(i + k + 1)])
        t.entries[(i, k)] = row
    return t


def bs_table_convolution(imax: int, kmax: int, p: BeamSplitterParam, precision: str = "float") -> ProbabilityTable:
    """Convolution-squared table: squared vacuum-row convolutions in float,
    or the paired double sum (square roots combined exactly) in rational."""
    t = ProbabilityTable(Device.BS, p, "convolution", precision, imax, kmax)
    eta = _eta_of(p, precision)
    for i, k in _shell_pairs(imax, kmax):
        if precision == "rational":
            row = [bs_prob_double_sum(i, k, n, eta) for n in range(i + k + 1)]
        else:
            row = np.array(
                [bs_amplitude_convolution(PhotonConfig(i, k, n), p) ** 2 for n in range(i + k + 1)]
            )
        t.entries[(i, k)] = row
    return t


def bs_table_recurrence(imax: int, kmax: int, p: BeamSplitterParam, precision: str = "float") -> ProbabilityTable:
    """Five-term dynamic-programming fill, seeded by the two binomial rows."""
    t = ProbabilityTable(Device.BS, p, "recurrence", precision, imax, kmax)
    eta = _eta_of(p, precision)
    rational = precision == "rational"
    rows = t.entries
    for i, k in _shell_pairs(imax, kmax):
        if k == 0:
            row = _bs_binomial_row(i, eta, mode_a=True)
            rows[(i, k)] = row if rational else np.array(row, dtype=float)
            continue
        if i == 0:
            row = _bs_binomial_row(k, eta, mode_a=False)
            rows[(i, k)] = row if rational else np.array(row, dtype=float)
            continue
        # Shell order guarantees these exist; fail loudly if it ever breaks.
        for need in ((i - 1, k), (i, k - 1), (i - 1, k - 1)):
            if need not in rows:
                raise TableCoverageError(f"shell order violated, missing row {need}")
        up, left, diag = rows[(i - 1, k)], rows[(i, k - 1)], rows[(i - 1, k - 1)]
        size = i + k + 1
        if rational:
            om = 1 - eta
            row = []
            for n in range(size):
                val = 0 * eta
                if n <= i + k - 1:
                    val += om * up[n] + eta * left[n]
                if 1 <= n:
                    val += eta * up[n - 1] + om * left[n - 1]
                    if n - 1 <= i + k - 2:
                        val -= diag[n - 1]
                row.append(val)
            rows[(i, k)] = row
        else:
            om = 1.0 - p.eta
            new = np.zeros(size)
            new[:-1] += om * up + p.eta * left
            new[1:] += p.eta * up + om * left
            new[1:-1] -= diag
            np.clip(new, 0.0, 1.0, out=new)
            rows[(i, k)] = new
    return t


def tms_table_direct(imax: int, kmax: int, nmax: int, p: SqueezerParam, precision: str = "float") -> ProbabilityTable:
    """Squeezer table through the reversal route, cell by cell."""
    t = ProbabilityTable(Device.TMS, p, "direct", precision, imax, kmax, nmax)
    lam = _lam_of(p, precision)
    for i in range(imax + 1):
        for k in range(kmax + 1):
            if precision == "rational":
                row = [tms_prob_exact(PhotonConfig(i, k, n, Device.TMS), lam) for n in range(nmax + 1)]
            else:
                row = np.array(
                    [tms_prob(PhotonConfig(i, k, n, Device.TMS), p) for n in range(nmax + 1)]
                )
            t.entries[(i, k)] = row
    return t


def tms_table_recurrence(imax: int, kmax: int, nmax: int, p: SqueezerParam, precision: str = "float") -> ProbabilityTable:
    """Five-term fill over (i+k) shells, then n, with reversal-derived seams.

    Boundaries where the five-term form does not apply: k=0 rows follow the
    amplifier two-term recurrence A(i,0->n) = (1-lam) A(i-1,0->n-1)
    + lam A(i,0->n-1); the n=0 column is (1-lam) C(k,i) (1-lam)^(k-i) lam^i
    for k >= i (zero otherwise), which is the reversed beam-splitter row.
    """
    t = ProbabilityTable(Device.TMS, p, "recurrence", precision, imax, kmax, nmax)
    lam = _lam_of(p, precision)
    one = Fraction(1) if precision == "rational" else 1.0
    om = one - lam
    rows = t.entries

    def zeros():
        return [lam * 0] * (nmax + 1)

    for i, k in _shell_pairs(imax, kmax):
        row = zeros()
        if i == 0 and k == 0:
            for n in range(nmax + 1):
                row[n] = om * lam**n
        elif k == 0:
            prev = rows[(i - 1, 0)]
            for n in range(1, nmax + 1):
                row[n] = om * prev[n - 1] + lam * row[n - 1]
        else:
            up = rows.get((i - 1, k))  # absent only when i == 0
            left = rows[(i, k - 1)]
            diag = rows.get((i - 1, k - 1))
            if k >= i:
                row[0] = om * binomial_exact(k, i) * om ** (k - i) * lam**i
            for n in range(1, nmax + 1):
                val = om * left[n] + lam * row[n - 1]
                if up is not None:
                    val += om * up[n - 1] + lam * diag[n] - diag[n - 1]
                row[n] = val
        if precision == "float":
            arr = np.array(row, dtype=float)
            np.clip(arr, 0.0, 1.0, out=arr)
            rows[(i, k)] = arr
        else:
            rows[(i, k)] = row
    return t


def _convolve_full(a, b):
    out = [0 * (a[0] + b[0])] * (len(a) + len(b) - 1)
    for s, x in enumerate(a):
        for u, y in enumerate(b):
            out[s + u] += x * y
    return out


def bs_tilde_row(i: int, k: int, j: int, table: ProbabilityTable) -> list:
    """The j-indexed convolution combination as a full row over n = 0..i+k."""
    zero = table.zero
    out = [zero] * (i + k + 1)
    for l in range(max(0, j - i), min(j, k) + 1):
        a = table.row(j - l, l)
        b = table.row(i - j + l, k - l)
        for n, v in enumerate(_convolve_full(list(a), list(b))):
            out[n] += v
    return out


def bs_tilde(i: int, k: int, j: int, n: int, table: ProbabilityTable):
    """Single value of the convolution combination; 0 outside its support."""
    if min(i, k, n) < 0 or j < 0 or j > i + k:
        return table.zero
    row = bs_tilde_row(i, k, j, table)
    return row[n] if n < len(row) else table.zero


def bs_recurrence_check(i: int, k: int, n: int, j: int, table: ProbabilityTable):
    """|B(i,k->n) - [tilde(i,k,j,n) - tilde(i-1,k-1,j-1,n-1)]|; exactly zero
    in rational precision."""
    if j < 0 or j > i + k:
        raise ValueError(f"j must lie in [0, {i + k}], got {j}")
    lhs = table.value(i, k, n)
    rhs = bs_tilde(i, k, j, n, table) - bs_tilde(i - 1, k - 1, j - 1, n - 1, table)
    return abs(lhs - rhs)


def tms_tilde(i: int, k: int, n: int, j: int, table: ProbabilityTable):
    """Squeezer analog; the convolution acts on the input index i."""
    if min(i, k, n) < 0 or j < 0 or j > n + k:
        return table.zero
    total = table.zero
    for l in range(max(0, j - k), min(j, n) + 1):
        for m in range(i + 1):
            total += table.value(m, j - l, l) * table.value(i - m, k - j + l, n - l)
    return total


def tms_recurrence_check(i: int, k: int, n: int, j: int, table: ProbabilityTable):
    """|(1-lam) A(i,k->n) - [tilde(i,k,n,j) - tilde(i-1,k-1,n-1,j-1)]|."""
    if j < 0 or j > n + k:
        raise ValueError(f"j must lie in [0, {n + k}], got {j}")
    lam = _lam_of(table.param, table.precision)
    lhs = (1 - lam) * table.value(i, k, n)
    rhs = tms_tilde(i, k, n, j, table) - tms_tilde(i - 1, k - 1, n - 1, j - 1, table)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# Distinguishable-photon (classical) model


def c_coeff(i: int, k: int, j: int) -> int:
    """Counting coefficient of the classical general-j relation: the number
    of terms in the l sum. The branches agree on their overlaps."""
    if j < 0 or j > i + k:
        raise ValueError(f"j must lie in [0, {i + k}], got {j}")
    if j <= i and j <= k:
        return 1 + j
    if j >= i and j <= k:
        return 1 + i
    if j <= i and j >= k:
        return 1 + k
    return 1 - j + i + k


class ClassicalTable:
    """Distribution of distinguishable photons: each routes independently, so
    every row is a convolution of the two binomial rows. Rows are memoized."""

    def __init__(self, p: BeamSplitterParam, precision: str = "float"):
        self.param = p
        self.precision = precision
        self._eta = _eta_of(p, precision)
        self._rows: dict = {}

    def row(self, i: int, k: int) -> list:
        key = (i, k)
        if key not in self._rows:
            a = _bs_binomial_row(i, self._eta, mode_a=True)
            b = _bs_binomial_row(k, self._eta, mode_a=False)
            self._rows[key] = _convolve_full(a, b)
        return self._rows[key]

    def prob(self, i: int, k: int, n: int):
        if n < 0:
            return 0 * self._eta
        row = self.row(i, k)
        return row[n] if n < len(row) else 0 * self._eta


def classical_prob(i: int, k: int, n: int, p: BeamSplitterParam, precision: str = "float"):
    """p(n | i, k): convolution of the two binomial rows."""
    return ClassicalTable(p, precision).prob(i, k, n)


def classical_gf(x: float, y: float, z: float, p: BeamSplitterParam) -> float:
    """Generating function of the classical rows: the product of the two
    binomial-row generating functions (no interference cross term)."""
    eta, om = p.eta, 1.0 - p.eta
    da = 1.0 - eta * x * z - om * x
    db = 1.0 - eta * y - om * y * z
    return 1.0 / (da * db)


def classical_recurrence_check(i: int, k: int, n: int, j: int, p: BeamSplitterParam, precision: str = "float"):
    """Residual of the classical general-j relation with its 1/c(i,k,j)
    normalization; the interference term of the quantum form is absent."""
    c = c_coeff(i, k, j)  # validates j
    table = ClassicalTable(p, precision)
    total = table.prob(i, k, n) * 0
    for l in range(max(0, j - i), min(j, k) + 1):
        a = table.row(j - l, l)
        b = table.row(i - j + l, k - l)
        lo = max(0, n - (len(b) - 1))
        hi = min(n, len(a) - 1)
        for t in range(lo, hi + 1):
            total += a[t] * b[n - t]
    if precision == "rational":
        return abs(table.prob(i, k, n) - Fraction(total, c))
    return abs(table.prob(i, k, n) - total / c)
