"""Independent oracles shared by the test modules.

The matrix-exponential oracle builds the device unitary on a truncated
two-mode Fock space straight from its generator, with no reference to any
closed form in the package, so it checks values and signs alike.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy.linalg import expm


def two_mode_unitary(dim: int, theta: float | None = None, r: float | None = None) -> np.ndarray:
    """exp(theta (a+b - a b+)) or exp(r (a+b+ - a b)) on a dim^2 Fock space."""
    a = np.diag(np.sqrt(np.arange(1.0, dim)), 1)
    eye = np.eye(dim)
    big_a = np.kron(a, eye)
    big_b = np.kron(eye, a)
    if theta is not None:
        gen = theta * (big_a.T @ big_b - big_a @ big_b.T)
    else:
        gen = r * (big_a.T @ big_b.T - big_a @ big_b)
    return expm(gen)


def bs_unitary(dim: int, eta: float) -> np.ndarray:
    return two_mode_unitary(dim, theta=math.acos(math.sqrt(eta)))

def tms_unitary(dim: int, lam: float) -> np.ndarray:
    return two_mode_unitary(dim, r=math.atanh(math.sqrt(lam)))


def element(u: np.ndarray, dim: int, n: int, m: int, i: int, k: int) -> float:
    """<n, m| U |i, k> from the flattened unitary."""
    return float(u[n * dim + m, i * dim + k])


def pascal_binomials(rows: int) -> list[list[int]]:
    """Pascal-triangle table, the textbook way, for use as an exact oracle."""
    tri = [[1]]
    for _ in range(rows):
        prev = tri[-1]
        tri.append([1] + [prev[j - 1] + prev[j] for j in range(1, len(prev))] + [1])
    return tri


def prob_double_sum_literal(i: int, k: int, n: int, eta: Fraction) -> Fraction:
    """The boxed probability double sum typed out with bare factorials."""
    total = Fraction(0)
    lo, hi = max(0, n - k), min(i, n)
    if n > i + k:
        return total
    f = math.factorial
    for m in range(lo, hi + 1):
        for j in range(lo, hi + 1):
            coeff = (
                f(i) // (f(m) * f(i - m))
                * (f(k) // (f(n - m) * f(k - n + m)))
                * (f(n) // (f(j) * f(n - j)))
                * (f(i + k - n) // (f(i - j) * f(k - n + j)))
            )
            term = coeff * eta ** (k - n + m + j) * (1 - eta) ** (i + n - m - j)
            total += -term if (m + j) % 2 else term
    return total
