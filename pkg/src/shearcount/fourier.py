"""Cosine spectrum of the oscillatory part and Parseval evaluation of its
mean square over one shear period.

Expanding each sawtooth in the oscillatory sum into its sine series and
collecting terms with equal cosine frequency k = m*n gives

    osc(x) = sum_{k >= 1} c_k cos(2*pi*k*x),
    c_k = (4/pi) * sum_{m*n = k, 0 < m < T/sqrt(y), 1 <= n <= n_max}
              sin(2*pi*n*hw_m) / n,

a finite divisor sum per coefficient (hw_m is the row half-width).  Distinct
cosine frequencies are orthogonal on [0, 1], so the mean square of the
retained part is half the sum of squared coefficients; the n > n_max tail is
controlled in L2 and reported as an explicit bound.

:func:`mean_square_certificate` is the fully explicit counterpart of the
same mean square: it splits the series at a cutoff, applies Cauchy-Schwarz
to each half with exact harmonic-number constants, and evaluates the
orthogonality sums directly, yielding a rigorous upper bound for the true
integral of osc**2 at every cutoff.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, RangeExceeded
from .lattice import ShearPoint, halfwidths, row_limit, scaled_radius, shear_mod_one
from .numerics import compensated_sum

__all__ = [
    "FourierSpectrum",
    "cosine_spectrum",
    "parseval_mean_square",
    "oscillatory_partial_sum",
    "mean_square_certificate",
    "auto_truncation",
    "write_spectrum_csv",
    "read_spectrum_csv",
]

_FOUR_OVER_PI = 4.0 / math.pi

#: Hard ceiling on the coefficient array length (256 MiB of float64).
MAX_COEFFICIENTS = 1 << 25


@dataclass(frozen=True)
class FourierSpectrum:
    """Cosine coefficients c_1..c_k_max of the oscillatory part.

    n_max is the largest sawtooth harmonic retained in each divisor sum and
    l2_truncation_bound bounds the L2(dx) norm of the discarded n > n_max
    part (it decreases as n_max grows, and is 0 when no rows are occupied).
    """

    k_max: int
    coeffs: np.ndarray
    n_max: int
    l2_truncation_bound: float


def _rows(y: float, T: float) -> tuple[int, np.ndarray, float]:
    scaled = scaled_radius(y, T)
    M = row_limit(scaled)
    if M == 0:
        return 0, np.empty(0), scaled
    ms = np.arange(1, M + 1, dtype=float)
    return M, halfwidths(y, T, ms), scaled


def _tail_l2_bound(scaled: float, rows: int, n_max: int) -> float:
    if rows == 0:
        return 0.0
    # sum_{n > n_max} n**-2 <= 1/(n_max - 1) for n_max >= 2
    tail = 1.0 if n_max < 2 else 1.0 / (n_max - 1)
    return _FOUR_OVER_PI * math.sqrt(scaled * 0.5 * tail)


def cosine_spectrum(y: float, T: float, k_max: int, n_max: int) -> FourierSpectrum:
    """Divisor-sum coefficients for frequencies k = 1..k_max.

    Rows are visited in increasing m, each contributing to the arithmetic
    progression k = m, 2m, 3m, ... via one vectorized stride update, so the
    total work is the number of retained (m, n) pairs and the summation
    order is fixed (bit-reproducible results).
    """
    if not (y > 0 and T > 0):
        raise InvalidParameter(f"need y > 0 and T > 0, got y={y}, T={T}")
    if k_max < 1 or n_max < 1 or k_max != int(k_max) or n_max != int(n_max):
        raise InvalidParameter(f"k_max and n_max must be positive integers, got {k_max}, {n_max}")
    if k_max > MAX_COEFFICIENTS:
        raise RangeExceeded(f"k_max={k_max} exceeds the supported {MAX_COEFFICIENTS}")
    k_max, n_max = int(k_max), int(n_max)
    M, hw, scaled = _rows(y, T)
    coeffs = np.zeros(k_max)
    for m in range(1, min(M, k_max) + 1):
        n = np.arange(1, min(n_max, k_max // m) + 1, dtype=float)
        coeffs[int(m) * np.arange(1, n.size + 1) - 1] += (
            _FOUR_OVER_PI * np.sin(2.0 * math.pi * n * hw[m - 1]) / n
        )
    return FourierSpectrum(
        k_max=k_max,
        coeffs=coeffs,
        n_max=n_max,
        l2_truncation_bound=_tail_l2_bound(scaled, M, n_max),
    )


def parseval_mean_square(y: float, T: float, k_max: int, n_max: int) -> tuple[float, float]:
    """(value, error_bound) with value = 0.5 * sum of squared coefficients.

    error_bound controls |integral of osc**2 over one period - value| via the
    triangle inequality in L2: the n > n_max tail uses the spectrum's bound,
    and any retained (m, n) pair whose frequency m*n exceeds k_max (callers
    are advised to keep k_max >= n_max * floor(T/sqrt(y)) so there are none)
    is accumulated exactly and added to the truncation radius.
    """
    spectrum = cosine_spectrum(y, T, k_max, n_max)
    value = 0.5 * compensated_sum(spectrum.coeffs**2)

    dropped = 0.0
    M, hw, _ = _rows(y, T)
    if M > 0 and M * n_max > k_max:
        ks, amps = [], []
        for m in range(1, M + 1):
            n_lo = k_max // m + 1
            if n_lo > n_max:
                continue
            n = np.arange(n_lo, n_max + 1, dtype=float)
            ks.append(m * n.astype(np.int64))
            amps.append(_FOUR_OVER_PI * np.sin(2.0 * math.pi * n * hw[m - 1]) / n)
        if ks:
            k_all = np.concatenate(ks)
            a_all = np.concatenate(amps)
            uniq, inv = np.unique(k_all, return_inverse=True)
            sums = np.bincount(inv, weights=a_all, minlength=uniq.size)
            dropped = math.sqrt(0.5 * compensated_sum(sums**2))

    eps = spectrum.l2_truncation_bound + dropped
    error_bound = 2.0 * math.sqrt(max(value, 0.0)) * eps + eps * eps
    return value, error_bound


def oscillatory_partial_sum(z: ShearPoint, T: float, n_max: int) -> float:
    """The doubly truncated series at the given shear coordinate.

    Converges pointwise to :func:`shearcount.formula.oscillatory_sum` as
    n_max grows, at every x where no sawtooth argument is an integer.
    """
    if n_max < 1 or n_max != int(n_max):
        raise InvalidParameter(f"n_max must be a positive integer, got {n_max}")
    if not T > 0:
        raise InvalidParameter(f"radius must satisfy T > 0, got T={T}")
    M, hw, _ = _rows(z.y, T)
    if M == 0:
        return 0.0
    n = np.arange(1, int(n_max) + 1, dtype=float)
    x = shear_mod_one(z.x)
    total = 0.0
    for m in range(1, M + 1):
        terms = np.sin(2.0 * math.pi * n * hw[m - 1]) * np.cos(2.0 * math.pi * m * n * x) / n
        total += compensated_sum(terms)
    return _FOUR_OVER_PI * total


def mean_square_certificate(y: float, T: float, cutoff: int) -> float:
    """Explicit upper bound for the period mean square of the oscillatory part.

    Splitting the sawtooth harmonics at the cutoff A and bounding the two
    halves separately (Cauchy-Schwarz over n <= A with the exact harmonic
    number, Cauchy-Schwarz over rows for n > A), then integrating with the
    exact orthogonality sums, gives

        2*(16/pi**2) * [ H_A * sum_{n<=A} (1/n) * (1/2) sum_m sin^2(2 pi n hw_m)
                         + (T/sqrt(y)) * sum_m (1/2) sum_{n>A} sin^2(2 pi n hw_m) / n^2 ].

    The inner n > A sums are evaluated exactly up to n = 10*A and the rest is
    bounded by the integral remainder 1/(10*A), so the result dominates the
    true integral for every cutoff.
    """
    if cutoff != int(cutoff) or cutoff < 2:
        raise InvalidParameter(f"cutoff must be an integer >= 2, got {cutoff}")
    if not (y > 0 and T > 0):
        raise InvalidParameter(f"need y > 0 and T > 0, got y={y}, T={T}")
    A = int(cutoff)
    M, hw, scaled = _rows(y, T)
    if M == 0:
        return 0.0

    chunk = max(1, (1 << 22) // M)
    two_pi_hw = 2.0 * math.pi * hw

    harmonic = float(np.sum(1.0 / np.arange(1, A + 1)))
    head = 0.0
    for start in range(1, A + 1, chunk):
        n = np.arange(start, min(A, start + chunk - 1) + 1, dtype=float)
        sin2 = np.sin(np.outer(n, two_pi_hw)) ** 2
        head += float(np.sum(sin2.sum(axis=1) / n))
    head *= 0.5

    tail_sin = 0.0
    for start in range(A + 1, 10 * A + 1, chunk):
        n = np.arange(start, min(10 * A, start + chunk - 1) + 1, dtype=float)
        sin2 = np.sin(np.outer(n, two_pi_hw)) ** 2
        tail_sin += float(np.sum(sin2.sum(axis=1) / (n * n)))
    tail = 0.5 * (tail_sin + M / (10.0 * A))

    return 2.0 * _FOUR_OVER_PI**2 * (harmonic * head + scaled * tail)


def auto_truncation(y: float, T: float, rel_target: float = 0.01) -> tuple[int, int]:
    """Pick (k_max, n_max) for :func:`parseval_mean_square`.

    Ensures the truncation is at most 0.1% of the certificate bound, then
    refines once so the reported error bound undercuts ``rel_target`` of the
    measured value whenever the value exceeds 0.1.  k_max is always
    n_max * (number of rows), so no retained pair is dropped.
    """
    M, _, scaled = _rows(y, T)
    if M == 0:
        return 1, 1
    cert = mean_square_certificate(y, T, max(2, int(math.ceil(scaled))))
    target = 1e-3 * cert
    n1 = 2 + int((8.0 / math.pi**2) * scaled / (target * target)) if target > 0 else 64
    n1 = min(max(n1, 64), 1 << 18, MAX_COEFFICIENTS // M)
    value, _ = parseval_mean_square(y, T, n1 * M, n1)
    if value <= 0.1:
        return n1 * M, n1
    # 0.9 safety margin keeps the refined bound clear of the target
    eps_target = 0.9 * (math.sqrt(value * (1.0 + rel_target)) - math.sqrt(value))
    n2 = 2 + int((8.0 / math.pi**2) * scaled / (eps_target * eps_target))
    n2 = min(max(n1, n2), MAX_COEFFICIENTS // M)
    return n2 * M, n2


def write_spectrum_csv(spectrum: FourierSpectrum, stream) -> None:
    """Rows ``k,c_k`` followed by a comment line with the truncation bound."""
    stream.write("k,c_k\n")
    for k in range(1, spectrum.k_max + 1):
        stream.write(f"{k},{float(spectrum.coeffs[k - 1])!r}\n")
    stream.write(f"# l2_truncation_bound={float(spectrum.l2_truncation_bound)!r}\n")


def read_spectrum_csv(stream) -> tuple[np.ndarray, float]:
    """Inverse of :func:`write_spectrum_csv`; returns (coeffs, l2 bound)."""
    header = stream.readline().strip()
    if header != "k,c_k":
        raise InvalidParameter(f"unexpected spectrum header {header!r}")
    coeffs = []
    bound = 0.0
    for line in stream:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, val = line.lstrip("# ").partition("=")
            if key == "l2_truncation_bound":
                bound = float(val)
            continue
        k_str, _, c_str = line.partition(",")
        k = int(k_str)
        if k != len(coeffs) + 1:
            raise InvalidParameter(f"non-contiguous frequency index {k}")
        coeffs.append(float(c_str))
    return np.asarray(coeffs), bound
