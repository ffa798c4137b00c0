"""Discrete-Fourier analysis of duality saturation.

A scenario saturates the minimum-error duality relation exactly when the
entropies of its coefficient distribution and of the squared-modulus DFT
spectrum add up to log2(N). The support-size product of a DFT pair is
bounded below by N (discrete uncertainty principle), the bound is attained
only by uniform coefficients on an equally spaced support, and the number of
subspace dimensions admitting nontrivial saturation is the divisor count of
N minus the two trivial ones. This module builds those supports, detects
saturation, classifies support structures, and brute-force scans all uniform
scenarios of a given path count.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .duality import shannon_entropy
from .states import (
    DetectorSpec,
    Support,
    ValidationError,
    build_symmetric_set,
    enumerate_uniform_specs,
    uniform_spec,
)

__all__ = [
    "SupportStructure",
    "SaturationReport",
    "dft_distribution",
    "saturating_spec",
    "is_saturating",
    "classify_support",
    "saturating_dimensions",
    "saturation_scan",
    "saturation_report",
    "schmidt_coefficients",
    "write_saturation_csv",
    "SATURATION_CSV_HEADER",
]

# |spectrum|^2 entries above this count toward the spectrum support; exact
# zeros from root-of-unity cancellation sit at ~1e-33 after squaring.
SPECTRUM_SUPPORT_ATOL = 1e-12

# Entropy sums within this of log2(N) count as saturating. Entropy is flat
# near its maximum, so this is looser than the matrix tolerances but far
# below the gap to the nearest non-saturating uniform support.
SATURATION_ATOL = 1e-9

# Enumeration budget: a full scan visits 2^N - 1 supports.
SCAN_MAX_PATHS = 24


class SupportStructure(str, Enum):
    """Cyclic-gap classification of a support."""

    EQUALLY_SPACED = "equally-spaced"
    UNEQUALLY_SPACED_ADJACENT = "unequally-spaced-adjacent"
    UNEQUALLY_SPACED_NONADJACENT = "unequally-spaced-nonadjacent"
    OTHER = "other"


def dft_distribution(spec: DetectorSpec) -> np.ndarray:
    """Squared-modulus DFT spectrum of the amplitude vector, as probabilities.

    Entry ``l`` is ``|sum_k a_k w^{kl}|^2 / N``. For real positive amplitudes
    this equals the xi = 0 conclusive conditional distribution entry by entry,
    and always sums to 1 (the amplitude vector is unit norm).
    """
    padded = np.zeros(spec.N, dtype=float)
    padded[list(spec.support.indices)] = spec.amplitudes
    spectrum = np.fft.ifft(padded) * math.sqrt(spec.N)
    return np.abs(spectrum) ** 2


def _divisors(n_paths: int) -> list[int]:
    return [d for d in range(1, n_paths + 1) if n_paths % d == 0]


def saturating_spec(N: int, m: int, tau: int) -> DetectorSpec:
    """Uniform scenario on the equally spaced support ``{tau + kappa*m}``.

    Requires ``m`` to divide ``N`` and ``0 <= tau < m``; the support has
    ``n = N/m`` indices with spacing ``m``, and the induced symmetric states
    attain the uncertainty-principle bound: their spectrum has exactly ``m``
    nonzero entries, each equal to ``n/N``.
    """
    if not isinstance(N, int) or isinstance(N, bool) or N < 2:
        raise ValidationError(f"path count must be an integer >= 2, got {N!r}")
    if not isinstance(m, int) or isinstance(m, bool) or m < 1 or N % m != 0:
        raise ValidationError(f"spacing {m!r} must be a positive divisor of {N}")
    if not isinstance(tau, int) or isinstance(tau, bool) or not 0 <= tau < m:
        raise ValidationError(f"offset must satisfy 0 <= tau < {m}, got {tau!r}")
    n = N // m
    return uniform_spec(N, tuple(tau + kappa * m for kappa in range(n)))


def is_saturating(spec: DetectorSpec) -> tuple[bool, float]:
    """Whether the coefficient and spectrum entropies add up to log2(N).

    Returns ``(saturating, entropy_sum)``; the sum can never fall below
    log2(N) beyond roundoff, so the check is a two-sided tolerance.
    """
    entropy_sum = shannon_entropy(spec.probabilities) + shannon_entropy(
        dft_distribution(spec)
    )
    return abs(entropy_sum - math.log2(spec.N)) <= SATURATION_ATOL, entropy_sum


def classify_support(support: Support) -> SupportStructure:
    """Classify a support by its cyclic gap multiset.

    Equal gaps (possible only when n divides N) are EQUALLY_SPACED. With two
    indices, a unit gap means ADJACENT, otherwise NONADJACENT. For larger
    unequally spaced supports: one contiguous cyclic run is ADJACENT, no two
    cyclically adjacent indices is NONADJACENT, anything mixed is OTHER.
    """
    gaps = support.cyclic_gaps()
    if len(set(gaps)) == 1:
        return SupportStructure.EQUALLY_SPACED
    if support.n == 2:
        if min(gaps) == 1:
            return SupportStructure.UNEQUALLY_SPACED_ADJACENT
        return SupportStructure.UNEQUALLY_SPACED_NONADJACENT
    if sum(1 for g in gaps if g > 1) == 1:
        return SupportStructure.UNEQUALLY_SPACED_ADJACENT
    if min(gaps) >= 2:
        return SupportStructure.UNEQUALLY_SPACED_NONADJACENT
    return SupportStructure.OTHER


def saturating_dimensions(N: int) -> tuple[list[int], int]:
    """Subspace dimensions admitting nontrivial saturation, plus their count.

    These are the divisors of N strictly between 1 and N, in ascending order;
    the count equals the divisor count of N minus 2, so it is zero exactly
    for prime N.
    """
    if not isinstance(N, int) or isinstance(N, bool) or N < 2:
        raise ValidationError(f"path count must be an integer >= 2, got {N!r}")
    divisors = _divisors(N)
    return [d for d in divisors if 1 < d < N], len(divisors) - 2


@dataclass(frozen=True, eq=False)
class SaturationReport:
    """Spectrum support data and the saturation verdict for one scenario."""

    spec: DetectorSpec
    lambda_sq: np.ndarray
    support_size: int
    lambda_support_size: int
    bound_ok: bool
    entropy_sum: float
    saturating: bool
    structure: SupportStructure


def saturation_report(spec: DetectorSpec) -> SaturationReport:
    """Spectrum, support sizes, uncertainty bound, and saturation flag."""
    lambda_sq = dft_distribution(spec)
    lambda_support = int((lambda_sq > SPECTRUM_SUPPORT_ATOL).sum())
    saturating, entropy_sum = is_saturating(spec)
    return SaturationReport(
        spec=spec,
        lambda_sq=lambda_sq,
        support_size=spec.n,
        lambda_support_size=lambda_support,
        bound_ok=spec.n * lambda_support >= spec.N,
        entropy_sum=entropy_sum,
        saturating=saturating,
        structure=classify_support(spec.support),
    )


def saturation_scan(N: int) -> list[SaturationReport]:
    """Reports for every uniform scenario of every subspace dimension.

    Visits all 2^N - 1 supports in (dimension, lexicographic) order; the
    saturating ones are exactly the equally spaced supports whose dimension
    divides N.
    """
    if not isinstance(N, int) or isinstance(N, bool) or N < 2:
        raise ValidationError(f"path count must be an integer >= 2, got {N!r}")
    if N > SCAN_MAX_PATHS:
        raise ValidationError(
            f"scan budget exceeded: N = {N} enumerates 2^{N} - 1 supports "
            f"(limit N <= {SCAN_MAX_PATHS})"
        )
    reports = []
    for n in range(1, N + 1):
        reports.extend(saturation_report(spec) for spec in enumerate_uniform_specs(N, n))
    return reports


def schmidt_coefficients(spec: DetectorSpec) -> np.ndarray:
    """Singular values of the joint path/detector amplitude matrix.

    The matrix has entry ``states[l, k] / sqrt(N)`` and its singular values
    are the Schmidt coefficients of the post-interaction pure state. For
    saturating scenarios exactly n of them equal ``1/sqrt(n)``.
    """
    states = build_symmetric_set(spec).states
    return np.linalg.svd(states / math.sqrt(spec.N), compute_uv=False)


SATURATION_CSV_HEADER = ["N", "n", "support", "lambda_support", "entropy_sum", "saturating", "structure"]


def write_saturation_csv(reports, fileobj) -> None:
    """Write reports as CSV rows (header included, LF line endings)."""
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(SATURATION_CSV_HEADER)
    for report in reports:
        writer.writerow(
            [
                report.spec.N,
                report.support_size,
                report.spec.support.label(),
                report.lambda_support_size,
                repr(report.entropy_sum),
                "true" if report.saturating else "false",
                report.structure.value,
            ]
        )
