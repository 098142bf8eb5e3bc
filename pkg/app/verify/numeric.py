"""
Floating-point cross-checks against the exact polynomials.

These are the only inexact checks: products of cosines for H_m^(s) and the
roots-of-unity product for G_m^(s), both compared with a relative tolerance.
"""

import logging
import os
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from app.core.genfun import g1_sequence, gms_poly, hms_poly
from app.core.polyring import Poly
from app.verify.checks import CheckReport

logger = logging.getLogger(__name__)

NUMERIC_RTOL = float(os.getenv("CHEBYGF_NUMERIC_RTOL", "1e-8"))

# Sample points for the complex check stay in the disc |x0| <= SAMPLE_RADIUS
SAMPLE_RADIUS = 2.0


def _close(a: complex, b: complex, rtol: float) -> bool:
    return abs(a - b) <= rtol * max(abs(a), abs(b), 1.0)


def _descending(p: Poly) -> np.ndarray:
    return np.array([float(c) for c in reversed(p.coeffs)], dtype=float)


def cosine_product(s: int, m: int, x0: float) -> float:
    """prod_{k=1..m} (x0 + 4^s cos^(2s)(k pi / (2m+1)))."""
    k = np.arange(1, m + 1)
    return float(np.prod(x0 + 4.0 ** s * np.cos(k * np.pi / (2 * m + 1)) ** (2 * s)))


def numeric_H_oracle(s: int, m: int, x0, rtol: float = NUMERIC_RTOL) -> CheckReport:
    """
    Compare H_m^(s)(x0) with the cosine product in double precision.

    Args:
        s (int): positive integer
        m (int): non-negative index
        x0: rational sample point
        rtol (float): relative tolerance

    Returns:
        CheckReport: a single-case report named ``numeric``
    """
    params = {"s": s, "m": m, "x0": str(x0)}
    exact = hms_poly(s, m)(Fraction(x0))
    approx = cosine_product(s, m, float(x0))
    if _close(float(exact), approx, rtol):
        return CheckReport("numeric", params, True, details={"value": str(exact)})
    logger.warning(f"numeric oracle off at {params}: {exact} vs {approx!r}")
    return CheckReport("numeric", params, False, {"params": params, "lhs": str(exact), "rhs": repr(approx)})


def sample_points(samples: int, seed: int = 0) -> np.ndarray:
    """``x0 = 1`` followed by uniform samples from the disc of radius 2."""
    rng = np.random.default_rng(seed)
    radius = SAMPLE_RADIUS * np.sqrt(rng.random(samples))
    angle = 2 * np.pi * rng.random(samples)
    return np.concatenate([[1.0 + 0j], radius * np.exp(1j * angle)])


def check_roots_of_unity(
    s: int,
    m: int,
    samples: int = 4,
    seed: int = 0,
    rtol: float = NUMERIC_RTOL,
    points: Optional[Sequence[complex]] = None,
) -> CheckReport:
    """G_m^(s)(x^s) = (-1)^(m(s-1)) prod_j G_m^(1)(eps^j x) at complex sample points."""
    params = {"s": s, "m": m}
    G1 = g1_sequence(m)[m]
    Gs = gms_poly(s, m, g1=G1)
    zs = np.asarray(points if points is not None else sample_points(samples, seed), dtype=complex)
    eps = np.exp(2j * np.pi / s)
    lhs = np.polyval(_descending(Gs), zs ** s)
    rhs = (-1) ** (m * (s - 1)) * np.prod(
        [np.polyval(_descending(G1), eps ** j * zs) for j in range(s)], axis=0
    )
    for z, a, b in zip(zs, lhs, rhs):
        if not _close(a, b, rtol):
            logger.warning(f"roots-of-unity product off at s={s}, m={m}, x0={z}")
            return CheckReport(
                "roots-of-unity",
                params,
                False,
                {"params": {**params, "x0": str(z)}, "lhs": str(a), "rhs": str(b)},
            )
    return CheckReport("roots-of-unity", params, True, details={"points": len(zs)})
