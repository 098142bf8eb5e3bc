"""
Named check selectors and the runner behind ``verify``.
"""

import logging
from concurrent.futures import Executor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional

from app.core.errors import UsageError
from app.core.genfun import RatFun, compute_Fs
from app.verify import checks, numeric
from app.verify.checks import CheckReport

logger = logging.getLogger(__name__)

# Sample points of the cosine-product oracle
NUMERIC_POINTS = (0, 1, Fraction(1, 2), 2, 3)


@dataclass(frozen=True)
class Ranges:
    s_max: int = 4
    m_max: int = 8
    # discriminant pairs stay at s, m <= disc_max, plus (1, 5)
    disc_max: int = 3


def combine(name: str, params: dict, reports: Iterable[CheckReport]) -> CheckReport:
    """One report for a family of single-case reports: the first failure, if any."""
    reports = list(reports)
    for r in reports:
        if not r.passed:
            return CheckReport(name, params, False, r.counterexample, {"cases": len(reports)})
    return CheckReport(name, params, True, details={"cases": len(reports)})


def discriminant_pairs(r: Ranges) -> List[tuple]:
    top_s, top_m = min(r.s_max, r.disc_max), min(r.m_max, r.disc_max)
    pairs = [(s, m) for s in range(1, top_s + 1) for m in range(1, top_m + 1)]
    if r.m_max >= 5 and (1, 5) not in pairs:
        pairs.append((1, 5))
    return pairs


def _discriminant(r: Ranges, compute) -> CheckReport:
    pairs = discriminant_pairs(r)
    return combine("discriminant", {"pairs": len(pairs)}, (checks.check_discriminant(s, m) for s, m in pairs))


def _numeric(r: Ranges, compute) -> CheckReport:
    cases = (
        numeric.numeric_H_oracle(s, m, x0)
        for s in range(1, r.s_max + 1)
        for m in range(r.m_max + 1)
        for x0 in NUMERIC_POINTS
    )
    return combine("numeric", {"s_max": r.s_max, "m_max": r.m_max}, cases)


def _roots_of_unity(r: Ranges, compute) -> CheckReport:
    cases = (numeric.check_roots_of_unity(s, m) for s in range(1, r.s_max + 1) for m in range(r.m_max + 1))
    return combine("roots-of-unity", {"s_max": r.s_max, "m_max": r.m_max}, cases)


SELECTORS: Dict[str, Callable[[Ranges, Callable[[int], RatFun]], CheckReport]] = {
    "discriminant": _discriminant,
    "numeric": _numeric,
    "chebyshev": lambda r, compute: checks.check_chebyshev_relation(2 * r.m_max),
    "initial": lambda r, compute: checks.check_fact_initial(r.s_max),
    "nonneg": lambda r, compute: checks.check_fact_nonneg(r.s_max, r.m_max),
    "trace": lambda r, compute: checks.check_trace(r.s_max, r.m_max),
    "degrees": lambda r, compute: checks.check_fact_degrees(r.s_max, compute),
    "degree-identity": lambda r, compute: checks.check_degree_identity(max(r.s_max, 5)),
    "roots-of-unity": _roots_of_unity,
    "golden": lambda r, compute: checks.check_fs_golden(r.s_max, compute),
    "hadamard": lambda r, compute: checks.check_hadamard_s2(),
    "self-reciprocal": lambda r, compute: checks.check_self_reciprocal(r.s_max),
    "cs-bound": lambda r, compute: checks.check_cs_degree_bound(r.s_max),
}


def run_checks(
    selectors: Iterable[str],
    ranges: Ranges = Ranges(),
    executor: Optional[Executor] = None,
    compute: Callable[[int], RatFun] = compute_Fs,
) -> List[CheckReport]:
    """
    Run the named checks and return their reports sorted by name.

    Args:
        selectors (Iterable[str]): keys of ``SELECTORS``
        ranges (Ranges): parameter ranges
        executor (Executor, optional): pool the checks are spread over
        compute (Callable): how F_s is obtained (plain or cached)

    Returns:
        List[CheckReport]
    """
    names = list(dict.fromkeys(selectors))
    unknown = [n for n in names if n not in SELECTORS]
    if unknown:
        raise UsageError(f"unknown check(s): {', '.join(unknown)}")
    jobs = [(name, SELECTORS[name]) for name in names]

    def run(job):
        name, fn = job
        logger.debug(f"running check {name}")
        return fn(ranges, compute)

    if executor is None:
        reports = [run(job) for job in jobs]
    else:
        reports = list(executor.map(run, jobs))
    return sorted(reports, key=lambda r: r.sort_key)
