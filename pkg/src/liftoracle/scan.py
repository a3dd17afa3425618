"""Enumeration of admissible upper-jump sequences and batch decisions."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import InputError, SearchBudgetExceeded
from .exactmath import make_group
from .lifting import decide
from .ramification import upper_to_lower, validate_obus_pries


@dataclass(frozen=True)
class ScanRange:
    """Upper jumps ``w_0 <= w0_max``; later jumps are ``p * w_prev`` or up to ``slack`` above it.

    With ``family_only`` just the geometric sequences ``w0, p w0, p^2 w0, ...``
    are produced.
    """

    p: int
    h: int
    m: int
    w0_max: int
    family_only: bool = True
    slack: int = 0
    alpha: Optional[int] = None
    a0: Optional[int] = None
    m_prime: int = 1

    def __post_init__(self):
        if self.w0_max < 0 or self.slack < 0:
            raise InputError("scan bounds must be non-negative", field="w0_max")


def enumerate_upper(rng: ScanRange) -> Iterator[Tuple[int, ...]]:
    """Admissible upper-jump sequences in lexicographic order."""
    p, m = rng.p, rng.m

    def tails(prefix: List[int]):
        if len(prefix) == rng.h:
            yield tuple(prefix)
            return
        prev = prefix[-1]
        options = [p * prev]
        if not rng.family_only:
            options += [w for w in range(p * prev + 1, p * prev + rng.slack + 1) if w % p]
        for w in options:
            if (w - prefix[0]) % m == 0:
                yield from tails(prefix + [w])

    for w0 in range(1, rng.w0_max + 1):
        if w0 % p == 0 or gcd(m, w0) != rng.m_prime:
            continue
        for upper in tails([w0]):
            if not validate_obus_pries(upper, p, m, rng.m_prime).valid:
                raise AssertionError(f"enumerated inadmissible sequence {upper}")
            yield upper


def _evaluate(args) -> Dict:
    rng, upper, budget, allow_trivial, cross_check = args
    spec = make_group(rng.p, rng.h, rng.m, rng.alpha, rng.a0)
    lower = upper_to_lower(upper, rng.p)
    record = {"upper_jumps": list(upper), "lower_jumps": lower}
    try:
        report = decide(spec, lower, allow_trivial, cross_check, budget)
    except SearchBudgetExceeded:
        record.update(decision="indeterminate")
        return record
    record.update(
        decision=report.decision,
        genus=report.diagnostics["genus"],
        kgb_vanishes=report.diagnostics["kgb_vanishes"],
        summands=report.diagnostics["summands"],
    )
    return record


def scan(
    rng: ScanRange,
    workers: int = 1,
    budget: Optional[int] = None,
    allow_trivial_eigenvalue: bool = False,
    cross_check: bool = False,
) -> Iterator[Dict]:
    """Decide every sequence in ``rng``; records come back in enumeration order."""
    make_group(rng.p, rng.h, rng.m, rng.alpha, rng.a0)  # fail fast on a bad group
    jobs = ((rng, upper, budget, allow_trivial_eigenvalue, cross_check) for upper in enumerate_upper(rng))
    if workers <= 1:
        yield from map(_evaluate, jobs)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_evaluate, jobs, chunksize=4)
