"""Jump sequences of the cyclic part ``C_q`` and the quantities derived from them.

Lower jumps ``b_k``, orbit counts ``i_k`` and upper jumps ``w_k`` determine
each other through::

    b_k + 1 = i_0 + i_1 p + ... + i_k p^k
    w_k     = i_0 + i_1 + ... + i_k - 1
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .errors import GenusInconsistencyError, InputError, InvalidJumpsError
from .exactmath import padic_digits


def _check_increasing(seq: Sequence[int], name: str) -> List[int]:
    seq = list(seq)
    if not seq:
        raise InvalidJumpsError(f"{name} jumps must be non-empty", field=name)
    for x in seq:
        if not isinstance(x, int) or isinstance(x, bool) or x <= 0:
            raise InvalidJumpsError(f"{name} jumps must be positive integers, got {x!r}", field=name)
    if any(b <= a for a, b in zip(seq, seq[1:])):
        raise InvalidJumpsError(f"{name} jumps must be strictly increasing: {seq}", field=name)
    return seq


def lower_to_upper(lower: Sequence[int], p: int) -> Tuple[List[int], List[int]]:
    """Return ``(orbit_counts, upper)`` for a lower jump list."""
    lower = _check_increasing(lower, "lower")
    counts = [lower[0] + 1]
    for k in range(1, len(lower)):
        step, rem = divmod(lower[k] - lower[k - 1], p**k)
        if rem or step <= 0:
            raise InvalidJumpsError(
                f"b_{k} - b_{k-1} = {lower[k] - lower[k - 1]} is not a positive multiple of p^{k} = {p**k}",
                field="lower",
            )
        counts.append(step)
    upper, running = [], 0
    for i in counts:
        running += i
        upper.append(running - 1)
    return counts, upper


def upper_to_lower(upper: Sequence[int], p: int) -> List[int]:
    upper = _check_increasing(upper, "upper")
    counts = [upper[0] + 1] + [b - a for a, b in zip(upper, upper[1:])]
    lower, running = [], 0
    for k, i in enumerate(counts):
        running += i * p**k
        lower.append(running - 1)
    return lower


@dataclass(frozen=True)
class JumpSequence:
    p: int
    lower: Tuple[int, ...]
    orbit_counts: Tuple[int, ...] = field(init=False)
    upper: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        counts, upper = lower_to_upper(self.lower, self.p)
        if self.lower[0] % self.p == 0:
            raise InvalidJumpsError(f"first lower jump {self.lower[0]} is divisible by p", field="lower")
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "orbit_counts", tuple(counts))
        object.__setattr__(self, "upper", tuple(upper))

    @property
    def h(self) -> int:
        return len(self.lower)

    @classmethod
    def from_lower(cls, lower, p):
        return cls(p=p, lower=tuple(lower))

    @classmethod
    def from_upper(cls, upper, p):
        return cls(p=p, lower=tuple(upper_to_lower(upper, p)))


@dataclass(frozen=True)
class ObusPriesReport:
    valid: bool
    violations: Tuple[Tuple[int, str], ...] = ()

    @property
    def clause(self) -> Optional[int]:
        return self.violations[0][0] if self.violations else None

    @property
    def clauses(self) -> Tuple[int, ...]:
        return tuple(c for c, _ in self.violations)


def validate_obus_pries(upper: Sequence[int], p: int, m: int, m_prime: int = 1) -> ObusPriesReport:
    """Check whether ``upper`` (the ``C_q`` upper jumps ``w_i``) occurs for ``C_q x| C_m``.

    All four clauses are evaluated and every violation is reported:

    1. each ``w_i`` is a positive integer;
    2. ``gcd(m, w_1) == m_prime``;
    3. ``p`` does not divide ``w_1``, and each later ``w_i`` equals
       ``p * w_{i-1}`` or exceeds it while being prime to ``p``;
    4. ``w_i == w_1 (mod m)``.
    """
    upper = list(upper)
    violations = []
    if not upper or any(not isinstance(w, int) or isinstance(w, bool) or w <= 0 for w in upper):
        return ObusPriesReport(False, ((1, f"upper jumps must be positive integers: {upper}"),))
    w1 = upper[0]
    if gcd(m, w1) != m_prime:
        violations.append((2, f"gcd(m, w_1) = gcd({m}, {w1}) = {gcd(m, w1)} != {m_prime}"))
    if w1 % p == 0:
        violations.append((3, f"p = {p} divides w_1 = {w1}"))
    for i in range(1, len(upper)):
        prev, w = upper[i - 1], upper[i]
        if w == p * prev:
            continue
        if not (w > p * prev and w % p != 0):
            violations.append((3, f"w_{i + 1} = {w}: neither {p}*{prev} nor a larger value prime to p"))
            break
    for i, w in enumerate(upper[1:], start=2):
        if (w - w1) % m:
            violations.append((4, f"w_{i} = {w} is not congruent to w_1 = {w1} mod {m}"))
            break
    return ObusPriesReport(not violations, tuple(violations))


@dataclass(frozen=True)
class KGBStatus:
    vanishes: bool
    upper_all_minus_one: Optional[bool]
    m_divides_orbit_counts: Optional[bool]
    explanation: str


def kgb_vanishes(lower: Sequence[int], m: int, p: Optional[int] = None) -> KGBStatus:
    """KGB test ``b_0 == -1 (mod m)``; with ``p`` the two equivalent conditions are reported too."""
    lower = list(lower)
    b0 = lower[0]
    vanishes = (b0 + 1) % m == 0
    upper_ok = counts_ok = None
    if p is not None:
        counts, upper = lower_to_upper(lower, p)
        upper_ok = all((w + 1) % m == 0 for w in upper)
        counts_ok = all(i % m == 0 for i in counts)
    rel = "==" if vanishes else "!="
    return KGBStatus(vanishes, upper_ok, counts_ok, f"b_0 = {b0}, b_0 + 1 mod m = {(b0 + 1) % m} ({rel} 0)")


def _h_for(seq, h):
    if h is None:
        return len(seq)
    if h != len(seq):
        raise InputError(f"expected {h} jumps, got {len(seq)}", field="h")
    return h


def _genus_from_twice(two_g: int, where: str) -> int:
    if two_g < 0 or two_g % 2:
        raise GenusInconsistencyError(f"{where}: 2g = {two_g} is not a non-negative even integer")
    return two_g // 2


def genus_special(lower: Sequence[int], p: int, h: Optional[int] = None) -> int:
    """Genus from the lower ramification filtration (special fibre Riemann-Hurwitz)."""
    h = _h_for(lower, h)
    q = p**h
    total = -2 * q + (lower[0] + 1) * (q - 1)
    for k in range(1, h):
        total += (lower[k] - lower[k - 1]) * (p ** (h - k) - 1)
    return _genus_from_twice(total + 2, "special fibre")


def genus_generic(orbit_counts: Sequence[int], p: int, h: Optional[int] = None) -> int:
    """Genus from the branch-point orbit counts (generic fibre Riemann-Hurwitz)."""
    h = _h_for(orbit_counts, h)
    if any(i <= 0 for i in orbit_counts):
        raise InvalidJumpsError("orbit counts must be positive", field="orbit_counts")
    q = p**h
    total = 2 - 2 * q + sum(i * p**k * (p ** (h - k) - 1) for k, i in enumerate(orbit_counts))
    return _genus_from_twice(total, "generic fibre")


def family_jumps(p: int, h: int, w0: int) -> List[int]:
    """Lower jumps of the sequence with upper jumps ``w0, p w0, p^2 w0, ...``."""
    if w0 <= 0 or gcd(w0, p) != 1:
        raise InputError(f"w0 = {w0} must be positive and prime to p", field="family_w0")
    return [w0 * (p ** (2 * l + 1) + 1) // (p + 1) for l in range(h)]


def b_value(j: int, lower: Sequence[int], p: int, h: Optional[int] = None) -> int:
    """``B(j) = sum_l a_l b_{l-1} p^{h-l}`` over the base-p digits ``a_l`` of ``j``."""
    h = _h_for(lower, h)
    digits = padic_digits(j, p, h)
    return sum(a * lower[l] * p ** (h - 1 - l) for l, a in enumerate(digits))


@dataclass(frozen=True)
class BProfile:
    jumps: JumpSequence
    B: Tuple[int, ...]

    @classmethod
    def build(cls, jumps: JumpSequence) -> "BProfile":
        p, h = jumps.p, jumps.h
        return cls(jumps, tuple(b_value(j, jumps.lower, p, h) for j in range(p**h)))

    @property
    def q(self) -> int:
        return len(self.B)

    @property
    def pi(self) -> Tuple[int, ...]:
        return tuple(b // self.q for b in self.B)

    @property
    def increasing(self) -> bool:
        return all(y > x for x, y in zip(self.B, self.B[1:]))


@dataclass(frozen=True)
class PiProfile:
    values: Tuple[int, ...]
    jumps: Tuple[int, ...]


def pi_profile(lower: Sequence[int], p: int, h: Optional[int] = None) -> PiProfile:
    h = _h_for(lower, h)
    q = p**h
    values = tuple(b_value(j, lower, p, h) // q for j in range(q))
    return PiProfile(values, tuple(j for j in range(1, q) if values[j] > values[j - 1]))
