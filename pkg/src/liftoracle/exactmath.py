"""Exact integer primitives: base-p digits, digit types, and the group data.

Everything here is plain ``int`` arithmetic. Python integers are unbounded, so
no value that appears downstream (``B(j)`` grows like ``p**(2h)``) can
overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import List, Tuple

from .errors import DigitRangeError, DomainError, InputError, InvalidGroupError, NoTypeError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> List[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(x: int, n: int) -> int:
    """Order of ``x`` in the unit group of ``Z/n``."""
    x %= n
    if gcd(x, n) != 1:
        raise DomainError(f"{x} is not a unit modulo {n}")
    if n == 1:
        return 1
    k, y = 1, x
    while y != 1:
        y = (y * x) % n
        k += 1
    return k


def smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise DomainError(f"no primitive root modulo {p}")  # unreachable for prime p


def teichmuller_lift(r: int, p: int, h: int) -> int:
    """The unique root of unity of order prime to ``p`` modulo ``p**h`` that reduces to ``r`` mod ``p``."""
    return pow(r % p, p ** (h - 1), p**h)


@dataclass(frozen=True)
class PadicDigits:
    digits: Tuple[int, ...]  # least significant first: digits[0] is a_1
    p: int

    @property
    def value(self) -> int:
        return sum(a * self.p**i for i, a in enumerate(self.digits))

    @property
    def h(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]


def padic_digits(j: int, p: int, h: int) -> PadicDigits:
    """Base-``p`` expansion of ``j`` with exactly ``h`` digits, least significant first."""
    if not 0 <= j < p**h:
        raise DigitRangeError(f"index {j} outside [0, {p}^{h})", field="j")
    out = []
    for _ in range(h):
        j, a = divmod(j, p)
        out.append(a)
    return PadicDigits(tuple(out), p)


def type_of_index(j: int, p: int, h: int) -> int:
    """Position (1-based) of the first digit of ``j`` below ``p - 1``."""
    digits = padic_digits(j, p, h)
    for s, a in enumerate(digits, start=1):
        if a < p - 1:
            return s
    raise NoTypeError(f"{j} = p^h - 1 has every digit equal to p - 1 and no type", field="j")


def resolve_a0(alpha: int, p: int, m: int) -> List[int]:
    """Exponents ``a0`` in ``[0, m)`` with ``alpha == zeta_m**a0`` in ``F_p``.

    When ``m | p - 1`` the root is pinned as ``zeta_m = g**((p-1)/m)`` for the
    smallest primitive root ``g`` mod ``p`` and the answer is unique. Otherwise
    ``zeta_m`` lives outside ``F_p`` and only the order of ``alpha`` mod ``p``
    is meaningful, so every exponent of that order is returned.
    """
    r = alpha % p
    if r == 0:
        raise DomainError(f"alpha = {alpha} is divisible by p = {p}", field="alpha")
    if (p - 1) % m == 0:
        zeta = pow(smallest_primitive_root(p), (p - 1) // m, p)
        hits = [a for a in range(m) if pow(zeta, a, p) == r]
    else:
        order = multiplicative_order(r, p)
        hits = [a for a in range(m) if m // gcd(m, a) == order]
    if not hits:
        raise DomainError(f"alpha = {alpha} is not an m-th root of unity modulo {p} (m = {m})", field="alpha")
    return hits


@dataclass(frozen=True)
class GroupSpec:
    """Parameters of ``C_q x| C_m`` with ``q = p**h`` and conjugation ``tau -> tau**alpha``.

    Construction only checks ranges and coprimality. The congruence
    ``alpha**m == 1 mod q`` is checked by :func:`validate_group`, so abstract
    module questions can still be posed with an arbitrary ``a0``.
    """

    p: int
    h: int
    m: int
    alpha: int
    a0: int
    q: int = field(init=False, repr=False)

    def __post_init__(self):
        for name in ("p", "h", "m", "alpha", "a0"):
            if not isinstance(getattr(self, name), int) or isinstance(getattr(self, name), bool):
                raise InvalidGroupError(f"{name} must be an integer", field=name)
        if self.p < 3 or not is_prime(self.p):
            raise InvalidGroupError(f"p = {self.p} must be an odd prime", field="p")
        if self.h < 1:
            raise InvalidGroupError(f"h = {self.h} must be positive", field="h")
        if self.m < 1 or gcd(self.m, self.p) != 1:
            raise InvalidGroupError(f"m = {self.m} must be positive and prime to p", field="m")
        q = self.p**self.h
        object.__setattr__(self, "q", q)
        if not 1 <= self.alpha <= q - 1 or self.alpha % self.p == 0:
            raise InvalidGroupError(f"alpha = {self.alpha} must lie in [1, q-1] and be prime to p", field="alpha")
        if not 0 <= self.a0 < self.m:
            raise InvalidGroupError(f"a0 = {self.a0} must lie in [0, m-1]", field="a0")

    @classmethod
    def dihedral(cls, p: int, h: int) -> "GroupSpec":
        return cls(p=p, h=h, m=2, alpha=p**h - 1, a0=1)

    @classmethod
    def from_alpha(cls, p: int, h: int, m: int, alpha: int, a0: int | None = None) -> "GroupSpec":
        if a0 is None:
            candidates = resolve_a0(alpha, p, m)
            if len(candidates) != 1:
                raise InputError(
                    f"a0 is not determined by alpha = {alpha} when m does not divide p - 1; "
                    f"candidates {candidates}, supply a0 explicitly",
                    field="a0",
                )
            a0 = candidates[0]
        return cls(p=p, h=h, m=m, alpha=alpha, a0=a0)

    @classmethod
    def from_a0(cls, p: int, h: int, m: int, a0: int) -> "GroupSpec":
        if (p - 1) % m != 0:
            raise InputError("alpha must be given explicitly when m does not divide p - 1", field="alpha")
        zeta = pow(smallest_primitive_root(p), (p - 1) // m, p)
        alpha = teichmuller_lift(pow(zeta, a0, p), p, h)
        return cls(p=p, h=h, m=m, alpha=alpha, a0=a0)


@dataclass(frozen=True)
class GroupDiagnostics:
    alpha_pow_m_mod_q: int
    order_mod_q: int
    faithful: bool
    a0_candidates: Tuple[int, ...]
    a0_consistent: bool

    def as_dict(self):
        return {
            "alpha_pow_m_mod_q": self.alpha_pow_m_mod_q,
            "order_mod_q": self.order_mod_q,
            "faithful": self.faithful,
            "a0_candidates": list(self.a0_candidates),
            "a0_consistent": self.a0_consistent,
        }


def validate_group(spec: GroupSpec) -> GroupDiagnostics:
    power = pow(spec.alpha, spec.m, spec.q)
    if power != 1 % spec.q:
        raise InvalidGroupError(
            f"alpha^m = {spec.alpha}^{spec.m} = {power} mod {spec.q}, not 1", field="alpha"
        )
    order = multiplicative_order(spec.alpha, spec.q)
    try:
        candidates = tuple(resolve_a0(spec.alpha, spec.p, spec.m))
    except DomainError:
        candidates = ()
    return GroupDiagnostics(
        alpha_pow_m_mod_q=power,
        order_mod_q=order,
        faithful=order == spec.m,
        a0_candidates=candidates,
        a0_consistent=spec.a0 in candidates,
    )


def make_group(p: int, h: int, m: int = 2, alpha: int | None = None, a0: int | None = None) -> GroupSpec:
    """Build a group from whatever subset of ``alpha``/``a0`` is known.

    With neither given, ``m = 2`` means the dihedral group and ``m = 1`` the
    cyclic one; larger ``m`` needs the conjugation data.
    """
    if alpha is not None and a0 is not None:
        return GroupSpec(p=p, h=h, m=m, alpha=alpha, a0=a0)
    if alpha is not None:
        return GroupSpec.from_alpha(p, h, m, alpha)
    if a0 is not None:
        return GroupSpec.from_a0(p, h, m, a0)
    if m == 2:
        return GroupSpec.dihedral(p, h)
    if m == 1:
        return GroupSpec(p=p, h=h, m=1, alpha=1, a0=0)
    raise InputError(f"m = {m} needs alpha or a0", field="alpha")
