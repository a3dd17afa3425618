"""Decomposition of the holomorphic differentials into indecomposable modules.

The cover is the HKG shape: one totally wildly ramified point over
``P_inf``, so the divisor ``D_j`` on the quotient line is ``d_j * P_inf`` and
``H^0(P^1, Omega(D_j))`` has basis ``x^nu dx`` for ``0 <= nu <= d_j - 2``.
``x^nu dx`` spans a copy of the simple module ``S_{nu+1 mod m}``.

Indecomposables are labelled two ways. ``U_{mu,kappa}`` has socle ``S_mu`` and
dimension ``kappa``. ``V(lambda,kappa)`` is the same module labelled by the
character on its top generator. They are related by
``mu = lambda + a0 (kappa - 1) mod m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import ConsistencyError, InputError
from .exactmath import GroupSpec, PadicDigits, padic_digits
from .ramification import JumpSequence, b_value

Jumps = Union[JumpSequence, Sequence[int]]


def _lower(jumps: Jumps) -> Tuple[int, ...]:
    return tuple(jumps.lower) if isinstance(jumps, JumpSequence) else tuple(jumps)


def _degree_from_digits(digits: PadicDigits, lower: Sequence[int], p: int) -> int:
    h = len(lower)
    total = sum(p ** (h - 1 - l) * (p - 1 + (p - 1 - a) * lower[l]) for l, a in enumerate(digits))
    return total // p**h


def _degree_from_b(j: int, lower: Sequence[int], p: int) -> int:
    h = len(lower)
    q = p**h
    return (q - 1 + b_value(q - 1, lower, p, h) - b_value(j, lower, p, h)) // q


def divisor_degree(j: int, lower: Jumps, p: int, h: Optional[int] = None) -> int:
    """Coefficient ``d_j`` of ``D_j`` at the wild point, evaluated two ways and compared."""
    lower = _lower(lower)
    if h is not None and h != len(lower):
        raise InputError(f"expected {h} jumps, got {len(lower)}", field="h")
    direct = _degree_from_digits(padic_digits(j, p, len(lower)), lower, p)
    via_b = _degree_from_b(j, lower, p)
    if direct != via_b:
        raise ConsistencyError(f"d_{j}: digit formula gives {direct}, B-difference gives {via_b}")
    return direct


def simple_counts(d: int, m: int) -> List[int]:
    """Multiplicities ``n_l`` of ``S_l`` in ``H^0(P^1, Omega(d P_inf))`` for ``l = 0..m-1``."""
    if d <= 1:
        return [0] * m
    full = (d - 1) // m
    leftover = d - 2 - m * full
    return [full + (1 if (l - 1) % m <= leftover else 0) for l in range(m)]


@dataclass(frozen=True)
class DifferentialRow:
    j: int
    digits: PadicDigits
    B: int
    d: int
    n: Tuple[int, ...]


@dataclass(frozen=True)
class DifferentialTable:
    p: int
    h: int
    m: int
    lower: Tuple[int, ...]
    rows: Tuple[DifferentialRow, ...]

    @property
    def q(self) -> int:
        return len(self.rows)

    @property
    def degrees(self) -> List[int]:
        return [r.d for r in self.rows]

    @property
    def monotone(self) -> bool:
        d = self.degrees
        return all(y <= x for x, y in zip(d, d[1:]))

    def differences(self, j: int) -> Optional[Tuple[int, ...]]:
        """``n_{j-1,l} - n_{j,l}``; ``None`` for the first row."""
        if j == 0:
            return None
        prev, cur = self.rows[j - 1].n, self.rows[j].n
        return tuple(a - b for a, b in zip(prev, cur))

    @property
    def dimension_sum(self) -> int:
        return sum(max(r.d - 1, 0) for r in self.rows)


def differential_table(lower: Jumps, p: int, m: int) -> DifferentialTable:
    lower = _lower(lower)
    h = len(lower)
    q = p**h
    b_values = [b_value(j, lower, p, h) for j in range(q)]
    top = b_values[q - 1]
    rows = []
    for j in range(q):
        digits = padic_digits(j, p, h)
        d = _degree_from_digits(digits, lower, p)
        if d != (q - 1 + top - b_values[j]) // q:
            raise ConsistencyError(f"d_{j}: the two evaluations disagree")
        n = tuple(simple_counts(d, m))
        if sum(n) != max(d - 1, 0):
            raise ConsistencyError(f"row {j}: simple counts {n} do not sum to d - 1")
        rows.append(DifferentialRow(j, digits, b_values[j], d, n))
    if rows[-1].d != 0:
        raise ConsistencyError(f"d_(q-1) = {rows[-1].d}, expected 0")
    return DifferentialTable(p, h, m, lower, tuple(rows))


def u_to_v(mu: int, kappa: int, m: int, a0: int) -> Tuple[int, int]:
    _check_label(mu, kappa, m)
    return (mu - a0 * (kappa - 1)) % m, kappa


def v_to_u(lam: int, kappa: int, m: int, a0: int) -> Tuple[int, int]:
    _check_label(lam, kappa, m)
    return (lam + a0 * (kappa - 1)) % m, kappa


def _check_label(label, kappa, m):
    if not 0 <= label < m:
        raise InputError(f"character label {label} outside [0, {m})", field="socle")
    if kappa < 1:
        raise InputError(f"dimension {kappa} must be positive", field="dim")


@dataclass(frozen=True)
class ModuleMultiset:
    """Multiset of indecomposables, keyed by ``(label, dim)``.

    ``label`` is the socle in U-notation and the top character in V-notation.
    Entries are stored sorted by ``(dim, label)`` with zero multiplicities
    dropped, so two equal multisets compare equal.
    """

    m: int
    q: int
    entries: Tuple[Tuple[Tuple[int, int], int], ...]
    notation: str = "U"

    @classmethod
    def from_counts(cls, m: int, q: int, counts: Mapping[Tuple[int, int], int], notation: str = "U"):
        if notation not in ("U", "V"):
            raise InputError(f"unknown notation {notation!r}", field="notation")
        clean = {}
        for (label, dim), mult in counts.items():
            if mult < 0:
                raise ConsistencyError(f"negative multiplicity {mult} for {notation}({label},{dim})")
            if not 0 <= label < m or not 1 <= dim <= q:
                raise InputError(f"module {notation}({label},{dim}) out of range for m={m}, q={q}", field="modules")
            if mult:
                clean[(label, dim)] = clean.get((label, dim), 0) + mult
        items = tuple(sorted(clean.items(), key=lambda kv: (kv[0][1], kv[0][0])))
        return cls(m, q, items, notation)

    @classmethod
    def from_instances(cls, m: int, q: int, instances: Iterable[Tuple[int, int]], notation: str = "U"):
        counts: Dict[Tuple[int, int], int] = {}
        for inst in instances:
            counts[tuple(inst)] = counts.get(tuple(inst), 0) + 1
        return cls.from_counts(m, q, counts, notation)

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return dict(self.entries)

    def mult(self, label: int, dim: int) -> int:
        return self.as_dict().get((label, dim), 0)

    def instances(self) -> List[Tuple[int, int]]:
        return [key for key, mult in self.entries for _ in range(mult)]

    @property
    def size(self) -> int:
        return sum(mult for _, mult in self.entries)

    @property
    def total_dimension(self) -> int:
        return sum(dim * mult for (_, dim), mult in self.entries)

    def __len__(self):
        return self.size

    def to_v(self, a0: int) -> "ModuleMultiset":
        if self.notation == "V":
            return self
        conv = {u_to_v(mu, k, self.m, a0): mult for (mu, k), mult in self.entries}
        return ModuleMultiset.from_counts(self.m, self.q, conv, "V")

    def to_u(self, a0: int) -> "ModuleMultiset":
        if self.notation == "U":
            return self
        conv = {v_to_u(lam, k, self.m, a0): mult for (lam, k), mult in self.entries}
        return ModuleMultiset.from_counts(self.m, self.q, conv, "U")

    def issubset(self, other: "ModuleMultiset") -> bool:
        theirs = other.as_dict()
        return self.notation == other.notation and all(theirs.get(k, 0) >= v for k, v in self.entries)

    def __str__(self):
        body = ", ".join(
            f"{self.notation}({a},{b})" + (f"^{mult}" if mult > 1 else "") for (a, b), mult in self.entries
        )
        return "{" + body + "}"


def decompose_table(table: DifferentialTable) -> ModuleMultiset:
    """``mult(a, b) = n_{b-1,a} - n_{b,a}`` for ``b < q`` and ``mult(a, q) = n_{q-1,a}``."""
    q, m = table.q, table.m
    counts = {}
    for b in range(1, q):
        prev, cur = table.rows[b - 1].n, table.rows[b].n
        for a in range(m):
            diff = prev[a] - cur[a]
            if diff < 0:
                raise ConsistencyError(
                    f"negative multiplicity {diff} for U({a},{b}); degrees are not monotone at j = {b}"
                )
            counts[(a, b)] = diff
    for a in range(m):
        counts[(a, q)] = table.rows[q - 1].n[a]
    return ModuleMultiset.from_counts(m, q, counts, "U")


def decompose(spec: GroupSpec, lower: Jumps) -> ModuleMultiset:
    lower = _lower(lower)
    if len(lower) != spec.h:
        raise InputError(f"group has h = {spec.h} but {len(lower)} lower jumps were given", field="lower_jumps")
    return decompose_table(differential_table(lower, spec.p, spec.m))


def dimension_check(ms: ModuleMultiset, g: int, table: Optional[DifferentialTable] = None) -> bool:
    if ms.total_dimension != g:
        return False
    return table is None or table.dimension_sum == g
