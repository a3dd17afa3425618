"""Liftability of a module decomposition.

A multiset of indecomposables ``V(lambda_i, kappa_i)`` lifts iff it can be
partitioned into groups such that, for one global ``a in {0, 1}``:

a. the dimensions in each group sum to at most ``q``;
b. the dimensions in each group sum to ``a`` modulo ``m``;
c. each group can be ordered so that consecutive members satisfy
   ``lambda_next = lambda_prev + a0 * kappa_prev (mod m)``.

Geometric lifts force ``a = 0``. Read each module as an edge
``lambda -> lambda + a0 kappa`` on ``Z/m``. Then condition (c) asks for a
trail through the edges of the group, and for ``a = 0`` that trail closes up.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .differentials import ModuleMultiset, decompose, differential_table
from .errors import (
    BruteForceCapError,
    ConsistencyError,
    SearchBudgetExceeded,
    TheoremViolation,
    WrongCriterionError,
)
from .exactmath import GroupSpec, validate_group
from .ramification import JumpSequence, family_jumps, genus_generic, genus_special, kgb_vanishes

Instance = Tuple[int, int]  # (lambda, kappa), V-notation

DEFAULT_BUDGET = 2_000_000
BRUTE_FORCE_CAP = 10
WITNESS_MINIMIZE_LIMIT = 40


def default_budget() -> int:
    raw = os.environ.get("LIFTORACLE_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class PartitionCertificate:
    groups: Tuple[Tuple[Instance, ...], ...]
    a: int = 0

    def as_json(self):
        return [[{"lambda": lam, "kappa": k} for lam, k in g] for g in self.groups]


@dataclass(frozen=True)
class LiftReport:
    liftable: bool
    certificate: Optional[PartitionCertificate] = None
    witness: Optional[ModuleMultiset] = None
    diagnostics: Dict = field(default_factory=dict)
    method: str = ""
    modules: Optional[ModuleMultiset] = None

    def __post_init__(self):
        if self.liftable != (self.certificate is not None):
            raise ConsistencyError("a certificate must be present exactly when the decision is liftable")

    @property
    def decision(self) -> str:
        return "liftable" if self.liftable else "not-liftable"


def _canonical(groups) -> Tuple[Tuple[Instance, ...], ...]:
    return tuple(sorted(tuple(g) for g in groups))


def verify_certificate(cert: PartitionCertificate, ms: ModuleMultiset, spec: GroupSpec) -> bool:
    """Independent check of conditions a-c and exact exhaustion of ``ms``."""
    m, q, a0 = spec.m, spec.q, spec.a0
    if cert.a not in (0, 1):
        return False
    target = ms.to_v(a0).as_dict()
    used: Dict[Instance, int] = {}
    for group in cert.groups:
        if not group:
            return False
        total = sum(k for _, k in group)
        if total > q or total % m != cert.a:
            return False
        for (lam, k), (nxt, _) in zip(group, group[1:]):
            if (lam + a0 * k) % m != nxt:
                return False
        if cert.a == 0:
            lam, k = group[-1]
            if (lam + a0 * k) % m != group[0][0]:
                return False
        for inst in group:
            used[tuple(inst)] = used.get(tuple(inst), 0) + 1
    return used == target


# -- dihedral matcher -------------------------------------------------------------


def dihedral_decide(ms: ModuleMultiset, q: Optional[int] = None) -> LiftReport:
    """Complementary pairing for ``D_q`` (``m = 2``, ``a0 = 1``).

    Even-dimensional summands lift alone. Odd ones must be matched across
    socles with ``d + d' <= q``. For a threshold rule like this, pairing the
    socle-0 side ascending against the socle-1 side descending finds a perfect
    matching whenever one exists.
    """
    if ms.m != 2:
        raise WrongCriterionError(f"the complementary criterion needs m = 2, got m = {ms.m}", field="m")
    q = ms.q if q is None else q
    ms = ms.to_u(1)
    groups: List[Tuple[Instance, ...]] = []
    side0, side1 = [], []
    for mu, k in ms.instances():
        if k % 2 == 0:
            groups.append((((mu - (k - 1)) % 2, k),))
        elif mu == 0:
            side0.append(k)
        else:
            side1.append(k)
    side0.sort()
    side1.sort(reverse=True)
    diag = {"odd_socle0": len(side0), "odd_socle1": len(side1)}
    if len(side0) != len(side1):
        short = abs(len(side0) - len(side1))
        socle, larger = (0, side0) if len(side0) > len(side1) else (1, side1)
        surplus = sorted(larger, reverse=True)[:short]
        witness = ModuleMultiset.from_instances(2, q, [(socle, k) for k in surplus])
        diag["reason"] = "odd summands with socle 0 and socle 1 differ in number"
        return LiftReport(False, witness=witness, diagnostics=diag, method="dihedral-matching")
    for i, (d0, d1) in enumerate(zip(side0, side1)):
        if d0 + d1 > q:
            witness = ModuleMultiset.from_instances(2, q, [(0, d0), (1, d1)])
            # every socle-0 summand from i on is too big for every socle-1 partner up to i
            blocking = [(0, d) for d in side0[i:]] + [(1, d) for d in side1[i:]]
            diag["reason"] = f"U(0,{d0}) and U(1,{d1}) exceed q = {q} at matching position {i}"
            diag["hall_violator"] = ModuleMultiset.from_instances(2, q, blocking)
            return LiftReport(False, witness=witness, diagnostics=diag, method="dihedral-matching")
        groups.append(((0, d0), (1, d1)))
    cert = PartitionCertificate(_canonical(groups), 0)
    return LiftReport(True, certificate=cert, diagnostics=diag, method="dihedral-matching")


def split_dihedral_certificate(cert: PartitionCertificate, q: int) -> PartitionCertificate:
    """Rewrite a valid ``m = 2`` certificate as even singletons plus odd pairs."""
    if cert.a != 0:
        raise ConsistencyError("only a = 0 certificates split into complementary pairs")
    groups = []
    for group in cert.groups:
        odd = [inst for inst in group if inst[1] % 2]
        groups.extend((inst,) for inst in group if inst[1] % 2 == 0)
        if len(odd) % 2:
            raise ConsistencyError(f"group {group} has an odd number of odd summands")
        for first, second in zip(odd[::2], odd[1::2]):
            if first[0] == second[0] or first[1] + second[1] > q:
                raise ConsistencyError(f"cannot split {group} into complementary pairs")
            groups.append((first, second))
    return PartitionCertificate(_canonical(groups), 0)


# -- general partition search -----------------------------------------------------


class _PartitionSearch:
    """Backtracking over groups with a canonical start.

    Types are ordered by descending dimension. Each new group contains the
    first type with remaining multiplicity. For ``a = 0`` the group may be
    rotated to start there. For ``a = 1`` it is grown forwards and then
    backwards around it. Remaining multisets that failed once are memoized.
    """

    def __init__(self, counts: Dict[Instance, int], q: int, m: int, a0: int, a: int, budget: int):
        self.types = sorted(counts, key=lambda t: (-t[1], t[0]))
        self.lam = [t[0] for t in self.types]
        self.kappa = [t[1] for t in self.types]
        self.end = [(t[0] + a0 * t[1]) % m for t in self.types]
        self.start_counts = [counts[t] for t in self.types]
        self.q, self.m, self.a0, self.a = q, m, a0, a
        self.budget = budget
        self.nodes = 0
        self.failed = set()
        self.by_start: Dict[int, List[int]] = {}
        self.by_end: Dict[int, List[int]] = {}
        for i, t in enumerate(self.types):
            self.by_start.setdefault(self.lam[i], []).append(i)
            self.by_end.setdefault(self.end[i], []).append(i)

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(f"partition search exceeded {self.budget} nodes", nodes=self.nodes)

    def _balanced(self, counts) -> bool:
        excess = [0] * self.m
        for i, c in enumerate(counts):
            if c:
                excess[self.lam[i]] += c
                excess[self.end[i]] -= c
        return not any(excess)

    def solve(self) -> Optional[List[Tuple[Instance, ...]]]:
        counts = list(self.start_counts)
        groups: List[Tuple[Instance, ...]] = []
        if self.a == 0:
            # kappa == 0 mod m is a loop that lifts alone and can be cut out of any closed group
            for i, c in enumerate(counts):
                if self.kappa[i] % self.m == 0:
                    groups.extend([(self.types[i],)] * c)
                    counts[i] = 0
        rest = self._solve(counts)
        if rest is None:
            return None
        return groups + [tuple(self.types[i] for i in g) for g in rest]

    def _solve(self, counts) -> Optional[List[List[int]]]:
        x = next((i for i, c in enumerate(counts) if c), None)
        if x is None:
            return []
        key = tuple(counts)
        if key in self.failed:
            return None
        self._tick()
        if self.a == 0 and not self._balanced(counts):
            self.failed.add(key)
            return None
        counts[x] -= 1
        for group in self.groups_with(x, counts):
            rest = self._solve(counts)
            if rest is not None:
                return [group] + rest
        counts[x] += 1
        self.failed.add(key)
        return None

    def groups_with(self, x: int, counts: List[int]) -> Iterator[List[int]]:
        """Valid groups containing ``x`` (already removed from ``counts``).

        While a group is yielded its other members are removed from
        ``counts`` too; they are restored when the generator resumes.
        """
        if self.a == 0:
            yield from self._circuits(x, counts)
        else:
            yield from self._trails(x, counts)

    def _circuits(self, x, counts):
        chain = [x]
        lam0, q, m = self.lam[x], self.q, self.m

        def grow(end, total):
            self._tick()
            if total % m == 0 and end == lam0:
                yield list(chain)
            for t in self.by_start.get(end, ()):
                if counts[t] and total + self.kappa[t] <= q:
                    counts[t] -= 1
                    chain.append(t)
                    yield from grow(self.end[t], total + self.kappa[t])
                    chain.pop()
                    counts[t] += 1

        yield from grow(self.end[x], self.kappa[x])

    def _trails(self, x, counts):
        chain, prefix = [x], []
        q, m, a = self.q, self.m, self.a

        def forward(end, total):
            self._tick()
            yield from backward(self.lam[x], total)
            for t in self.by_start.get(end, ()):
                if counts[t] and total + self.kappa[t] <= q:
                    counts[t] -= 1
                    chain.append(t)
                    yield from forward(self.end[t], total + self.kappa[t])
                    chain.pop()
                    counts[t] += 1

        def backward(front, total):
            self._tick()
            if total % m == a:
                yield prefix[::-1] + chain
            for t in self.by_end.get(front, ()):
                if counts[t] and total + self.kappa[t] <= q:
                    counts[t] -= 1
                    prefix.append(t)
                    yield from backward(self.lam[t], total + self.kappa[t])
                    prefix.pop()
                    counts[t] += 1

        yield from forward(self.end[x], self.kappa[x])

    def coverable(self, x: int) -> bool:
        counts = list(self.start_counts)
        counts[x] -= 1
        for _ in self.groups_with(x, counts):
            return True
        return False


def _search(vms: ModuleMultiset, spec, a: int, budget: int):
    return _PartitionSearch(vms.as_dict(), spec.q, spec.m, spec.a0, a, budget)


def _liftable_under_any(vms, spec, a_values, budget) -> Optional[bool]:
    """True/False, or ``None`` when the budget ran out before an answer."""
    try:
        return any(_search(vms, spec, a, budget).solve() is not None for a in a_values)
    except SearchBudgetExceeded:
        return None


def _witness(vms: ModuleMultiset, spec, a_values, budget) -> Tuple[ModuleMultiset, str]:
    """A sub-multiset (V-notation) that is itself not liftable under any allowed ``a``."""
    counts = vms.as_dict()
    blocked = []
    for a in a_values:
        search = _search(vms, spec, a, budget)
        stuck = []
        for i, t in enumerate(search.types):
            try:
                if not search.coverable(i):
                    stuck.append(t)
            except SearchBudgetExceeded:
                break
            search.nodes = 0
        blocked.append(stuck)
    if all(blocked):
        chosen = {t: counts[t] for stuck in blocked for t in stuck}
        return ModuleMultiset.from_counts(vms.m, vms.q, chosen, "V"), "summands that fit in no valid group"
    if vms.size > WITNESS_MINIMIZE_LIMIT:
        return vms, "whole decomposition"
    current = vms.instances()
    order = sorted(range(len(current)), key=lambda i: (-current[i][1], current[i][0]))
    keep = [True] * len(current)
    for i in order:
        keep[i] = False
        trial = ModuleMultiset.from_instances(vms.m, vms.q, [c for c, k in zip(current, keep) if k], "V")
        if trial.size == 0 or _liftable_under_any(trial, spec, a_values, budget) is not False:
            keep[i] = True
    chosen = [c for c, k in zip(current, keep) if k]
    return ModuleMultiset.from_instances(vms.m, vms.q, chosen, "V"), "minimal non-liftable sub-multiset"


def general_decide(
    ms: ModuleMultiset,
    spec: GroupSpec,
    allow_trivial_eigenvalue: bool = False,
    budget: Optional[int] = None,
) -> LiftReport:
    """Search for a partition certificate with ``a = 0`` (and ``a = 1`` if allowed)."""
    budget = default_budget() if budget is None else budget
    vms = ms.to_v(spec.a0)
    a_values = (0, 1) if allow_trivial_eigenvalue else (0,)
    nodes = 0
    for a in a_values:
        search = _search(vms, spec, a, budget)
        groups = search.solve()
        nodes += search.nodes
        if groups is not None:
            cert = PartitionCertificate(_canonical(groups), a)
            return LiftReport(True, certificate=cert, diagnostics={"a": a, "nodes": nodes}, method="partition-search")
    witness, kind = _witness(vms, spec, a_values, budget)
    diag = {"nodes": nodes, "witness_kind": kind, "a_tried": list(a_values)}
    return LiftReport(False, witness=witness.to_u(spec.a0), diagnostics=diag, method="partition-search")


# -- brute-force oracle --------------------------------------------------------------


def brute_force_decide(ms: ModuleMultiset, spec: GroupSpec, a: int = 0) -> LiftReport:
    """Exhaustive oracle: every set partition, every ordering inside each block.

    Refuses more than ``BRUTE_FORCE_CAP`` instances. A negative answer
    carries the whole multiset as its witness.
    """
    vms = ms.to_v(spec.a0)
    inst = vms.instances()
    n = len(inst)
    if n > BRUTE_FORCE_CAP:
        raise BruteForceCapError(f"brute force is capped at {BRUTE_FORCE_CAP} instances, got {n}")
    m, q, a0 = spec.m, spec.q, spec.a0

    @lru_cache(maxsize=None)
    def ordering(block: Tuple[Instance, ...]) -> Optional[Tuple[Instance, ...]]:
        def extend(seq, left):
            if not left:
                return tuple(seq)
            lam, k = seq[-1]
            tried = set()
            for i, nxt in enumerate(left):
                if nxt in tried:
                    continue
                tried.add(nxt)
                if nxt[0] == (lam + a0 * k) % m:
                    found = extend(seq + [nxt], left[:i] + left[i + 1 :])
                    if found:
                        return found
            return None

        for i, first in enumerate(block):
            found = extend([first], block[:i] + block[i + 1 :])
            if found:
                return found
        return None

    @lru_cache(maxsize=None)
    def solve(mask: int):
        if mask == 0:
            return ()
        members = [i for i in range(n) if mask >> i & 1]
        head, others = members[0], members[1:]
        for r in range(len(others) + 1):
            for extra in combinations(others, r):
                block = (head,) + extra
                total = sum(inst[i][1] for i in block)
                if total > q or total % m != a:
                    continue
                order = ordering(tuple(sorted(inst[i] for i in block)))
                if order is None:
                    continue
                rest = solve(mask & ~sum(1 << i for i in block))
                if rest is not None:
                    return (order,) + rest
        return None

    groups = solve((1 << n) - 1)
    if groups is None:
        return LiftReport(False, witness=ms.to_u(spec.a0), diagnostics={"a": a}, method="brute-force")
    return LiftReport(True, certificate=PartitionCertificate(_canonical(groups), a), diagnostics={"a": a}, method="brute-force")


# -- the w0 = 1 family ---------------------------------------------------------------


def explicit_w01_pairing(p: int, h: int) -> List[Tuple[int, int]]:
    """Closed-form complementary pairing for ``D_{p^h}`` with upper jumps ``1, p, p^2, ...``.

    The summand dimensions are ``p^h - k(p+1)``. Dimension ``j`` pairs with
    ``p^h - 1 - j`` for odd ``h`` and with ``p^h - p - j`` for even ``h``.
    The pairing is checked against the computed decomposition. Any mismatch
    raises :class:`TheoremViolation`.
    """
    q = p**h
    dims = [q - k * (p + 1) for k in range(1, q // (p + 1) + 1) if q - k * (p + 1) > 0]
    shift = q - 1 if h % 2 else q - p
    pairs = sorted({tuple(sorted((j, shift - j))) for j in dims})

    ms = decompose(GroupSpec.dihedral(p, h), family_jumps(p, h, 1))
    socle_of: Dict[int, int] = {}
    for (mu, k), mult in ms.entries:
        if mult != 1 or k in socle_of:
            raise TheoremViolation(f"dimension {k} does not occur exactly once")
        socle_of[k] = mu
    if set(socle_of) != set(dims):
        raise TheoremViolation(f"summand dimensions {sorted(socle_of)} differ from {sorted(dims)}")
    seen = set()
    for j, jj in pairs:
        if j == jj or j not in socle_of or jj not in socle_of:
            raise TheoremViolation(f"pair ({j}, {jj}) is not a pair of distinct summands")
        if j % 2 == 0 or jj % 2 == 0 or socle_of[j] == socle_of[jj] or j + jj > q:
            raise TheoremViolation(f"pair ({j}, {jj}) is not complementary")
        seen.update((j, jj))
    if seen != set(dims):
        raise TheoremViolation("pairing does not cover every summand")
    return pairs


# -- top level -------------------------------------------------------------------------


def decide(
    spec: GroupSpec,
    lower: Sequence[int],
    allow_trivial_eigenvalue: bool = False,
    cross_check: bool = False,
    budget: Optional[int] = None,
) -> LiftReport:
    """Decompose the differentials of the HKG cover and decide liftability.

    ``m = 2`` with ``a0 = 1`` goes to the dihedral matcher; everything else
    (and the ``a = 1`` mode) to the general search. With ``cross_check`` the
    dihedral answer is re-derived by the general search and must agree.
    """
    group_diag = validate_group(spec)
    jumps = JumpSequence(p=spec.p, lower=tuple(lower))
    table = differential_table(jumps, spec.p, spec.m)
    ms = decompose(spec, jumps.lower)
    genus = genus_special(jumps.lower, spec.p)
    if genus_generic(jumps.orbit_counts, spec.p) != genus or ms.total_dimension != genus or table.dimension_sum != genus:
        raise ConsistencyError("genus evaluations and decomposition dimension disagree")
    kgb = kgb_vanishes(jumps.lower, spec.m, spec.p)

    dihedral = spec.m == 2 and spec.a0 == 1 and not allow_trivial_eigenvalue
    if dihedral:
        report = dihedral_decide(ms)
    else:
        report = general_decide(ms, spec, allow_trivial_eigenvalue, budget)
    diag = dict(report.diagnostics)
    if cross_check and dihedral:
        other = general_decide(ms, spec, False, budget)
        if other.liftable != report.liftable:
            raise ConsistencyError("dihedral matcher and partition search disagree")
        diag["cross_check"] = "agree"
    if report.certificate is not None and not verify_certificate(report.certificate, ms, spec):
        raise ConsistencyError("produced certificate fails verification")
    diag.update(
        genus=genus,
        kgb_vanishes=kgb.vanishes,
        kgb=kgb,
        summands=ms.size,
        faithful=group_diag.faithful,
        monotone_degrees=table.monotone,
    )
    return replace(report, diagnostics=diag, modules=ms)
