"""Structure of the cycles of sigma * pi_hat^-1.

Orientation, intersection and interleaving are all read off the cyclic order
in which symbols appear in ``pi_hat^-1`` (read starting from 0).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ApplicabilityError
from .perm_core import (
    Cycle,
    CycleDecomposition,
    ExtendedPermutation,
    apply,
    cycle_decomposition,
    is_applicable,
    sigma_pi_inv,
)

SINGLE_ORIENTED = "single-oriented-cycle"
CONNECTED = "connected-configuration"


@dataclass(frozen=True)
class OrderIndex:
    """``pos[x]`` is the place of x when reading pi_hat^-1 from 0."""

    pos: tuple[int, ...]

    def __getitem__(self, x: int) -> int:
        return self.pos[x]

    def reanchored(self, symbol: int) -> OrderIndex:
        """Same cyclic order, read starting from ``symbol`` instead of 0."""
        n1 = len(self.pos)
        shift = self.pos[symbol]
        return OrderIndex(tuple((p - shift) % n1 for p in self.pos))


def order_index(pi_hat: ExtendedPermutation) -> OrderIndex:
    n1 = pi_hat.size
    pos = [0] * n1
    # pi_hat^-1 read from 0 is 0, pn, p(n-1), .., p1
    for i, x in enumerate(pi_hat.one_line, start=1):
        pos[x] = n1 - i
    return OrderIndex(tuple(pos))


def _cyc_inc(p, q, r) -> bool:
    return p < q < r or q < r < p or r < p < q


def is_oriented(gamma: Cycle, idx: OrderIndex) -> bool:
    syms = gamma.symbols
    if len(syms) < 3:
        return False
    pos = [idx[x] for x in syms]
    for i, j, k in itertools.combinations(range(len(syms)), 3):
        if not _cyc_inc(pos[i], pos[j], pos[k]):
            return True
    return False


def _alternate(seq_a: Sequence[int], seq_b: Sequence[int]) -> bool:
    """True when the positions of seq_a and seq_b strictly alternate around the circle."""
    marks = sorted([(p, 0) for p in seq_a] + [(p, 1) for p in seq_b])
    return all(marks[i][1] != marks[i + 1][1] for i in range(len(marks) - 1)) and marks[0][1] != marks[-1][1]


def cycles_intersect(delta: Cycle, epsilon: Cycle, idx: OrderIndex) -> bool:
    pd = [idx[x] for x in delta.symbols]
    pe = [idx[x] for x in epsilon.symbols]
    for a, b in itertools.combinations(pd, 2):
        for d, e in itertools.combinations(pe, 2):
            if _alternate((a, b), (d, e)):
                return True
    return False


def cycles_interleave(delta: Cycle, epsilon: Cycle, idx: OrderIndex) -> bool:
    if len(delta) < 3 or len(epsilon) < 3:
        return False
    pd = [idx[x] for x in delta.symbols]
    pe = [idx[x] for x in epsilon.symbols]
    # triplets are taken in their cycle's own order and must appear in that
    # cyclic order along pi_hat^-1, alternating with the other triplet
    for a, b, c in itertools.combinations(pd, 3):
        if not _cyc_inc(a, b, c):
            continue
        for d, e, f in itertools.combinations(pe, 3):
            if _cyc_inc(d, e, f) and _alternate((a, b, c), (d, e, f)):
                return True
    return False


@dataclass(frozen=True)
class StructureReport:
    cycles: CycleDecomposition
    oriented: tuple[bool, ...]
    intersects: frozenset[tuple[int, int]]
    interleaves: frozenset[tuple[int, int]]
    components: tuple[tuple[int, ...], ...]
    component_kind: tuple[str, ...]
    uip_flags: tuple[bool, ...]
    odd_count: int = field(default=0)

    @property
    def is_palisade(self) -> bool:
        return bool(self.uip_flags) and all(self.uip_flags)

    @property
    def phi(self) -> int:
        return sum(self.uip_flags) if self.is_palisade else 0

    @property
    def is_3perm(self) -> bool:
        return all(len(c) in (1, 3) for c in self.cycles.cycles)

    def uip_count(self) -> int:
        return sum(self.uip_flags)

    def to_json(self) -> dict:
        cyc = self.cycles.cycles
        return {
            "cycles": [list(c.symbols) for c in cyc],
            "oriented": list(self.oriented),
            "intersects": sorted([list(p) for p in self.intersects]),
            "interleaves": sorted([list(p) for p in self.interleaves]),
            "components": [[list(cyc[i].symbols) for i in comp] for comp in self.components],
            "component_kind": list(self.component_kind),
            "uip": list(self.uip_flags),
            "is_palisade": self.is_palisade,
            "phi": self.phi,
            "is_3perm": self.is_3perm,
        }


def components(dec: CycleDecomposition, idx: OrderIndex) -> StructureReport:
    cyc = dec.cycles
    m = len(cyc)
    oriented = tuple(is_oriented(c, idx) for c in cyc)
    inter, leave = set(), set()
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    big = [i for i in range(m) if len(cyc[i]) > 1]
    for i, j in itertools.combinations(big, 2):
        hit = False
        if cycles_intersect(cyc[i], cyc[j], idx):
            inter.add((i, j))
            hit = True
        if cycles_interleave(cyc[i], cyc[j], idx):
            leave.add((i, j))
            hit = True
        if hit:
            parent[find(i)] = find(j)

    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    comps = tuple(sorted((tuple(g) for g in groups.values()), key=lambda g: g[0]))

    kinds, uip = [], []
    for comp in comps:
        if len(comp) == 1 and oriented[comp[0]]:
            kinds.append(SINGLE_ORIENTED)
        else:
            kinds.append(CONNECTED)
        uip.append(
            len(comp) == 2
            and all(len(cyc[i]) == 3 and not oriented[i] for i in comp)
            and (comp[0], comp[1]) in leave
        )
    return StructureReport(
        cycles=dec,
        oriented=oriented,
        intersects=frozenset(inter),
        interleaves=frozenset(leave),
        components=comps,
        component_kind=tuple(kinds),
        uip_flags=tuple(uip),
        odd_count=dec.odd_count,
    )


def analyze(pi_hat: ExtendedPermutation) -> StructureReport:
    return components(cycle_decomposition(sigma_pi_inv(pi_hat)), order_index(pi_hat))


def is_palisade(pi_hat: ExtendedPermutation) -> tuple[bool, int]:
    rep = analyze(pi_hat)
    return rep.is_palisade, rep.phi


def is_3_permutation(pi_hat: ExtendedPermutation) -> bool:
    return all(len(c) in (1, 3) for c in cycle_decomposition(sigma_pi_inv(pi_hat)).cycles)


def classify_move(tau, pi_hat: ExtendedPermutation) -> int:
    """Change in the odd-cycle count of sigma * pi_hat^-1 caused by applying tau."""
    if not is_applicable(tau, pi_hat):
        # apply() raises with the product decomposition attached
        apply(tau, pi_hat)
        raise ApplicabilityError(f"{tau} is not applicable")  # pragma: no cover
    before = cycle_decomposition(sigma_pi_inv(pi_hat)).odd_count
    after = cycle_decomposition(sigma_pi_inv(apply(tau, pi_hat))).odd_count
    return after - before
