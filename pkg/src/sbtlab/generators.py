"""Permutation families and enumeration universes."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .errors import CapacityError, ConstructionError, DomainError
from .perm_core import ExtendedPermutation, from_one_line
from .structure import SINGLE_ORIENTED, analyze, is_3_permutation

MAX_TABLE_SIZE = 12  # largest n+1 for enumerations and distance tables

FAMILIES = ("palisade", "diametral_mod3", "all_cycles", "all_3perms", "random_cycles")


@dataclass(frozen=True)
class CorpusSpec:
    family: str
    n: int | None = None
    phi: int | None = None
    seed: int | None = None
    count: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.family == "palisade":
            if self.phi is None or self.phi < 1:
                raise DomainError("palisade needs phi >= 1")
        elif self.n is None or self.n < 0:
            raise DomainError(f"{self.family} needs n >= 0")
        if self.family == "diametral_mod3":
            _check_mod3(self.n)
        if self.family == "random_cycles" and (self.count is None or self.count < 1):
            raise DomainError("random_cycles needs count >= 1")


def generate(spec: CorpusSpec) -> Iterator[ExtendedPermutation]:
    if spec.family == "palisade":
        yield make_palisade(spec.phi)
    elif spec.family == "diametral_mod3":
        yield make_diametral_mod3(spec.n)
    elif spec.family == "all_cycles":
        yield from enumerate_cycles(spec.n)
    elif spec.family == "all_3perms":
        yield from enumerate_3_permutations(spec.n)
    else:
        rng = random.Random(spec.seed)
        for _ in range(spec.count):
            yield _random_cycle(spec.n, rng)


def make_palisade(phi: int) -> ExtendedPermutation:
    """Blocks ``6i+5 .. 6i+1`` separated by ``6i+6``; the last separator is dropped."""
    if phi < 1:
        raise DomainError("phi must be at least 1")
    seq = []
    for i in range(phi):
        b = 6 * i
        seq.extend([b + 5, b + 4, b + 3, b + 2, b + 1, b + 6])
    return from_one_line(seq[:-1])


def _check_mod3(n: int) -> None:
    if n < 8 or (n + 1) % 6 != 3:
        raise DomainError(f"diametral family needs n >= 8 and n+1 = 3 (mod 6), got n={n}")


def make_diametral_mod3(n: int) -> ExtendedPermutation:
    """A 3-permutation with (n-2)/6 unoriented interleaving pairs and one
    isolated oriented 3-cycle. n = 14 gives ``[8 13 12 11 10 9 14 7 6 5 1 3 2 4]``.
    """
    _check_mod3(n)
    head = [1]
    for i in range((n - 8) // 6):
        b = 6 * i
        head.extend([b + 6, b + 5, b + 4, b + 3, b + 2, b + 7])
    seq = [x + 7 for x in head] + [7, 6, 5, 1, 3, 2, 4]
    pi_hat = from_one_line(seq)

    rep = analyze(pi_hat)
    pairs = rep.uip_count()
    singles = [
        comp for comp, kind in zip(rep.components, rep.component_kind)
        if kind == SINGLE_ORIENTED and len(rep.cycles.cycles[comp[0]]) == 3
    ]
    if not (rep.is_3perm and pairs == (n - 2) // 6 and len(singles) == 1
            and len(rep.components) == pairs + 1):
        raise ConstructionError(f"diametral construction for n={n} failed validation: {seq}")
    return pi_hat


def _table_guard(n: int) -> None:
    if n < 0:
        raise DomainError("n must be >= 0")
    if n + 1 > MAX_TABLE_SIZE:
        raise CapacityError(f"n+1 = {n + 1} exceeds the enumeration limit of {MAX_TABLE_SIZE}")


def enumerate_cycles(n: int) -> Iterator[ExtendedPermutation]:
    """All (n+1)-cycles, in Lehmer rank order of their one-line form."""
    _table_guard(n)
    for seq in itertools.permutations(range(1, n + 1)):
        yield from_one_line(seq)


def enumerate_3_permutations(n: int) -> Iterator[ExtendedPermutation]:
    _table_guard(n)
    if (n + 1) % 3:
        raise DomainError(f"3-permutations need n+1 divisible by 3, got {n + 1}")
    for pi_hat in enumerate_cycles(n):
        if is_3_permutation(pi_hat):
            yield pi_hat


def _random_cycle(n: int, rng: random.Random) -> ExtendedPermutation:
    seq = list(range(1, n + 1))
    rng.shuffle(seq)
    return from_one_line(seq)


def random_cycle(n: int, seed: int) -> ExtendedPermutation:
    """Uniform over the n! cycles on n+1 symbols; deterministic per seed."""
    return _random_cycle(n, random.Random(seed))
