"""Permutation algebra on the symbols {0..n}.

A linear chromosome ``[p1 .. pn]`` is encoded as the (n+1)-cycle
``(0 p1 .. pn)``; sorting it means multiplying on the left by applicable
3-cycles until the cycle ``(0 1 .. n)`` is reached.

Permutations are stored as image tables. Cycles are a derived view.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ApplicabilityError, MalformedInputError, SizeMismatchError

__all__ = [
    "Permutation",
    "Cycle",
    "CycleDecomposition",
    "ExtendedPermutation",
    "from_one_line",
    "to_one_line",
    "identity_extended",
    "compose",
    "inverse",
    "cycle_decomposition",
    "sigma_pi_inv",
    "is_applicable",
    "apply",
    "enumerate_applicable",
    "is_n_plus_1_cycle",
    "parse_one_line",
    "format_one_line",
    "parse_cycles",
    "format_cycles",
]


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``{0..len(images)-1}``; ``images[x]`` is where x goes."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        seen = [False] * len(images)
        for x in images:
            if not isinstance(x, int) or not 0 <= x < len(images) or seen[x]:
                raise MalformedInputError(f"not a bijection on 0..{len(images) - 1}: symbol {x!r}")
            seen[x] = True

    @classmethod
    def identity(cls, size: int) -> Permutation:
        return cls(tuple(range(size)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], size: int) -> Permutation:
        images = list(range(size))
        touched = set()
        for cyc in cycles:
            cyc = tuple(cyc)
            for x in cyc:
                if not 0 <= x < size:
                    raise MalformedInputError(f"symbol {x} outside 0..{size - 1}")
                if x in touched:
                    raise MalformedInputError(f"symbol {x} appears in more than one cycle")
                touched.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(tuple(images))

    @property
    def n_plus_1(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __len__(self) -> int:
        return len(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def is_even(self) -> bool:
        return cycle_decomposition(self).is_even()

    def cycles(self) -> CycleDecomposition:
        return cycle_decomposition(self)

    def __str__(self) -> str:
        return format_cycles(cycle_decomposition(self))


@dataclass(frozen=True)
class Cycle:
    """Symbols in cyclic order, stored rotated so the minimum comes first."""

    symbols: tuple[int, ...]

    def __post_init__(self):
        syms = tuple(self.symbols)
        if not syms:
            raise MalformedInputError("a cycle needs at least one symbol")
        if len(set(syms)) != len(syms):
            raise MalformedInputError(f"repeated symbol in cycle {syms}")
        k = syms.index(min(syms))
        object.__setattr__(self, "symbols", syms[k:] + syms[:k])

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __contains__(self, x) -> bool:
        return x in self.symbols

    def inverse(self) -> Cycle:
        return Cycle(tuple(reversed(self.symbols)))

    def sorted_triple(self) -> tuple[int, ...]:
        return tuple(sorted(self.symbols))

    def as_permutation(self, size: int) -> Permutation:
        return Permutation.from_cycles([self.symbols], size)

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self.symbols)) + ")"


@dataclass(frozen=True)
class CycleDecomposition:
    size: int
    cycles: tuple[Cycle, ...]
    odd_count: int

    def lengths(self) -> list[int]:
        return [len(c) for c in self.cycles]

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles) % 2 == 0

    def nontrivial(self) -> tuple[Cycle, ...]:
        return tuple(c for c in self.cycles if len(c) > 1)

    def to_permutation(self) -> Permutation:
        return Permutation.from_cycles((c.symbols for c in self.cycles), self.size)

    def __str__(self) -> str:
        return format_cycles(self)


@dataclass(frozen=True)
class ExtendedPermutation:
    """The (n+1)-cycle ``(0 p1 .. pn)`` standing for the one-line ``[p1 .. pn]``."""

    perm: Permutation
    one_line: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.one_line)

    @property
    def size(self) -> int:
        return len(self.one_line) + 1

    def body(self) -> tuple[int, ...]:
        """Cycle read from 0: ``(0, p1, .., pn)``."""
        return (0,) + self.one_line

    def is_identity(self) -> bool:
        return all(x == i + 1 for i, x in enumerate(self.one_line))

    def cycle_text(self) -> str:
        return "(" + " ".join(map(str, self.body())) + ")"

    def __str__(self) -> str:
        return format_one_line(self.one_line)

    @classmethod
    def from_permutation(cls, perm: Permutation) -> ExtendedPermutation:
        """Wrap a permutation that must be a single cycle through every symbol."""
        seq = []
        x = perm(0)
        while x != 0:
            seq.append(x)
            x = perm(x)
        if len(seq) + 1 != perm.n_plus_1:
            raise MalformedInputError(f"{perm} is not a {perm.n_plus_1}-cycle")
        return cls(perm, tuple(seq))


def from_one_line(seq: Sequence[int]) -> ExtendedPermutation:
    seq = tuple(seq)
    n = len(seq)
    seen = set()
    for x in seq:
        if not isinstance(x, int) or isinstance(x, bool) or not 1 <= x <= n:
            raise MalformedInputError(f"symbol {x!r} out of range 1..{n}")
        if x in seen:
            raise MalformedInputError(f"duplicate symbol {x}")
        seen.add(x)
    images = [0] * (n + 1)
    body = (0,) + seq
    for a, b in zip(body, body[1:] + body[:1]):
        images[a] = b
    return ExtendedPermutation(Permutation(tuple(images)), seq)


def to_one_line(pi_hat: ExtendedPermutation) -> tuple[int, ...]:
    return pi_hat.one_line


def identity_extended(n: int) -> ExtendedPermutation:
    return from_one_line(range(1, n + 1))


def _perm(p) -> Permutation:
    return p.perm if isinstance(p, ExtendedPermutation) else p


def compose(a, b) -> Permutation:
    """The product ``ab``: x goes to ``a(b(x))``."""
    a, b = _perm(a), _perm(b)
    if a.n_plus_1 != b.n_plus_1:
        raise SizeMismatchError(f"cannot compose permutations on {a.n_plus_1} and {b.n_plus_1} symbols")
    ai = a.images
    return Permutation(tuple(ai[y] for y in b.images))


def inverse(p) -> Permutation:
    p = _perm(p)
    inv = [0] * p.n_plus_1
    for x, y in enumerate(p.images):
        inv[y] = x
    return Permutation(tuple(inv))


def _cycles_of_images(images: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(images)
    out = []
    for start in range(len(images)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = images[x]
        out.append(tuple(cyc))
    return out


def cycle_decomposition(p) -> CycleDecomposition:
    p = _perm(p)
    # scanning starts in increasing order, so each cycle already begins at its minimum
    raw = _cycles_of_images(p.images)
    cycles = tuple(Cycle(c) for c in raw)
    odd = sum(1 for c in raw if len(c) % 2 == 1)
    return CycleDecomposition(p.n_plus_1, cycles, odd)


def sigma_pi_inv(pi_hat: ExtendedPermutation) -> Permutation:
    """``(0 1 .. n)`` composed with the inverse of ``pi_hat``."""
    n1 = pi_hat.size
    body = pi_hat.body()
    images = [0] * n1
    # pi_hat^-1 sends body[i] to body[i-1]; the identity cycle then adds one mod n+1
    for i, x in enumerate(body):
        images[x] = (body[i - 1] + 1) % n1
    return Permutation(tuple(images))


def is_n_plus_1_cycle(p) -> bool:
    p = _perm(p)
    count = 1
    x = p(0)
    while x != 0:
        count += 1
        x = p(x)
    return count == p.n_plus_1


def _triple(tau) -> tuple[int, int, int]:
    syms = tuple(tau.symbols if isinstance(tau, Cycle) else tau)
    if len(syms) != 3 or len(set(syms)) != 3:
        raise MalformedInputError(f"expected a 3-cycle, got {syms}")
    return syms


def _positions(pi_hat: ExtendedPermutation) -> list[int]:
    pos = [0] * pi_hat.size
    for i, x in enumerate(pi_hat.one_line, start=1):
        pos[x] = i
    return pos


def _cyclically_increasing(p: int, q: int, r: int) -> bool:
    return p < q < r or q < r < p or r < p < q


def is_applicable(tau, pi_hat: ExtendedPermutation) -> bool:
    a, b, c = _triple(tau)
    n1 = pi_hat.size
    if not all(0 <= x < n1 for x in (a, b, c)):
        raise MalformedInputError(f"3-cycle {tau} uses symbols outside 0..{n1 - 1}")
    pos = _positions(pi_hat)
    return _cyclically_increasing(pos[a], pos[b], pos[c])


def apply(tau, pi_hat: ExtendedPermutation) -> ExtendedPermutation:
    """Multiply ``pi_hat`` on the left by the 3-cycle ``tau``.

    Raises ApplicabilityError when the product is not an (n+1)-cycle.
    """
    a, b, c = _triple(tau)
    t = Permutation.from_cycles([(a, b, c)], pi_hat.size)
    product = compose(t, pi_hat.perm)
    if not is_n_plus_1_cycle(product):
        dec = cycle_decomposition(product)
        raise ApplicabilityError(
            f"{Cycle((a, b, c))} is not applicable to {pi_hat.cycle_text()}: product is {dec}",
            product=dec,
        )
    return ExtendedPermutation.from_permutation(product)


def enumerate_applicable(pi_hat: ExtendedPermutation) -> Iterator[Cycle]:
    """One applicable 3-cycle per unordered triple, by sorted triple."""
    pos = _positions(pi_hat)
    for a, b, c in itertools.combinations(range(pi_hat.size), 3):
        if _cyclically_increasing(pos[a], pos[b], pos[c]):
            yield Cycle((a, b, c))
        else:
            yield Cycle((a, c, b))


_ONE_LINE_RE = re.compile(r"^\s*(?:\[([^\[\]]*)\]|([^\[\]]*))\s*$")


def parse_one_line(text: str) -> ExtendedPermutation:
    m = _ONE_LINE_RE.match(text)
    if not m:
        raise MalformedInputError(f"cannot parse one-line permutation {text!r}")
    inner = m.group(1) if m.group(1) is not None else m.group(2)
    tokens = inner.replace(",", " ").split()
    try:
        seq = [int(t) for t in tokens]
    except ValueError:
        raise MalformedInputError(f"cannot parse one-line permutation {text!r}") from None
    return from_one_line(seq)


def format_one_line(seq: Sequence[int]) -> str:
    return "[" + " ".join(map(str, seq)) + "]"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, size: int | None = None) -> Permutation:
    """Parse ``"(0 3 5)(1 7)"``; size defaults to one more than the largest symbol."""
    stripped = _CYCLE_RE.sub("", text).strip()
    if stripped:
        raise MalformedInputError(f"unexpected text {stripped!r} in cycle notation")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        try:
            syms = tuple(int(t) for t in body.replace(",", " ").split())
        except ValueError:
            raise MalformedInputError(f"bad cycle ({body})") from None
        if syms:
            cycles.append(syms)
    if size is None:
        size = max((max(c) for c in cycles), default=-1) + 1
    return Permutation.from_cycles(cycles, size)


def format_cycles(p, include_fixed: bool = False) -> str:
    dec = p if isinstance(p, CycleDecomposition) else cycle_decomposition(p)
    parts = [str(c) for c in dec.cycles if include_fixed or len(c) > 1]
    return "".join(parts) if parts else "()"
