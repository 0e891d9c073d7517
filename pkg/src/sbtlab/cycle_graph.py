"""Cycle graph of a one-line permutation.

Vertices are ``+x`` / ``-x`` labels. Black edges run ``-p[i] -> +p[i-1]`` for
i in 1..n+1 and gray edges ``+i -> -(i+1)`` for i in 0..n, where p is the
one-line form framed by p[0] = 0 and p[n+1] = n+1. A graph cycle is stored
as the list of its black-edge indices, rotated to start at the smallest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import MalformedInputError
from .perm_core import Cycle, ExtendedPermutation, from_one_line


@dataclass(frozen=True)
class CycleGraph:
    n: int
    one_line: tuple[int, ...]
    vertices: tuple[str, ...]
    black_edges: tuple[tuple[str, str], ...]
    gray_edges: tuple[tuple[str, str], ...]
    graph_cycles: tuple[tuple[int, ...], ...]

    def kappas(self) -> list[int]:
        return [len(c) for c in self.graph_cycles]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "one_line": list(self.one_line),
            "vertices": list(self.vertices),
            "black_edges": [list(e) for e in self.black_edges],
            "gray_edges": [list(e) for e in self.gray_edges],
            "cycles": [{"black_edges": list(c), "kappa": len(c)} for c in self.graph_cycles],
            "odd_cycles": odd_cycle_count(self),
            "bp_bound": bp_bound_graph(self),
        }


def _framed(one_line: Sequence[int]) -> list[int]:
    # from_one_line validates and raises MalformedInputError for us
    pi = from_one_line(tuple(one_line)).one_line
    return [0, *pi, len(pi) + 1]


def build_graph(one_line) -> CycleGraph:
    if isinstance(one_line, ExtendedPermutation):
        one_line = one_line.one_line
    ext = _framed(one_line)
    n = len(ext) - 2
    where = [0] * (n + 2)
    for i, x in enumerate(ext):
        where[x] = i

    vertices = ["+0"]
    for x in ext[1:-1]:
        vertices += [f"-{x}", f"+{x}"]
    vertices.append(f"-{n + 1}")
    black = tuple((f"-{ext[i]}", f"+{ext[i - 1]}") for i in range(1, n + 2))
    gray = tuple((f"+{i}", f"-{i + 1}") for i in range(n + 1))

    seen = [False] * (n + 2)
    cycles = []
    for start in range(1, n + 2):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            # black edge i lands on +ext[i-1]; its gray edge reaches -(ext[i-1]+1)
            i = where[ext[i - 1] + 1]
        cycles.append(tuple(cyc))
    return CycleGraph(n, tuple(ext[1:-1]), tuple(vertices), black, gray, tuple(cycles))


def odd_cycle_count(g: CycleGraph) -> int:
    return sum(1 for c in g.graph_cycles if len(c) % 2 == 1)


def bp_bound_graph(g: CycleGraph) -> int:
    return (g.n + 1 - odd_cycle_count(g)) // 2


def apply_transposition(one_line: Sequence[int], i: int, j: int, k: int) -> tuple[int, ...]:
    """Exchange the blocks at positions [i, j-1] and [j, k-1] (1-based, k <= n+1)."""
    n = len(one_line)
    if not 1 <= i < j < k <= n + 1:
        raise MalformedInputError(f"need 1 <= i < j < k <= {n + 1}, got ({i}, {j}, {k})")
    p = tuple(one_line)
    return p[:i - 1] + p[j - 1:k - 1] + p[i - 1:j - 1] + p[k - 1:]


def transposition_to_cycle(one_line: Sequence[int], i: int, j: int, k: int) -> Cycle:
    """The applicable 3-cycle performing the same block exchange; position n+1 maps to symbol 0."""
    n = len(one_line)
    if not 1 <= i < j < k <= n + 1:
        raise MalformedInputError(f"need 1 <= i < j < k <= {n + 1}, got ({i}, {j}, {k})")
    body = (0, *one_line)
    return Cycle((body[i], body[j], body[k % (n + 1)]))


def cycle_to_transposition(pi_hat: ExtendedPermutation, tau) -> tuple[int, int, int]:
    syms = tuple(tau.symbols if isinstance(tau, Cycle) else tau)
    body = pi_hat.body()
    pos = {x: p for p, x in enumerate(body)}
    try:
        i, j, k = sorted(pos[x] for x in syms)
    except KeyError as e:
        raise MalformedInputError(f"symbol {e.args[0]} not in permutation") from None
    if i == 0:
        return j, k, pi_hat.n + 1
    return i, j, k


def delta_odd_graph(one_line: Sequence[int], i: int, j: int, k: int) -> int:
    before = odd_cycle_count(build_graph(one_line))
    after = odd_cycle_count(build_graph(apply_transposition(one_line, i, j, k)))
    return after - before


_PALETTE = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan4")


def to_dot(g: CycleGraph, name: str = "G") -> str:
    """Deterministic DOT text: vertices left to right, black edges tagged with their cycle."""
    cycle_of = {}
    for c_idx, cyc in enumerate(g.graph_cycles):
        for e in cyc:
            cycle_of[e] = c_idx
    lines = [f"digraph {name} {{", '  node [shape=plaintext, fontname="Helvetica"];']
    lines.append("  { rank=same; " + " ".join(f'"{v}";' for v in g.vertices) + " }")
    for a, b in zip(g.vertices, g.vertices[1:]):
        lines.append(f'  "{a}" -> "{b}" [style=invis];')
    for idx, (a, b) in enumerate(g.black_edges, start=1):
        c = cycle_of[idx]
        kappa = len(g.graph_cycles[c])
        color = _PALETTE[c % len(_PALETTE)]
        lines.append(
            f'  "{a}" -> "{b}" [color=black, penwidth=2, label="C{c + 1}", fontcolor={color}, '
            f'comment="cycle {c + 1} kappa {kappa}"];'
        )
    for a, b in g.gray_edges:
        lines.append(f'  "{a}" -> "{b}" [color=gray, style=dashed, constraint=false];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def verify_correspondence(max_n: int = 8, random_cases: int = 10_000, max_random_n: int = 30,
                          seed: int = 0):
    """Compare graph cycles with the cycles of sigma * pi_hat^-1."""
    import itertools
    import random

    from .bounds import bp_lower_bound
    from .perm_core import cycle_decomposition, sigma_pi_inv
    from .search import VerifyReport

    mism = []
    checked = 0

    def check(seq):
        nonlocal checked
        checked += 1
        pi_hat = from_one_line(seq)
        g = build_graph(seq)
        dec = cycle_decomposition(sigma_pi_inv(pi_hat))
        if sorted(g.kappas()) != sorted(dec.lengths()):
            mism.append(f"{list(seq)}: graph kappas {sorted(g.kappas())} vs {sorted(dec.lengths())}")
        elif odd_cycle_count(g) != dec.odd_count or bp_bound_graph(g) != bp_lower_bound(pi_hat):
            mism.append(f"{list(seq)}: odd count or bound differ")

    for n in range(0, max_n + 1):
        for seq in itertools.permutations(range(1, n + 1)):
            check(seq)
    rng = random.Random(seed)
    for _ in range(random_cases):
        n = rng.randint(0, max_random_n)
        seq = list(range(1, n + 1))
        rng.shuffle(seq)
        check(seq)
    ok = not mism
    return VerifyReport("graph", ok, "pass" if ok else "fail",
                        {"permutations_checked": checked, "exhaustive_max_n": max_n,
                         "random_cases": random_cases, "max_random_n": max_random_n}, mism[:20])
