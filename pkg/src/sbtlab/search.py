"""Exact transposition distance: breadth-first tables, IDA*, sequence search.

Search works on the one-line form. A move is a triple of cycle positions
``0 <= i < j < k <= n`` in ``body = (0, p1, .., pn)``; the applicable 3-cycle
is ``(body[i] body[j] body[k])`` and its effect is the exchange of the blocks
``body[i:j]`` and ``body[j:k]``.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np

from .bounds import three_norm, upper_bound
from .errors import CapacityError, DomainError, MalformedInputError, ParityError
from .perm_core import (
    Cycle,
    ExtendedPermutation,
    Permutation,
    apply,
    cycle_decomposition,
    from_one_line,
    identity_extended,
    sigma_pi_inv,
)

MAX_TABLE_SIZE = 12
TABLE_MAGIC = b"SBTDT\0"
TABLE_VERSION = 1
UNREACHED = 255

FOUND = "found"
ABSENT = "verified-absent"
INDETERMINATE = "indeterminate"


# ---------------------------------------------------------------- ranking

def rank(seq: Sequence[int]) -> int:
    """Lehmer rank of a one-line permutation of 1..n (lexicographic order)."""
    n = len(seq)
    r = 0
    for i, x in enumerate(seq):
        smaller = sum(1 for y in seq[i + 1:] if y < x)
        r += smaller * math.factorial(n - 1 - i)
    return r


def unrank(r: int, n: int) -> tuple[int, ...]:
    pool = list(range(1, n + 1))
    out = []
    for i in range(n):
        f = math.factorial(n - 1 - i)
        d, r = divmod(r, f)
        out.append(pool.pop(d))
    return tuple(out)


def rank_many(arr: np.ndarray) -> np.ndarray:
    """Vectorised ``rank`` over rows; values may be 0-based or 1-based."""
    m, n = arr.shape
    out = np.zeros(m, dtype=np.int64)
    for i in range(n - 1):
        smaller = (arr[:, i + 1:] < arr[:, i:i + 1]).sum(axis=1, dtype=np.int64)
        out += smaller * math.factorial(n - 1 - i)
    return out


def unrank_many(ranks: np.ndarray, n: int) -> np.ndarray:
    """Rows of 0-based one-line permutations for the given ranks."""
    ranks = np.asarray(ranks, dtype=np.int64)
    m = ranks.shape[0]
    digits = np.empty((m, n), dtype=np.int8)
    r = ranks.copy()
    for i in range(n):
        f = math.factorial(n - 1 - i)
        digits[:, i] = r // f
        r %= f
    # turn Lehmer digits into values, right to left
    perm = digits.copy()
    for i in range(n - 2, -1, -1):
        bump = perm[:, i + 1:] >= perm[:, i:i + 1]
        perm[:, i + 1:] += bump.astype(np.int8)
    return perm


def block_moves(n: int) -> list[tuple[int, int, int]]:
    """Position triples ``0 <= i < j < k <= n`` in cycle-body coordinates."""
    return list(itertools.combinations(range(n + 1), 3))


def _one_line_index(n: int, i: int, j: int, k: int) -> np.ndarray:
    """Index array realising move (i, j, k) on a 0-based one-line row."""
    body = list(range(-1, n))  # body position p holds one-line index p-1; -1 stands for symbol 0
    seq = body[:i] + body[j:k] + body[i:j] + body[k:]
    z = seq.index(-1)
    seq = seq[z + 1:] + seq[:z]
    return np.array(seq, dtype=np.intp)


def apply_positions(one_line: Sequence[int], i: int, j: int, k: int) -> tuple[int, ...]:
    body = (0,) + tuple(one_line)
    seq = body[:i] + body[j:k] + body[i:j] + body[k:]
    if i == 0:
        z = seq.index(0)
        seq = seq[z:] + seq[:z]
    return seq[1:]


# ---------------------------------------------------------------- tables

@dataclass
class DistanceTable:
    n: int
    dist: np.ndarray
    build_seconds: float = 0.0

    def __post_init__(self):
        if self.dist.shape != (math.factorial(self.n),):
            raise MalformedInputError(f"table for n={self.n} must hold {math.factorial(self.n)} entries")

    def __len__(self) -> int:
        return self.dist.shape[0]

    def distance(self, pi_hat) -> int:
        seq = pi_hat.one_line if isinstance(pi_hat, ExtendedPermutation) else tuple(pi_hat)
        if len(seq) != self.n:
            raise MalformedInputError(f"table is for n={self.n}, got a permutation of length {len(seq)}")
        return int(self.dist[rank(seq)])

    def max_distance(self) -> int:
        return int(self.dist.max())

    def witness(self, pi_hat: ExtendedPermutation) -> list[Cycle]:
        """Optimal sorting sequence, choosing the smallest sorted triple at each step."""
        seq = pi_hat.one_line
        d = self.distance(seq)
        out = []
        while d > 0:
            body = (0,) + seq
            best = None
            for i, j, k in block_moves(self.n):
                nxt = apply_positions(seq, i, j, k)
                if self.dist[rank(nxt)] == d - 1:
                    tau = Cycle((body[i], body[j], body[k]))
                    key = tau.sorted_triple()
                    if best is None or key < best[0]:
                        best = (key, tau, nxt)
            _, tau, seq = best
            out.append(tau)
            d -= 1
        return out

    def save(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        header = TABLE_MAGIC + np.uint16(TABLE_VERSION).tobytes() + np.uint32(self.n).tobytes() + b"\0" * 4
        assert len(header) == 16
        payload = self.dist.astype(np.uint8).tobytes()
        path.write_bytes(header + payload)
        meta = {
            "n": self.n,
            "version": TABLE_VERSION,
            "entries": len(self),
            "sha256": hashlib.sha256(payload).hexdigest(),
            "max_distance": self.max_distance(),
            "build_seconds": round(self.build_seconds, 3),
            "created": time.strftime("%Y-%m-%dT%H:%M:%S"),
        }
        path.with_suffix(path.suffix + ".json").write_text(json.dumps(meta, indent=2) + "\n")
        return path

    @classmethod
    def load(cls, path) -> DistanceTable:
        path = Path(path)
        raw = path.read_bytes()
        if raw[:6] != TABLE_MAGIC:
            raise MalformedInputError(f"{path}: not a distance table")
        version = int(np.frombuffer(raw[6:8], dtype=np.uint16)[0])
        n = int(np.frombuffer(raw[8:12], dtype=np.uint32)[0])
        if version != TABLE_VERSION:
            raise MalformedInputError(f"{path}: table version {version}, expected {TABLE_VERSION}")
        payload = raw[16:]
        if len(payload) != math.factorial(n):
            raise MalformedInputError(f"{path}: truncated table")
        sidecar = path.with_suffix(path.suffix + ".json")
        if sidecar.exists():
            meta = json.loads(sidecar.read_text())
            if meta.get("sha256") != hashlib.sha256(payload).hexdigest():
                raise MalformedInputError(f"{path}: checksum mismatch")
        return cls(n, np.frombuffer(payload, dtype=np.uint8).copy())


def _table_guard(n: int) -> None:
    if n < 0:
        raise DomainError("n must be >= 0")
    if n + 1 > MAX_TABLE_SIZE:
        raise CapacityError(f"n+1 = {n + 1} exceeds the table limit of {MAX_TABLE_SIZE}")


def build_distance_table(n: int, threads: int = 1, chunk: int = 1 << 18) -> DistanceTable:
    """Breadth-first closure from the identity.

    The move set is closed under inverses, so expanding forward from the
    identity gives sorting distances.
    """
    _table_guard(n)
    t0 = time.perf_counter()
    size = math.factorial(n)
    dist = np.full(size, UNREACHED, dtype=np.uint8)
    dist[0] = 0
    moves = [_one_line_index(n, *m) for m in block_moves(n)]
    frontier = np.zeros(1, dtype=np.int64)
    level = 0
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while frontier.size:
            found = []
            for start in range(0, frontier.size, chunk):
                states = unrank_many(frontier[start:start + chunk], n)
                if pool is None:
                    batches = (rank_many(states[:, idx]) for idx in moves)
                else:
                    batches = pool.map(lambda idx: rank_many(states[:, idx]), moves)
                for ranks in batches:
                    new = ranks[dist[ranks] == UNREACHED]
                    if new.size:
                        new = np.unique(new)
                        dist[new] = level + 1
                        found.append(new)
            frontier = np.concatenate(found) if found else np.zeros(0, dtype=np.int64)
            level += 1
    finally:
        if pool is not None:
            pool.shutdown()
    return DistanceTable(n, dist, time.perf_counter() - t0)


def table_path(cache_dir, n: int) -> Path:
    return Path(cache_dir) / f"sbt_table_n{n}_v{TABLE_VERSION}.bin"


def load_or_build_table(n: int, cache_dir=None, use_cache: bool = True, threads: int = 1) -> DistanceTable:
    if cache_dir is not None and use_cache:
        p = table_path(cache_dir, n)
        if p.exists():
            try:
                return DistanceTable.load(p)
            except MalformedInputError:
                pass
    table = build_distance_table(n, threads=threads)
    if cache_dir is not None:
        table.save(table_path(cache_dir, n))
    return table


# ---------------------------------------------------------------- move scoring

def _alpha_data(body: Sequence[int]):
    """Cycle ids, in-cycle offsets and lengths for sigma * pi_hat^-1, plus its norm."""
    n1 = len(body)
    alpha = [0] * n1
    prev = body[-1]
    for x in body:
        alpha[x] = (prev + 1) % n1
        prev = x
    cid = [-1] * n1
    off = [0] * n1
    lengths = []
    odd = 0
    for s in range(n1):
        if cid[s] >= 0:
            continue
        c = len(lengths)
        x, t = s, 0
        while cid[x] < 0:
            cid[x] = c
            off[x] = t
            t += 1
            x = alpha[x]
        lengths.append(t)
        odd += t & 1
    return cid, off, lengths, (n1 - odd) // 2


def move_delta(a: int, b: int, c: int, cid, off, lengths) -> int:
    """Change in odd-cycle count when sigma * pi_hat^-1 is multiplied by (a b c)^-1.

    The product redirects a -> alpha(c), b -> alpha(a), c -> alpha(b). Each
    redirected symbol starts a segment of the old cycle that runs forward to
    the next of a, b, c; following segments yields the new cycles.
    """
    trio = (a, b, c)
    pred = {a: c, b: a, c: b}
    seg_len = {}
    seg_end = {}
    for s in trio:
        cs, os_, L = cid[s], off[s], lengths[cid[s]]
        best, hit = L + 1, s
        for t in trio:
            if cid[t] == cs:
                d = (off[t] - os_) % L or L
                if d < best:
                    best, hit = d, t
        seg_len[s] = best
        seg_end[s] = hit
    # segment starting after s ends at seg_end[s]; that symbol then jumps to alpha(pred(end))
    seen = set()
    after = 0
    for s in trio:
        if s in seen:
            continue
        total = 0
        x = s
        while x not in seen:
            seen.add(x)
            total += seg_len[x]
            x = pred[seg_end[x]]
        after += total & 1
    before = 0
    counted = set()
    for s in trio:
        if cid[s] not in counted:
            counted.add(cid[s])
            before += lengths[cid[s]] & 1
    return after - before


def scored_moves(body: Sequence[int]):
    """All moves from ``body`` as (delta_odd, sorted_triple, (i, j, k), tau_symbols)."""
    cid, off, lengths, norm = _alpha_data(body)
    out = []
    for i, j, k in itertools.combinations(range(len(body)), 3):
        a, b, c = body[i], body[j], body[k]
        mu = move_delta(a, b, c, cid, off, lengths)
        out.append((mu, tuple(sorted((a, b, c))), (i, j, k), (a, b, c)))
    return norm, out


# ---------------------------------------------------------------- IDA*

@dataclass
class SearchResult:
    distance: int | None
    witness: list[Cycle]
    nodes_expanded: int
    method: str
    status: str = FOUND
    lower_bound: int = 0

    @property
    def complete(self) -> bool:
        return self.status == FOUND

    def to_json(self) -> dict:
        return {
            "distance": self.distance,
            "witness": [str(t) for t in self.witness],
            "nodes_expanded": self.nodes_expanded,
            "method": self.method,
            "status": self.status,
            "lower_bound": self.lower_bound,
        }


class _Budget(Exception):
    pass


def exact_distance_ida(pi_hat: ExtendedPermutation, budget: int | None = 10_000_000) -> SearchResult:
    """IDA* with f = depth + 3-norm of sigma * pi_hat^-1 (an admissible bound).

    Children are tried 2-moves first, then by sorted triple, so the returned
    witness is reproducible. A visited map prunes states already reached at
    equal or smaller depth within the same iteration.
    """
    start = pi_hat.one_line
    n = len(start)
    if all(x == i + 1 for i, x in enumerate(start)):
        return SearchResult(0, [], 0, "ida")
    expanded = 0
    path: list[Cycle] = []

    def dfs(seq, g, bound, visited):
        nonlocal expanded
        body = (0,) + seq
        norm, moves = scored_moves(body)
        if norm == 0:
            return True
        expanded += 1
        if budget is not None and expanded > budget:
            raise _Budget
        slack = bound - g - norm
        # f changes by 0 for a 2-move, 1 for a 0-move, 2 for a (-2)-move
        cand = [m for m in moves if (2 - m[0]) // 2 <= slack]
        cand.sort(key=lambda m: (-m[0], m[1]))
        for mu, _, (i, j, k), syms in cand:
            nxt = apply_positions(seq, i, j, k)
            key = nxt
            if visited.get(key, 1 << 30) <= g + 1:
                continue
            visited[key] = g + 1
            path.append(Cycle(syms))
            if dfs(nxt, g + 1, bound, visited):
                return True
            path.pop()
        return False

    h0 = three_norm(sigma_pi_inv(pi_hat))
    bound = h0
    try:
        while True:
            if dfs(start, 0, bound, {start: 0}):
                return SearchResult(bound, list(path), expanded, "ida", FOUND, h0)
            bound += 1
            if bound > 3 * n:  # safety net; never reached for valid input
                raise RuntimeError("IDA* exceeded any possible distance")
    except _Budget:
        return SearchResult(None, [], expanded, "ida", INDETERMINATE, bound)


def distance_via_table(pi_hat: ExtendedPermutation, table: DistanceTable) -> SearchResult:
    w = table.witness(pi_hat)
    return SearchResult(len(w), w, len(w), "bfs-table", FOUND, three_norm(sigma_pi_inv(pi_hat)))


def replay(pi_hat: ExtendedPermutation, witness: Sequence) -> ExtendedPermutation:
    for tau in witness:
        pi_hat = apply(tau, pi_hat)
    return pi_hat


# ---------------------------------------------------------------- (x, y)-sequences

@dataclass(frozen=True)
class SequenceQuery:
    """Look for exactly ``x`` moves, at least ``y`` of them 2-moves, lowering the
    3-norm by at least ``target_norm_drop``. ``sort`` additionally demands the
    identity at the end."""

    x: int
    y: int
    target_norm_drop: int = 0
    budget: int | None = 10_000_000
    sort: bool = False

    def __post_init__(self):
        if self.x < 0 or self.y < 0 or self.target_norm_drop < 0:
            raise DomainError("sequence query values must be non-negative")
        if self.y > self.x:
            raise DomainError(f"y={self.y} exceeds x={self.x}")
        if self.target_norm_drop > self.x:
            raise DomainError(f"a norm drop of {self.target_norm_drop} needs more than {self.x} moves")


@dataclass
class SequenceResult:
    status: str
    witness: list[Cycle]
    nodes_expanded: int

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def to_json(self) -> dict:
        return {"status": self.status, "witness": [str(t) for t in self.witness],
                "nodes_expanded": self.nodes_expanded}


def find_xy_sequence(pi_hat: ExtendedPermutation, q: SequenceQuery) -> SequenceResult:
    expanded = 0
    path: list[Cycle] = []
    start = pi_hat.one_line
    _, _, _, norm0 = _alpha_data((0,) + start)
    seen: set = set()

    def dfs(seq, g, twos, norm):
        nonlocal expanded
        r = q.x - g
        if r == 0:
            return twos >= q.y and norm0 - norm >= q.target_norm_drop and (not q.sort or norm == 0)
        key = (seq, g, twos)
        if key in seen:
            return False
        seen.add(key)
        expanded += 1
        if q.budget is not None and expanded > q.budget:
            raise _Budget
        _, moves = scored_moves((0,) + seq)
        moves.sort(key=lambda m: (-m[0], m[1]))
        for mu, _, (i, j, k), syms in moves:
            t2 = twos + (mu == 2)
            nnorm = norm - mu // 2
            if q.y - t2 > r - 1:
                continue
            if q.target_norm_drop - (norm0 - nnorm) > r - 1:
                continue
            if q.sort and nnorm > r - 1:
                continue
            path.append(Cycle(syms))
            if dfs(apply_positions(seq, i, j, k), g + 1, t2, nnorm):
                return True
            path.pop()
        return False

    try:
        ok = dfs(start, 0, 0, norm0)
    except _Budget:
        return SequenceResult(INDETERMINATE, [], expanded)
    return SequenceResult(FOUND if ok else ABSENT, list(path) if ok else [], expanded)


# ---------------------------------------------------------------- diameter

def three_perm_mask(n: int, chunk: int = 1 << 18) -> np.ndarray:
    """Boolean mask over ranks: True where sigma * pi_hat^-1 has only 1- and 3-cycles."""
    _table_guard(n)
    size = math.factorial(n)
    n1 = n + 1
    mask = np.zeros(size, dtype=bool)
    ident = np.arange(n1)
    for start in range(0, size, chunk):
        ranks = np.arange(start, min(size, start + chunk), dtype=np.int64)
        body = np.zeros((ranks.size, n1), dtype=np.intp)
        body[:, 1:] = unrank_many(ranks, n).astype(np.intp) + 1
        vals = (np.roll(body, 1, axis=1) + 1) % n1
        alpha = np.empty_like(body)
        np.put_along_axis(alpha, body, vals, axis=1)
        a3 = np.take_along_axis(alpha, np.take_along_axis(alpha, alpha, axis=1), axis=1)
        mask[start:start + ranks.size] = (a3 == ident).all(axis=1)
    return mask


@dataclass
class DiameterResult:
    n: int
    filter: str
    max_distance: int
    argmax_ranks: np.ndarray
    universe: int

    def argmax(self, limit: int | None = None) -> list[ExtendedPermutation]:
        ranks = self.argmax_ranks if limit is None else self.argmax_ranks[:limit]
        return [from_one_line(unrank(int(r), self.n)) for r in ranks]

    def to_json(self, limit: int = 20) -> dict:
        return {
            "n": self.n,
            "filter": self.filter,
            "universe": self.universe,
            "max_distance": self.max_distance,
            "argmax_count": int(self.argmax_ranks.size),
            "argmax": [str(p) for p in self.argmax(limit)],
        }


def diameter_scan(n: int, filter: str = "all", table: DistanceTable | None = None) -> DiameterResult:
    if filter not in ("all", "3perm"):
        raise DomainError(f"unknown filter {filter!r}")
    _table_guard(n)
    if filter == "3perm" and (n + 1) % 3:
        raise DomainError(f"3-permutations need n+1 divisible by 3, got {n + 1}")
    table = table if table is not None else build_distance_table(n)
    dist = table.dist
    if filter == "3perm":
        mask = three_perm_mask(n)
        ranks = np.flatnonzero(mask)
        sub = dist[ranks]
    else:
        ranks = np.arange(dist.size)
        sub = dist
    mx = int(sub.max())
    return DiameterResult(n, filter, mx, ranks[sub == mx], int(ranks.size))


# ---------------------------------------------------------------- 3-norm oracle

ORACLE_MAX_SYMBOLS = 8


@lru_cache(maxsize=None)
def _three_cycle_closure(size: int) -> dict:
    gens = []
    for a, b, c in itertools.combinations(range(size), 3):
        for t in ((a, b, c), (a, c, b)):
            img = list(range(size))
            img[t[0]], img[t[1]], img[t[2]] = t[1], t[2], t[0]
            gens.append(tuple(img))
    start = tuple(range(size))
    dist = {start: 0}
    frontier = [start]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[x] for x in p)
                if q not in dist:
                    dist[q] = d
                    nxt.append(q)
        frontier = nxt
    return dist


def three_norm_oracle(alpha: Permutation) -> int:
    """Breadth-first count of 3-cycle multiplications needed to reach alpha."""
    size = alpha.n_plus_1
    if size > ORACLE_MAX_SYMBOLS:
        raise CapacityError(f"oracle limited to {ORACLE_MAX_SYMBOLS} symbols")
    if not cycle_decomposition(alpha).is_even():
        raise ParityError(f"{alpha} is odd")
    return _three_cycle_closure(size)[alpha.images]


# ---------------------------------------------------------------- verification suites

@dataclass
class VerifyReport:
    suite: str
    passed: bool
    status: str = "pass"
    details: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "status": self.status,
                "details": self.details, "mismatches": self.mismatches}


WORKED_START = (23, 22, 21, 1, 6, 5, 11, 20, 10, 9, 8, 13, 4, 3, 7, 12, 18, 2, 17, 16, 15, 14, 19)
WORKED_MOVES = ((1, 20, 10), (2, 17, 7), (4, 18, 11))
WORKED_TARGET = "(0 23 22 21 20 1 6 5 4 3 2 7 12 11 10 9 8 13 18 17 16 15 14 19)"


def verify_worked_example() -> VerifyReport:
    from .structure import analyze, classify_move, is_applicable

    pi_hat = from_one_line(WORKED_START)
    mism = []
    steps = []
    norm_before = three_norm(sigma_pi_inv(pi_hat))
    cur = pi_hat
    for t in WORKED_MOVES:
        if not is_applicable(t, cur):
            mism.append(f"{Cycle(t)} not applicable to {cur.cycle_text()}")
            break
        mu = classify_move(t, cur)
        if mu != 2:
            mism.append(f"{Cycle(t)} is a {mu}-move, expected a 2-move")
        cur = apply(t, cur)
        steps.append({"tau": str(Cycle(t)), "mu": mu, "result": cur.cycle_text()})
    if cur.cycle_text() != WORKED_TARGET:
        mism.append(f"final {cur.cycle_text()} != {WORKED_TARGET}")
    rep = analyze(cur)
    if not (rep.is_palisade and rep.phi == 4):
        mism.append(f"final permutation is not a 4-palisade (phi={rep.phi})")
    norm_after = three_norm(sigma_pi_inv(cur))
    if norm_before - len(WORKED_MOVES) != norm_after:
        mism.append(f"norm {norm_before} -> {norm_after} is not a drop of {len(WORKED_MOVES)}")
    details = {"start": pi_hat.cycle_text(), "steps": steps, "final": cur.cycle_text(),
               "phi": rep.phi, "norm_before": norm_before, "norm_after": norm_after}
    return VerifyReport("example7", not mism, "pass" if not mism else "fail", details, mism)


def verify_no_54_sequence(budget: int | None = 20_000_000) -> VerifyReport:
    from .generators import make_palisade

    pal = make_palisade(2)
    res = find_xy_sequence(pal, SequenceQuery(5, 4, 4, budget))
    details = {"permutation": str(pal), "query": {"x": 5, "y": 4, "target_norm_drop": 4},
               "result": res.to_json()}
    if res.status == INDETERMINATE:
        return VerifyReport("lemma3-54", False, INDETERMINATE, details, ["budget exhausted"])
    ok = res.status == ABSENT
    return VerifyReport("lemma3-54", ok, "pass" if ok else "fail", details,
                        [] if ok else [f"unexpected witness {details['result']['witness']}"])


def verify_td3(n: int, table: DistanceTable | None = None) -> VerifyReport:
    from .bounds import td3

    expected = td3(n)
    res = diameter_scan(n, "3perm", table)
    ok = res.max_distance == expected
    return VerifyReport("td3", ok, "pass" if ok else "fail",
                        {"expected": expected, **res.to_json(limit=10)},
                        [] if ok else [f"scan max {res.max_distance} != td3({n}) = {expected}"])


def verify_move_classes(max_size: int = 7, random_cases: int = 10_000, max_random_size: int = 30,
                 seed: int = 0) -> VerifyReport:
    import random

    from .perm_core import enumerate_applicable, is_applicable, is_n_plus_1_cycle

    mism = []
    checked = 0

    def check(pi_hat):
        nonlocal checked
        before = cycle_decomposition(sigma_pi_inv(pi_hat)).odd_count
        for tau in enumerate_applicable(pi_hat):
            after = cycle_decomposition(sigma_pi_inv(apply(tau, pi_hat))).odd_count
            checked += 1
            if after - before not in (-2, 0, 2):
                mism.append(f"{tau} on {pi_hat}: delta {after - before}")

    extremes = []
    for n in range(0, max_size):
        for seq in itertools.permutations(range(1, n + 1)):
            pi_hat = from_one_line(seq)
            check(pi_hat)
            odd = cycle_decomposition(sigma_pi_inv(pi_hat)).odd_count
            if (odd == n + 1) != pi_hat.is_identity():
                extremes.append(str(pi_hat))
    rng = random.Random(seed)
    for _ in range(random_cases):
        n = rng.randint(max_size, max_random_size)
        seq = list(range(1, n + 1))
        rng.shuffle(seq)
        pi_hat = from_one_line(seq)
        tau = rng.sample(range(n + 1), 3)
        # pick the applicable orientation of a random triple
        if not is_applicable(tau, pi_hat):
            tau = [tau[0], tau[2], tau[1]]
        before = cycle_decomposition(sigma_pi_inv(pi_hat)).odd_count
        after_pi = apply(tau, pi_hat)
        assert is_n_plus_1_cycle(after_pi.perm)
        after = cycle_decomposition(sigma_pi_inv(after_pi)).odd_count
        checked += 1
        if after - before not in (-2, 0, 2):
            mism.append(f"{tau} on {pi_hat}: delta {after - before}")
    mism.extend(f"max odd count not unique to identity: {e}" for e in extremes)
    ok = not mism
    return VerifyReport("prop1", ok, "pass" if ok else "fail",
                        {"moves_checked": checked, "exhaustive_max_size": max_size,
                         "random_cases": random_cases}, mism[:20])


def verify_norm_oracle(max_size: int = 7) -> VerifyReport:
    mism = []
    checked = 0
    for size in range(1, max_size + 1):
        for images in _three_cycle_closure(size):
            alpha = Permutation(images)
            checked += 1
            if three_norm(alpha) != three_norm_oracle(alpha):
                mism.append(str(alpha))
    ok = not mism
    return VerifyReport("lemma1", ok, "pass" if ok else "fail",
                        {"even_permutations_checked": checked, "max_size": max_size}, mism[:20])


def table_norms(n: int, chunk: int = 1 << 18) -> np.ndarray:
    """3-norm of sigma * pi_hat^-1 for every rank, vectorised."""
    size = math.factorial(n)
    n1 = n + 1
    out = np.zeros(size, dtype=np.uint8)
    for start in range(0, size, chunk):
        ranks = np.arange(start, min(size, start + chunk), dtype=np.int64)
        m = ranks.size
        body = np.zeros((m, n1), dtype=np.intp)
        if n:
            body[:, 1:] = unrank_many(ranks, n).astype(np.intp) + 1
        vals = (np.roll(body, 1, axis=1) + 1) % n1
        alpha = np.empty_like(body)
        np.put_along_axis(alpha, body, vals, axis=1)
        # count odd cycles by walking every symbol until it returns
        x = np.tile(np.arange(n1), (m, 1))
        length = np.zeros((m, n1), dtype=np.int64)
        cur = x.copy()
        done = np.zeros((m, n1), dtype=bool)
        for step in range(1, n1 + 1):
            cur = np.take_along_axis(alpha, cur, axis=1)
            newly = (cur == x) & ~done
            length[newly] = step
            done |= newly
        # each cycle of length L is counted by its L members; weight 1/L
        odd = ((length % 2 == 1) / length).sum(axis=1)
        out[start:start + m] = np.rint((n1 - odd) / 2).astype(np.uint8)
    return out


def verify_chain(max_size: int = 9, tables: dict | None = None) -> VerifyReport:
    mism = []
    checked = 0
    per_n = {}
    for n in range(0, max_size):
        table = (tables or {}).get(n) or build_distance_table(n)
        norms = table_norms(n)
        d = table.dist.astype(np.int64)
        ub = np.array([upper_bound(int(v)) for v in range(int(norms.max()) + 1)])[norms]
        bad_low = np.flatnonzero(d < norms)
        bad_up = np.flatnonzero(d > ub)
        checked += d.size
        per_n[n] = {"states": int(d.size), "max_distance": int(d.max()),
                    "tight_lower": int((d == norms).sum()), "tight_upper": int((d == ub).sum())}
        for r in bad_low[:5]:
            mism.append(f"lower bound violated at {unrank(int(r), n)}")
        for r in bad_up[:5]:
            mism.append(f"upper bound violated at {unrank(int(r), n)}")
    ok = not mism
    return VerifyReport("chain", ok, "pass" if ok else "fail",
                        {"states_checked": checked, "per_n": per_n}, mism)
