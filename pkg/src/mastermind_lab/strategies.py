"""Candidate scoring and move selection.

Every strategy here plays only consistent candidates.  The quantitative
basis is the partition table: for a candidate ``c`` and consistent set ``F``,
the members of ``F`` (other than ``c`` itself) are grouped by the response
they would return if ``c`` were played.  Each group is the subset that would
remain feasible after that response, so the row of group sizes summarizes
how ``c`` splits the remaining search space.

Scoring rules over a candidate's partition row:

* ``min-worst``      minimize the largest group (classic minimax),
* ``expected-size``  minimize the prior-weighted mean group size,
* ``most-parts``     maximize the number of nonempty groups,
* ``entropy``        maximize the Shannon entropy of the group sizes,
* ``random``         skip scoring, draw uniformly from the consistent set.

Two hybrids combine the top-scorer sets of entropy and most-parts:

* ``plus``   draws from their intersection, falling back to the union when
  the intersection is empty;
* ``plus2``  keeps the entropy top scorers and, among them, those with the
  maximal most-parts score (computed against the full consistent set).

``plus2-swapped`` applies the two refinements of plus2 in the opposite
order; it is wired through the same interface for completeness.

Ties are resolved only at selection time: a uniform draw from the top set,
or the lexicographically first member in deterministic mode.  Top sets are
computed with exact tie detection (integer scores compared exactly; entropy
compared through a canonical sorted sum so identical partitions always tie).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np

from .codes import Code, CodeError, CodeSpace, Response, parse_code
from .consistency import ConsistentSet

# scored-set memo entries kept per space before the memo is reset
MEMO_MAX_ENTRIES = 120_000


class EmptyConsistentSetError(ValueError):
    """Raised when a move is requested from an empty consistent set."""


class StrategyKind(str, Enum):
    RANDOM = "random"
    MIN_WORST = "min-worst"
    EXPECTED_SIZE = "expected-size"
    MOST_PARTS = "most-parts"
    ENTROPY = "entropy"
    PLUS = "plus"
    PLUS2 = "plus2"
    PLUS2_SWAPPED = "plus2-swapped"

    def __str__(self) -> str:
        return self.value


BASE_KINDS = frozenset(
    {
        StrategyKind.MIN_WORST,
        StrategyKind.EXPECTED_SIZE,
        StrategyKind.MOST_PARTS,
        StrategyKind.ENTROPY,
    }
)

HYBRID_KINDS = frozenset(
    {StrategyKind.PLUS, StrategyKind.PLUS2, StrategyKind.PLUS2_SWAPPED}
)

# kinds whose optimum is the maximum score; the others minimize
MAXIMIZING_KINDS = frozenset({StrategyKind.MOST_PARTS, StrategyKind.ENTROPY})


def strategy_from_name(name: str) -> StrategyKind:
    try:
        return StrategyKind(name)
    except ValueError:
        valid = ", ".join(k.value for k in StrategyKind)
        raise ValueError(f"unknown strategy {name!r}; expected one of: {valid}")


@dataclass(frozen=True)
class PartitionTable:
    """Response-group sizes for one candidate against a consistent set."""

    candidate: Code
    counts: dict[Response, int]
    total: int


@dataclass(frozen=True)
class ScoredSet:
    """All candidate scores plus the subset attaining the optimum."""

    kind: StrategyKind
    scores: dict[Code, float]
    top: list[Code]


# ---------------------------------------------------------------------------
# vectorized scoring core
# ---------------------------------------------------------------------------


def _xlogx_table(space: CodeSpace) -> np.ndarray:
    table = getattr(space, "_xlogx", None)
    if table is None or table.size < space.size + 1:
        k = np.arange(space.size + 1, dtype=np.float64)
        with np.errstate(divide="ignore", invalid="ignore"):
            table = k * np.log(k)
        table[0] = 0.0
        space._xlogx = table
    return table


def counts_matrix(space: CodeSpace, members: np.ndarray) -> np.ndarray:
    """Partition rows for every member of ``members`` against the rest.

    Row ``i`` holds, per response index, how many other members would return
    that response if member ``i`` were played.  The self comparison (always
    the all-black response) is excluded, so the all-black column is zero.
    """
    n = len(members)
    nresp = space.n_response_codes
    sub = space.pair_submatrix(members).astype(np.int64)
    sub += (np.arange(n, dtype=np.int64) * nresp)[:, None]
    matrix = np.bincount(sub.ravel(), minlength=n * nresp).reshape(n, nresp)
    matrix[:, space.all_black_index] -= 1
    return matrix


def _entropy_order_stat(space: CodeSpace, matrix: np.ndarray) -> np.ndarray:
    # sum of k*ln(k) over each row's counts; minimizing it maximizes entropy
    # because every row sums to the same total.  Summing in sorted order makes
    # identical partitions produce bit-identical floats, so exact ties hold.
    table = _xlogx_table(space)
    return table[np.sort(matrix, axis=1)].sum(axis=1)


def _top_positions(values: np.ndarray, maximize: bool) -> np.ndarray:
    best = values.max() if maximize else values.min()
    return np.nonzero(values == best)[0]


def tops_for(
    space: CodeSpace, members: np.ndarray, kinds: Iterable[StrategyKind]
) -> dict[StrategyKind, np.ndarray]:
    """Top-scorer member indices per requested kind, memoized per space.

    All requested kinds are computed from a single partition pass.  Entries
    are keyed by the exact member set, so repeated positions (common across
    games sharing a move prefix) are served from the memo.
    """
    wanted = set(kinds)
    key = members.tobytes()
    entry = space.memo.get(key)
    if entry is not None and wanted <= entry.keys():
        return {k: entry[k] for k in wanted}

    needed = set(wanted)
    if needed & HYBRID_KINDS:
        needed |= {StrategyKind.ENTROPY, StrategyKind.MOST_PARTS}

    matrix = counts_matrix(space, members)
    computed: dict[StrategyKind, np.ndarray] = {}

    entropy_pos = mostparts_scores = None
    if StrategyKind.ENTROPY in needed:
        entropy_pos = _top_positions(_entropy_order_stat(space, matrix), maximize=False)
        computed[StrategyKind.ENTROPY] = members[entropy_pos]
    if needed & {StrategyKind.MOST_PARTS, StrategyKind.PLUS2, StrategyKind.PLUS2_SWAPPED}:
        mostparts_scores = (matrix > 0).sum(axis=1)
    if StrategyKind.MOST_PARTS in needed:
        computed[StrategyKind.MOST_PARTS] = members[
            _top_positions(mostparts_scores, maximize=True)
        ]
    if StrategyKind.MIN_WORST in needed:
        computed[StrategyKind.MIN_WORST] = members[
            _top_positions(matrix.max(axis=1), maximize=False)
        ]
    if StrategyKind.EXPECTED_SIZE in needed:
        # integer numerators of the prior-weighted mean keep ties exact
        numer = matrix @ matrix.sum(axis=0)
        computed[StrategyKind.EXPECTED_SIZE] = members[
            _top_positions(numer, maximize=False)
        ]
    if StrategyKind.PLUS in needed:
        both = np.intersect1d(
            computed[StrategyKind.ENTROPY], computed[StrategyKind.MOST_PARTS]
        )
        if both.size == 0:
            both = np.union1d(
                computed[StrategyKind.ENTROPY], computed[StrategyKind.MOST_PARTS]
            )
        computed[StrategyKind.PLUS] = both
    if StrategyKind.PLUS2 in needed:
        mp_within = mostparts_scores[entropy_pos]
        computed[StrategyKind.PLUS2] = members[
            entropy_pos[np.nonzero(mp_within == mp_within.max())[0]]
        ]
    if StrategyKind.PLUS2_SWAPPED in needed:
        stat = _entropy_order_stat(space, matrix)
        mp_pos = _top_positions(mostparts_scores, maximize=True)
        ent_within = stat[mp_pos]
        computed[StrategyKind.PLUS2_SWAPPED] = members[
            mp_pos[np.nonzero(ent_within == ent_within.min())[0]]
        ]

    for arr in computed.values():
        arr.setflags(write=False)

    with space.memo_lock:
        if len(space.memo) >= MEMO_MAX_ENTRIES:
            space.memo.clear()
        entry = space.memo.setdefault(key, {})
        entry.update(computed)
    return {k: entry[k] for k in wanted}


def selection_pool(current: ConsistentSet, kind: StrategyKind) -> np.ndarray:
    """Member indices the next move is drawn from, for any strategy kind."""
    if len(current) == 0:
        raise EmptyConsistentSetError("no consistent codes remain")
    if kind is StrategyKind.RANDOM:
        return current.indices
    return tops_for(current.space, current.indices, {kind})[kind]


# ---------------------------------------------------------------------------
# per-candidate views
# ---------------------------------------------------------------------------


def partition_table(candidate: Code, current: ConsistentSet) -> PartitionTable:
    """Response-group sizes of ``candidate`` against the consistent set.

    The candidate itself is excluded when it is a member, so the total is
    ``len(F) - 1`` for members and ``len(F)`` otherwise.
    """
    if len(current) == 0:
        raise EmptyConsistentSetError("cannot partition an empty consistent set")
    space = current.space
    row = space.respond_row(space.index_of(candidate), current.indices)
    binned = np.bincount(row, minlength=space.n_response_codes)
    member = candidate in current
    binned[space.all_black_index] = 0
    counts = {
        space.decode_response(i): int(c) for i, c in enumerate(binned) if c > 0
    }
    return PartitionTable(candidate, counts, len(current) - (1 if member else 0))


def score(candidate: Code, current: ConsistentSet, kind: StrategyKind) -> float:
    """Scalar score of one candidate under a base scoring rule."""
    if kind not in BASE_KINDS:
        raise ValueError(f"{kind} has no scalar score; only base kinds are scored")
    table = partition_table(candidate, current)
    sizes = table.counts.values()
    if kind is StrategyKind.MIN_WORST:
        return float(max(sizes, default=0))
    if kind is StrategyKind.MOST_PARTS:
        return float(len(table.counts))
    if kind is StrategyKind.ENTROPY:
        total = table.total
        return -sum((c / total) * math.log(c / total) for c in sizes)
    # expected-size: priors from the full partition matrix over the set
    space = current.space
    matrix = counts_matrix(space, current.indices)
    column_sums = matrix.sum(axis=0)
    grand = column_sums.sum()
    if grand == 0:  # singleton set: no comparisons at all
        return 0.0
    row = np.zeros(space.n_response_codes, dtype=np.int64)
    for response, c in table.counts.items():
        row[space.response_index(response)] = c
    return float((row * column_sums).sum() / grand)


def top_scorers(current: ConsistentSet, kind: StrategyKind) -> ScoredSet:
    """Scores for every member plus the optimal subset, for base kinds."""
    if kind not in BASE_KINDS:
        raise ValueError(f"top_scorers applies to base scoring kinds, not {kind}")
    if len(current) == 0:
        raise EmptyConsistentSetError("cannot score an empty consistent set")
    space = current.space
    members = current.indices
    matrix = counts_matrix(space, members)
    if kind is StrategyKind.ENTROPY:
        stat = _entropy_order_stat(space, matrix)
        total = len(current) - 1
        if total > 0:
            values = math.log(total) - stat / total
        else:
            values = np.zeros(len(members))
        pos = _top_positions(stat, maximize=False)
    elif kind is StrategyKind.MOST_PARTS:
        values = (matrix > 0).sum(axis=1).astype(np.float64)
        pos = _top_positions(values, maximize=True)
    elif kind is StrategyKind.MIN_WORST:
        values = matrix.max(axis=1).astype(np.float64)
        pos = _top_positions(values, maximize=False)
    else:
        numer = matrix @ matrix.sum(axis=0)
        grand = matrix.sum()
        values = numer / grand if grand > 0 else numer.astype(np.float64)
        pos = _top_positions(numer, maximize=False)
    scores = {
        space.code_at(int(m)): float(v) for m, v in zip(members, values)
    }
    top = [space.code_at(int(members[p])) for p in pos]
    return ScoredSet(kind, scores, top)


# ---------------------------------------------------------------------------
# move selection
# ---------------------------------------------------------------------------


def _draw(pool: np.ndarray, rng: random.Random, deterministic: bool) -> int:
    if deterministic or len(pool) == 1:
        return int(pool[0])
    return int(pool[rng.randrange(len(pool))])


def next_move(
    current: ConsistentSet,
    kind: StrategyKind,
    rng: random.Random,
    deterministic: bool = False,
) -> Code:
    """Choose the next guess: a uniform draw from the kind's top set.

    Deterministic mode picks the lexicographically first top scorer instead,
    making selection a pure function of the set and the kind.
    """
    pool = selection_pool(current, kind)
    return current.space.code_at(_draw(pool, rng, deterministic))


def next_move_plus(
    current: ConsistentSet, rng: random.Random, deterministic: bool = False
) -> Code:
    return next_move(current, StrategyKind.PLUS, rng, deterministic)


def next_move_plus2(
    current: ConsistentSet, rng: random.Random, deterministic: bool = False
) -> Code:
    return next_move(current, StrategyKind.PLUS2, rng, deterministic)


# ---------------------------------------------------------------------------
# first move
# ---------------------------------------------------------------------------

FIRST_MOVE_HALF = "abca-style"
FIRST_MOVE_DISTINCT = "abcd-style"
FIRST_MOVE_POLICIES = (FIRST_MOVE_HALF, FIRST_MOVE_DISTINCT)


def first_move(kappa: int, ell: int, policy: str | Code) -> Code:
    """Resolve the fixed opening guess.

    ``abca-style`` cycles through symbols 0..floor(ell/2) (capped at the
    alphabet size), e.g. ABCA for length 4.  ``abcd-style`` plays the first
    ``ell`` distinct symbols and requires ``kappa >= ell``.  Anything else is
    treated as an explicit code literal and validated.
    """
    if isinstance(policy, Code):
        return parse_code(str(policy), kappa, ell)
    if policy == FIRST_MOVE_HALF:
        period = min(ell // 2 + 1, kappa)
        return Code(tuple(i % period for i in range(ell)))
    if policy == FIRST_MOVE_DISTINCT:
        if kappa < ell:
            raise CodeError(
                f"abcd-style first move needs kappa >= ell, got {kappa} < {ell}"
            )
        return Code(tuple(range(ell)))
    return parse_code(policy, kappa, ell)
