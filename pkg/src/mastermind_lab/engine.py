"""Play full games against an honest oracle and record per-move telemetry.

Each game fixes a secret, plays the configured opening guess, then filters
the consistent set and lets the strategy choose from its top scorers until
the all-black response arrives.  Every move logs the consistent-set size it
was chosen from, the top-scorer pool size, whether the secret was in that
pool (and in the most-parts pool, kept for cross-strategy analysis), and the
resulting draw probability.

Records serialize to one JSON object per game and can be replayed bit-for-
bit from their stored seed, which is how tampering and drift are detected.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .codes import Code, CodeSpace, Response, parse_code, space_for
from .consistency import ConsistentSet, PlayedMove, filter_consistent, full_set
from .strategies import StrategyKind, tops_for

DEFAULT_MAX_MOVES = 15


class EngineError(RuntimeError):
    """Internal inconsistency while simulating against an honest oracle."""


@dataclass(frozen=True)
class MoveTelemetry:
    """What the strategy saw and did at one move."""

    move_index: int
    set_size_before: int
    top_set_size: int
    secret_in_top: bool
    secret_in_mostparts_top: bool
    draw_probability: float
    guess: Code
    response: Response


@dataclass(frozen=True)
class GameRecord:
    """One complete game: configuration, move list, and outcome."""

    kappa: int
    ell: int
    secret: Code
    strategy: StrategyKind
    first_move: Code
    seed: int
    deterministic: bool
    solved: bool
    max_moves: int = DEFAULT_MAX_MOVES
    moves: tuple[MoveTelemetry, ...] = field(default_factory=tuple)

    @property
    def n_moves(self) -> int:
        return len(self.moves)


@dataclass(frozen=True)
class ReplayResult:
    ok: bool
    first_divergence: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def _member(pool: np.ndarray, index: int) -> bool:
    pos = int(np.searchsorted(pool, index))
    return pos < len(pool) and int(pool[pos]) == index


def play_game(
    space: CodeSpace,
    secret: Code,
    strategy: StrategyKind,
    first: Code,
    max_moves: int = DEFAULT_MAX_MOVES,
    seed: int = 0,
    deterministic: bool = False,
) -> GameRecord:
    """Simulate one game; the oracle answers honestly for ``secret``.

    The opening guess is never scored: its telemetry row uses a top-set size
    of one, so per-move aggregates effectively start at the second move.
    Exceeding ``max_moves`` yields a failure record rather than an exception.
    """
    if max_moves < 1:
        raise ValueError(f"max_moves must be >= 1, got {max_moves}")
    secret_index = space.index_of(secret)
    space.index_of(first)
    rng = random.Random(seed)
    matrix = space.pair_matrix()

    current = full_set(space)
    guess = first
    pool_size = 1
    in_top = first == secret
    in_mp_top = in_top
    rows: list[MoveTelemetry] = []
    solved = False

    for move_index in range(1, max_moves + 1):
        guess_index = space.index_of(guess)
        if matrix is not None:
            response = space.decode_response(int(matrix[guess_index, secret_index]))
        else:
            response = space.decode_response(
                int(space.respond_row(guess_index, np.asarray([secret_index]))[0])
            )
        rows.append(
            MoveTelemetry(
                move_index=move_index,
                set_size_before=len(current),
                top_set_size=pool_size,
                secret_in_top=in_top,
                secret_in_mostparts_top=in_mp_top,
                draw_probability=(1.0 / pool_size) if in_top else 0.0,
                guess=guess,
                response=response,
            )
        )
        if response.black == space.ell:
            solved = True
            break

        current = filter_consistent(current, PlayedMove(guess, response))
        if len(current) == 0:
            raise EngineError(
                f"consistent set emptied for secret {secret} at move {move_index}: "
                "the oracle is honest, so this is a bug"
            )
        if strategy is StrategyKind.RANDOM:
            pool = current.indices
            mp_pool = tops_for(space, current.indices, {StrategyKind.MOST_PARTS})[
                StrategyKind.MOST_PARTS
            ]
        else:
            tops = tops_for(
                space, current.indices, {strategy, StrategyKind.MOST_PARTS}
            )
            pool = tops[strategy]
            mp_pool = tops[StrategyKind.MOST_PARTS]
        pool_size = len(pool)
        in_top = _member(pool, secret_index)
        in_mp_top = in_top if pool is mp_pool else _member(mp_pool, secret_index)
        if deterministic or pool_size == 1:
            guess = space.code_at(int(pool[0]))
        else:
            guess = space.code_at(int(pool[rng.randrange(pool_size)]))

    return GameRecord(
        kappa=space.kappa,
        ell=space.ell,
        secret=secret,
        strategy=strategy,
        first_move=first,
        seed=seed,
        deterministic=deterministic,
        solved=solved,
        max_moves=max_moves,
        moves=tuple(rows),
    )


def replay_check(record: GameRecord) -> ReplayResult:
    """Re-simulate from the stored seed and compare move-for-move.

    Returns ok=False with the 1-based index of the first divergent move when
    the stored record cannot be reproduced (tampering, seed mismatch, or a
    behavioral change in the strategies).
    """
    space = space_for(record.kappa, record.ell)
    fresh = play_game(
        space,
        record.secret,
        record.strategy,
        record.first_move,
        max_moves=record.max_moves,
        seed=record.seed,
        deterministic=record.deterministic,
    )
    for i, (a, b) in enumerate(zip(record.moves, fresh.moves), start=1):
        if a.guess != b.guess or a.response != b.response:
            return ReplayResult(False, i)
    if fresh.n_moves != record.n_moves:
        return ReplayResult(False, min(fresh.n_moves, record.n_moves) + 1)
    return ReplayResult(True)


# ---------------------------------------------------------------------------
# JSON round-trip (one object per game; codes in letter form)
# ---------------------------------------------------------------------------


def record_to_dict(record: GameRecord) -> dict[str, Any]:
    return {
        "kappa": record.kappa,
        "ell": record.ell,
        "secret": str(record.secret),
        "strategy": record.strategy.value,
        "first_move": str(record.first_move),
        "seed": record.seed,
        "deterministic": record.deterministic,
        "solved": record.solved,
        "max_moves": record.max_moves,
        "n_moves": record.n_moves,
        "moves": [
            {
                "move_index": m.move_index,
                "set_size_before": m.set_size_before,
                "top_set_size": m.top_set_size,
                "secret_in_top": m.secret_in_top,
                "secret_in_mostparts_top": m.secret_in_mostparts_top,
                "draw_probability": m.draw_probability,
                "guess": str(m.guess),
                "response": {"black": m.response.black, "white": m.response.white},
            }
            for m in record.moves
        ],
    }


def record_from_dict(data: dict[str, Any]) -> GameRecord:
    kappa = int(data["kappa"])
    ell = int(data["ell"])
    moves = tuple(
        MoveTelemetry(
            move_index=int(m["move_index"]),
            set_size_before=int(m["set_size_before"]),
            top_set_size=int(m["top_set_size"]),
            secret_in_top=bool(m["secret_in_top"]),
            secret_in_mostparts_top=bool(m["secret_in_mostparts_top"]),
            draw_probability=float(m["draw_probability"]),
            guess=parse_code(m["guess"], kappa, ell),
            response=Response(int(m["response"]["black"]), int(m["response"]["white"])),
        )
        for m in data["moves"]
    )
    return GameRecord(
        kappa=kappa,
        ell=ell,
        secret=parse_code(data["secret"], kappa, ell),
        strategy=StrategyKind(data["strategy"]),
        first_move=parse_code(data["first_move"], kappa, ell),
        seed=int(data["seed"]),
        deterministic=bool(data["deterministic"]),
        solved=bool(data["solved"]),
        max_moves=int(data.get("max_moves", DEFAULT_MAX_MOVES)),
        moves=moves,
    )
