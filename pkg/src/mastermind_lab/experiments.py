"""Batch experiment protocols: full-space repetition runs, fixed instance
sets, aggregation into per-move tables, and paired strategy comparisons.

A run plays every secret in scope for every configured strategy.  The secret
sequence is identical (same order) across strategies so per-game move counts
pair up for the signed-rank test, and each game draws its tie-break stream
from a seed derived by stable labeled hashing of (master seed, strategy,
game index) — adding a strategy never perturbs another strategy's games, and
results are bit-identical regardless of worker count.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .codes import Code, parse_code, space_for
from .engine import (
    DEFAULT_MAX_MOVES,
    GameRecord,
    play_game,
    record_to_dict,
)
from .stats import PairedSample, mean_sem, wilcoxon_signed_rank
from .strategies import FIRST_MOVE_HALF, StrategyKind, first_move

WORKER_ENV_VAR = "MM_THREADS"

PERMOVE_COLUMNS = [
    "strategy",
    "move",
    "mean_set_size",
    "sd_set_size",
    "frac_secret_in_top",
    "mean_draw_prob",
    "frac_secret_in_top_cum",
    "frac_secret_in_mostparts_top_cum",
    "games",
]
HIST_COLUMNS = ["strategy", "n_moves", "count"]
DIFF_COLUMNS = ["strategy_a", "strategy_b", "move", "count_diff", "score_diff"]


def derive_seed(master: int, *labels: object) -> int:
    """Stable 63-bit stream seed from a master seed and labels."""
    text = "|".join([str(master), *map(str, labels)])
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big") >> 1


# ---------------------------------------------------------------------------
# instance sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InstanceSet:
    """A fixed multiset of secrets used when full-space repetition is too slow."""

    kappa: int
    ell: int
    codes: tuple[Code, ...]
    seed: int | None = None


def generate_instance_set(
    kappa: int, ell: int, size: int, rng: random.Random, seed: int | None = None
) -> InstanceSet:
    """Every code once plus ``size - kappa**ell`` distinct extras, shuffled.

    The extras are drawn uniformly without replacement, so no code appears
    more than twice.
    """
    space = space_for(kappa, ell)
    n = space.size
    if not n <= size <= 2 * n:
        raise ValueError(
            f"instance set size must be within [{n}, {2 * n}] for kappa={kappa} "
            f"ell={ell}, got {size}"
        )
    picks = list(range(n)) + rng.sample(range(n), size - n)
    rng.shuffle(picks)
    return InstanceSet(
        kappa, ell, tuple(space.code_at(i) for i in picks), seed=seed
    )


def save_instances(path: str | Path, instances: InstanceSet) -> None:
    path = Path(path)
    seed_text = "none" if instances.seed is None else str(instances.seed)
    with path.open("w", encoding="utf-8") as fh:
        fh.write(f"# kappa={instances.kappa} ell={instances.ell} seed={seed_text}\n")
        for code in instances.codes:
            fh.write(f"{code}\n")


def load_instances(path: str | Path) -> InstanceSet:
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith("#"):
            raise ValueError(f"{path}: missing '# kappa=.. ell=.. seed=..' header")
        fields = dict(
            part.split("=", 1) for part in header.lstrip("#").split() if "=" in part
        )
        kappa = int(fields["kappa"])
        ell = int(fields["ell"])
        seed = None if fields.get("seed") in (None, "none") else int(fields["seed"])
        codes = tuple(
            parse_code(line.strip(), kappa, ell) for line in fh if line.strip()
        )
    return InstanceSet(kappa, ell, codes, seed=seed)


# ---------------------------------------------------------------------------
# configuration and summary containers
# ---------------------------------------------------------------------------


@dataclass
class ExperimentConfig:
    kappa: int = 6
    ell: int = 4
    strategies: list[StrategyKind] = field(
        default_factory=lambda: [StrategyKind.ENTROPY]
    )
    first_move: str = FIRST_MOVE_HALF
    mode: str = "full"  # "full" (reps x whole space) or "instances"
    reps: int = 1
    instances: InstanceSet | None = None
    seed: int = 1
    max_moves: int = DEFAULT_MAX_MOVES
    deterministic: bool = False
    workers: int | None = None

    def validate(self) -> None:
        if not self.strategies:
            raise ValueError("at least one strategy is required")
        if self.mode == "full":
            if self.reps < 1:
                raise ValueError("full mode needs reps >= 1")
        elif self.mode == "instances":
            if self.instances is None:
                raise ValueError("instance mode needs an instance set")
            if (self.instances.kappa, self.instances.ell) != (self.kappa, self.ell):
                raise ValueError(
                    "instance set dimensions "
                    f"{self.instances.kappa}x{self.instances.ell} do not match "
                    f"config {self.kappa}x{self.ell}"
                )
        else:
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class MoveRow:
    move: int
    games: int
    mean_set_size: float
    sd_set_size: float
    frac_secret_in_top: float
    mean_draw_prob: float
    frac_secret_in_top_cum: float
    frac_secret_in_mostparts_top_cum: float


@dataclass(frozen=True)
class StrategyResult:
    strategy: str
    n_games: int
    mean_moves: float
    sem_moves: float
    sd_moves: float
    median_moves: float
    max_moves: int
    total_moves: int
    histogram: dict[int, int]
    per_move: list[MoveRow]


@dataclass(frozen=True)
class PairResult:
    strategy_a: str
    strategy_b: str
    p_value: float
    count_diff: dict[int, int]
    score_diff: dict[int, int]


@dataclass(frozen=True)
class RunSummary:
    kappa: int
    ell: int
    first_move: str
    mode: str
    reps: int
    seed: int
    n_games: int
    strategies: dict[str, StrategyResult]
    pairs: list[PairResult]

    def to_dict(self) -> dict[str, Any]:
        return {
            "kappa": self.kappa,
            "ell": self.ell,
            "first_move": self.first_move,
            "mode": self.mode,
            "reps": self.reps,
            "seed": self.seed,
            "n_games": self.n_games,
            "strategies": {
                name: {
                    "strategy": s.strategy,
                    "n_games": s.n_games,
                    "mean_moves": s.mean_moves,
                    "sem_moves": s.sem_moves,
                    "sd_moves": s.sd_moves,
                    "median_moves": s.median_moves,
                    "max_moves": s.max_moves,
                    "total_moves": s.total_moves,
                    "histogram": {str(k): v for k, v in sorted(s.histogram.items())},
                    "per_move": [vars(row) for row in s.per_move],
                }
                for name, s in self.strategies.items()
            },
            "pairs": [
                {
                    "strategy_a": p.strategy_a,
                    "strategy_b": p.strategy_b,
                    "p_value": p.p_value,
                    "count_diff": {str(k): v for k, v in sorted(p.count_diff.items())},
                    "score_diff": {str(k): v for k, v in sorted(p.score_diff.items())},
                }
                for p in self.pairs
            ],
        }


# ---------------------------------------------------------------------------
# playing games
# ---------------------------------------------------------------------------


def _secret_indices(config: ExperimentConfig) -> list[int]:
    space = space_for(config.kappa, config.ell)
    if config.mode == "full":
        return list(range(space.size)) * config.reps
    assert config.instances is not None
    return [space.index_of(code) for code in config.instances.codes]


def _play_chunk(args: tuple) -> list[GameRecord]:
    (kappa, ell, strategy_value, first_text, max_moves, deterministic, master_seed,
     start_index, secret_indices) = args
    space = space_for(kappa, ell)
    strategy = StrategyKind(strategy_value)
    first = parse_code(first_text, kappa, ell)
    records = []
    for offset, secret_index in enumerate(secret_indices):
        game_index = start_index + offset
        records.append(
            play_game(
                space,
                space.code_at(secret_index),
                strategy,
                first,
                max_moves=max_moves,
                seed=derive_seed(master_seed, strategy_value, game_index),
                deterministic=deterministic,
            )
        )
    return records


def effective_workers(requested: int | None) -> int:
    cap = os.environ.get(WORKER_ENV_VAR)
    workers = requested if requested is not None else (os.cpu_count() or 1)
    if cap is not None:
        workers = min(workers, max(1, int(cap)))
    return max(1, workers)


def play_strategy_games(
    config: ExperimentConfig,
    strategy: StrategyKind,
    secret_indices: Sequence[int],
    first: Code,
) -> list[GameRecord]:
    workers = effective_workers(config.workers)
    base_args = (
        config.kappa,
        config.ell,
        strategy.value,
        str(first),
        config.max_moves,
        config.deterministic,
        config.seed,
    )
    if workers <= 1 or len(secret_indices) < 64:
        return _play_chunk(base_args + (0, list(secret_indices)))
    chunk = max(32, len(secret_indices) // (workers * 4))
    tasks = [
        base_args + (start, list(secret_indices[start : start + chunk]))
        for start in range(0, len(secret_indices), chunk)
    ]
    records: list[GameRecord] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_play_chunk, tasks):
            records.extend(part)
    return records


def run_experiment(
    config: ExperimentConfig, out_dir: str | Path | None = None
) -> RunSummary:
    """Play every configured strategy over the common secret sequence.

    Returns the aggregated summary; when ``out_dir`` is given, also writes
    ``games.jsonl``, ``summary.json``, ``permove.csv``, ``hist.csv`` and
    ``diff.csv`` there.
    """
    config.validate()
    first = first_move(config.kappa, config.ell, config.first_move)
    secrets = _secret_indices(config)
    per_strategy: dict[StrategyKind, list[GameRecord]] = {}
    for strategy in config.strategies:
        records = play_strategy_games(config, strategy, secrets, first)
        for record in records:
            if not record.solved:
                raise RuntimeError(
                    f"game failed: secret={record.secret} strategy={strategy} "
                    f"seed={record.seed} exceeded {config.max_moves} moves"
                )
        per_strategy[strategy] = records

    all_records = [r for records in per_strategy.values() for r in records]
    strategies = {
        kind.value: _aggregate_one(records) for kind, records in per_strategy.items()
    }
    pairs = []
    kinds = list(per_strategy)
    for i in range(len(kinds)):
        for j in range(i + 1, len(kinds)):
            pairs.append(compare(per_strategy[kinds[i]], per_strategy[kinds[j]]))

    summary = RunSummary(
        kappa=config.kappa,
        ell=config.ell,
        first_move=str(first),
        mode=config.mode,
        reps=config.reps if config.mode == "full" else 1,
        seed=config.seed,
        n_games=len(secrets),
        strategies=strategies,
        pairs=pairs,
    )
    if out_dir is not None:
        write_outputs(Path(out_dir), summary, all_records)
    return summary


# ---------------------------------------------------------------------------
# aggregation
# ---------------------------------------------------------------------------


def _aggregate_one(records: Sequence[GameRecord]) -> StrategyResult:
    move_counts = [r.n_moves for r in records]
    stats = mean_sem(move_counts)
    histogram: dict[int, int] = {}
    for count in move_counts:
        histogram[count] = histogram.get(count, 0) + 1

    by_move: dict[int, list[tuple[int, bool, float, bool, bool]]] = {}
    for record in records:
        ever_top = False
        ever_mp = False
        for row in record.moves:
            ever_top = ever_top or row.secret_in_top
            ever_mp = ever_mp or row.secret_in_mostparts_top
            by_move.setdefault(row.move_index, []).append(
                (
                    row.set_size_before,
                    row.secret_in_top,
                    row.draw_probability,
                    ever_top,
                    ever_mp,
                )
            )
    per_move = []
    for move in sorted(by_move):
        rows = by_move[move]
        n = len(rows)
        sizes = [r[0] for r in rows]
        size_stats = mean_sem(sizes)
        per_move.append(
            MoveRow(
                move=move,
                games=n,
                mean_set_size=size_stats.mean,
                sd_set_size=size_stats.sd,
                frac_secret_in_top=sum(r[1] for r in rows) / n,
                mean_draw_prob=sum(r[2] for r in rows) / n,
                frac_secret_in_top_cum=sum(r[3] for r in rows) / n,
                frac_secret_in_mostparts_top_cum=sum(r[4] for r in rows) / n,
            )
        )
    return StrategyResult(
        strategy=records[0].strategy.value,
        n_games=len(records),
        mean_moves=stats.mean,
        sem_moves=stats.sem,
        sd_moves=stats.sd,
        median_moves=stats.median,
        max_moves=max(move_counts),
        total_moves=sum(move_counts),
        histogram=histogram,
        per_move=per_move,
    )


def aggregate(records: Sequence[GameRecord]) -> dict[str, StrategyResult]:
    """Group records by strategy and summarize each group.

    Per-move statistics use only the games still running at that move; the
    cumulative columns track whether the secret has appeared in the top set
    (own kind, and most-parts) at any scored move so far.
    """
    if not records:
        raise ValueError("no records to aggregate")
    grouped: dict[str, list[GameRecord]] = {}
    for record in records:
        grouped.setdefault(record.strategy.value, []).append(record)
    return {name: _aggregate_one(group) for name, group in grouped.items()}


def compare(
    records_a: Sequence[GameRecord], records_b: Sequence[GameRecord]
) -> PairResult:
    """Paired per-move differences and signed-rank p-value for two runs.

    The two record lists must cover the same secrets in the same order; any
    reordering or mismatch is rejected because it would silently break the
    pairing of the test.
    """
    if len(records_a) != len(records_b):
        raise ValueError(
            f"unpaired runs: {len(records_a)} vs {len(records_b)} games"
        )
    for a, b in zip(records_a, records_b):
        if (a.kappa, a.ell) != (b.kappa, b.ell) or str(a.secret) != str(b.secret):
            raise ValueError(
                "unpaired runs: secret sequences differ "
                f"({a.secret} vs {b.secret}); runs must share the same secrets "
                "in the same order"
            )
    hist_a: dict[int, int] = {}
    hist_b: dict[int, int] = {}
    for r in records_a:
        hist_a[r.n_moves] = hist_a.get(r.n_moves, 0) + 1
    for r in records_b:
        hist_b[r.n_moves] = hist_b.get(r.n_moves, 0) + 1
    moves = sorted(set(hist_a) | set(hist_b))
    count_diff = {m: hist_a.get(m, 0) - hist_b.get(m, 0) for m in moves}
    score_diff = {m: m * d for m, d in count_diff.items()}
    sample = PairedSample.of(
        [r.n_moves for r in records_a], [r.n_moves for r in records_b]
    )
    return PairResult(
        strategy_a=records_a[0].strategy.value,
        strategy_b=records_b[0].strategy.value,
        p_value=wilcoxon_signed_rank(sample),
        count_diff=count_diff,
        score_diff=score_diff,
    )


# ---------------------------------------------------------------------------
# output files
# ---------------------------------------------------------------------------


def write_outputs(
    out_dir: Path, summary: RunSummary, records: Iterable[GameRecord]
) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    with (out_dir / "games.jsonl").open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record_to_dict(record)) + "\n")
    with (out_dir / "summary.json").open("w", encoding="utf-8") as fh:
        json.dump(summary.to_dict(), fh, indent=2)
        fh.write("\n")
    with (out_dir / "permove.csv").open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(PERMOVE_COLUMNS)
        for name, result in summary.strategies.items():
            for row in result.per_move:
                writer.writerow(
                    [
                        name,
                        row.move,
                        f"{row.mean_set_size:.6g}",
                        f"{row.sd_set_size:.6g}",
                        f"{row.frac_secret_in_top:.6g}",
                        f"{row.mean_draw_prob:.6g}",
                        f"{row.frac_secret_in_top_cum:.6g}",
                        f"{row.frac_secret_in_mostparts_top_cum:.6g}",
                        row.games,
                    ]
                )
    with (out_dir / "hist.csv").open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(HIST_COLUMNS)
        for name, result in summary.strategies.items():
            for n_moves in sorted(result.histogram):
                writer.writerow([name, n_moves, result.histogram[n_moves]])
    with (out_dir / "diff.csv").open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(DIFF_COLUMNS)
        for pair in summary.pairs:
            for move in sorted(pair.count_diff):
                writer.writerow(
                    [
                        pair.strategy_a,
                        pair.strategy_b,
                        move,
                        pair.count_diff[move],
                        pair.score_diff[move],
                    ]
                )
