"""Mastermind strategy laboratory.

Exhaustive codebreaking strategies over the full consistent set, a seeded
benchmark harness with per-move telemetry, paired significance testing, and
a live advisor available from the terminal and over HTTP.
"""

from .codes import (
    Alphabet,
    Code,
    CodeError,
    CodeSpace,
    Response,
    SpaceBudgetError,
    enumerate_space,
    is_legal_response,
    legal_responses,
    parse_code,
    respond,
    space_for,
)
from .consistency import (
    ConsistentSet,
    PlayedMove,
    filter_consistent,
    full_set,
    initial_set,
    is_consistent,
)
from .engine import (
    GameRecord,
    MoveTelemetry,
    ReplayResult,
    play_game,
    record_from_dict,
    record_to_dict,
    replay_check,
)
from .experiments import (
    ExperimentConfig,
    InstanceSet,
    RunSummary,
    aggregate,
    compare,
    generate_instance_set,
    load_instances,
    run_experiment,
    save_instances,
)
from .stats import PairedSample, SummaryStats, mean_sem, wilcoxon_signed_rank
from .strategies import (
    EmptyConsistentSetError,
    PartitionTable,
    ScoredSet,
    StrategyKind,
    first_move,
    next_move,
    next_move_plus,
    next_move_plus2,
    partition_table,
    score,
    top_scorers,
)

__version__ = "0.1.0"
