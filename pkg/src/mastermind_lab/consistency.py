"""Consistent-set bookkeeping: which codes remain possible given the history.

A candidate is consistent with a played move when it would have produced
exactly the recorded feedback had it been the secret.  The consistent set
starts as the full code space and shrinks by filtering, never by
re-enumeration, so the per-move cost is linear in the current set size.

`ConsistentSet` values are immutable snapshots; filtering returns a new one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .codes import Code, CodeError, CodeSpace, Response, respond, space_for


@dataclass(frozen=True)
class PlayedMove:
    """One guess together with the codemaker's recorded feedback."""

    guess: Code
    response: Response


class ConsistentSet:
    """Ordered, duplicate-free snapshot of the still-possible codes.

    Members are kept as lexicographically sorted indices into the space.
    An empty set is a legal value: it signals contradictory feedback and is
    surfaced, not raised, so interactive callers can offer an undo.
    """

    __slots__ = ("space", "_indices", "history")

    def __init__(
        self,
        space: CodeSpace,
        indices: np.ndarray,
        history: tuple[PlayedMove, ...] = (),
    ):
        self.space = space
        arr = np.asarray(indices, dtype=np.int64)
        arr.setflags(write=False)
        self._indices = arr
        self.history = history

    @property
    def indices(self) -> np.ndarray:
        return self._indices

    def __len__(self) -> int:
        return int(self._indices.size)

    def __iter__(self) -> Iterator[Code]:
        for i in self._indices:
            yield self.space.code_at(int(i))

    def __contains__(self, code: Code) -> bool:
        i = self.space.index_of(code)
        pos = int(np.searchsorted(self._indices, i))
        return pos < len(self) and int(self._indices[pos]) == i

    @property
    def codes(self) -> list[Code]:
        return [self.space.code_at(int(i)) for i in self._indices]

    def __repr__(self) -> str:
        return (
            f"ConsistentSet(kappa={self.space.kappa}, ell={self.space.ell}, "
            f"size={len(self)}, moves={len(self.history)})"
        )


def initial_set(kappa: int, ell: int) -> ConsistentSet:
    """The full code space with empty history."""
    space = space_for(kappa, ell)
    return ConsistentSet(space, np.arange(space.size, dtype=np.int64))


def full_set(space: CodeSpace) -> ConsistentSet:
    return ConsistentSet(space, np.arange(space.size, dtype=np.int64))


def is_consistent(candidate: Code, history: list[PlayedMove]) -> bool:
    """True iff the candidate reproduces every recorded response.

    Vacuously true for empty history.
    """
    for move in history:
        if len(move.guess) != len(candidate):
            raise CodeError(
                f"history guess {move.guess} and candidate {candidate} differ in length"
            )
        if respond(candidate, move.guess) != move.response:
            return False
    return True


def filter_consistent(current: ConsistentSet, move: PlayedMove) -> ConsistentSet:
    """Members that reproduce ``move``'s feedback, with history extended.

    An empty result is returned as-is; it means the feedback contradicts
    itself, which only an inaccurate codemaker can produce.
    """
    space = current.space
    guess_index = space.index_of(move.guess)
    wanted = space.response_index(move.response)
    row = space.respond_row(guess_index, current.indices)
    kept = current.indices[row == wanted]
    return ConsistentSet(space, kept, current.history + (move,))
