"""Code and response primitives for bulls-and-cows style guessing games.

A game position is described by two parameters: the number of colors
``kappa`` and the code length ``ell``.  Codes are stored as tuples of symbol
indices; the textual form (uppercase letters, 'A' = symbol 0) is presentation
only.  The codemaker's feedback is a pair of peg counts: ``black`` for exact
positional matches and ``white`` for right-color-wrong-position matches.

`CodeSpace` is the workhorse for everything quantitative: it enumerates the
full code space in lexicographic order and serves vectorized pairwise
response lookups, backed by a cached response matrix for small spaces and by
direct computation for larger ones.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_COLORS = 26

# enumerate_space refuses to materialize more codes than this by default
DEFAULT_SPACE_BUDGET = 1_000_000

# the full pairwise response matrix (size**2 bytes) is only cached for
# spaces up to this many codes; larger spaces fall back to row computation
PAIR_MATRIX_MAX_CODES = 12_000


class CodeError(ValueError):
    """Invalid code text, symbol, or dimension mismatch."""


class SpaceBudgetError(CodeError):
    """Requested code space exceeds the configured enumeration budget."""


@dataclass(frozen=True)
class Alphabet:
    """The symbol set of size ``kappa``; symbol ``i`` renders as chr('A' + i)."""

    kappa: int

    def __post_init__(self) -> None:
        if not 2 <= self.kappa <= MAX_COLORS:
            raise CodeError(
                f"kappa must be between 2 and {MAX_COLORS}, got {self.kappa}"
            )

    @property
    def letters(self) -> str:
        return "".join(chr(ord("A") + i) for i in range(self.kappa))

    def letter(self, symbol: int) -> str:
        if not 0 <= symbol < self.kappa:
            raise CodeError(f"symbol {symbol} out of range for kappa={self.kappa}")
        return chr(ord("A") + symbol)

    def index(self, letter: str) -> int:
        i = ord(letter) - ord("A")
        if not 0 <= i < self.kappa:
            raise CodeError(f"letter {letter!r} outside the first {self.kappa} letters")
        return i


@dataclass(frozen=True)
class Code:
    """A fixed-length combination of symbol indices."""

    symbols: tuple[int, ...]

    def __str__(self) -> str:
        return "".join(chr(ord("A") + s) for s in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __lt__(self, other: "Code") -> bool:
        return self.symbols < other.symbols


@dataclass(frozen=True)
class Response:
    """Peg feedback: ``black`` exact matches, ``white`` color-only matches."""

    black: int
    white: int

    def __post_init__(self) -> None:
        if self.black < 0 or self.white < 0:
            raise CodeError(f"negative peg count in response {self.black}-{self.white}")

    def __str__(self) -> str:
        return f"{self.black}-{self.white}"

    @classmethod
    def from_text(cls, text: str) -> "Response":
        try:
            b, w = text.split("-")
            return cls(int(b), int(w))
        except (ValueError, TypeError) as exc:
            raise CodeError(f"bad response text {text!r}, expected 'b-w'") from exc


def parse_code(text: str, kappa: int, ell: int) -> Code:
    """Parse letter text into a Code, validating length and alphabet.

    Round-trips with ``str(code)``: ``str(parse_code(t, k, l)) == t``.
    """
    alphabet = Alphabet(kappa)
    if len(text) != ell:
        raise CodeError(f"code {text!r} has length {len(text)}, expected {ell}")
    return Code(tuple(alphabet.index(ch) for ch in text))


def respond(guess: Code, secret: Code) -> Response:
    """Peg counts for ``guess`` against ``secret``.

    ``black`` counts positions where the symbols coincide; ``white`` is the
    multiset intersection of the two codes' symbols minus ``black``.  The
    function is symmetric in its arguments.
    """
    if len(guess) != len(secret):
        raise CodeError(
            f"length mismatch: guess has {len(guess)} symbols, secret {len(secret)}"
        )
    black = sum(g == s for g, s in zip(guess.symbols, secret.symbols))
    gcounts: dict[int, int] = {}
    scounts: dict[int, int] = {}
    for g in guess.symbols:
        gcounts[g] = gcounts.get(g, 0) + 1
    for s in secret.symbols:
        scounts[s] = scounts.get(s, 0) + 1
    total = sum(min(c, scounts.get(sym, 0)) for sym, c in gcounts.items())
    return Response(black, total - black)


def is_legal_response(black: int, white: int, ell: int) -> bool:
    """Whether a peg pair can ever be produced for codes of length ``ell``.

    Excludes negative counts, ``black + white > ell`` and the unreachable
    pair ``(ell - 1, 1)``: if all but one position match, the remaining
    symbol cannot appear anywhere else out of place.
    """
    if black < 0 or white < 0:
        return False
    if black + white > ell:
        return False
    if black == ell - 1 and white == 1:
        return False
    return True


def legal_responses(ell: int) -> list[Response]:
    """All legal responses for length ``ell``, lexicographic by (black, white)."""
    return [
        Response(b, w)
        for b in range(ell + 1)
        for w in range(ell + 1 - b)
        if is_legal_response(b, w, ell)
    ]


def enumerate_space(
    kappa: int, ell: int, budget: int = DEFAULT_SPACE_BUDGET
) -> list[Code]:
    """All ``kappa ** ell`` codes in lexicographic order.

    Refuses outright (no partial output) when the space exceeds ``budget``.
    """
    return [space_for(kappa, ell, budget).code_at(i) for i in range(kappa**ell)]


class CodeSpace:
    """Enumerated code space with vectorized pairwise response machinery.

    Codes are identified by their lexicographic rank.  ``respond_index``
    encodes a response as ``black * (ell + 1) + white`` so responses fit one
    byte and response tables can be built with ``bincount``.
    """

    def __init__(self, kappa: int, ell: int, budget: int = DEFAULT_SPACE_BUDGET):
        Alphabet(kappa)
        if ell < 1:
            raise CodeError(f"ell must be >= 1, got {ell}")
        size = kappa**ell
        if size > budget:
            raise SpaceBudgetError(
                f"space of {kappa}^{ell} = {size} codes exceeds budget {budget}"
            )
        self.kappa = kappa
        self.ell = ell
        self.size = size
        idx = np.arange(size)
        digits = np.empty((size, ell), dtype=np.uint8)
        for pos in range(ell - 1, -1, -1):
            digits[:, pos] = idx % kappa
            idx = idx // kappa
        digits.setflags(write=False)
        self.digits = digits
        counts = np.zeros((size, kappa), dtype=np.uint8)
        for color in range(kappa):
            counts[:, color] = (digits == color).sum(axis=1)
        counts.setflags(write=False)
        self._color_counts = counts
        self._pair_matrix: np.ndarray | None = None
        self._pair_lock = threading.Lock()
        # scored-set memo shared by the strategy layer; see strategies.py
        self.memo: dict = {}
        self.memo_lock = threading.Lock()

    # -- code <-> index -------------------------------------------------

    def code_at(self, index: int) -> Code:
        return Code(tuple(int(s) for s in self.digits[index]))

    def index_of(self, code: Code) -> int:
        if len(code) != self.ell:
            raise CodeError(f"code {code} has length {len(code)}, expected {self.ell}")
        index = 0
        for s in code.symbols:
            if not 0 <= s < self.kappa:
                raise CodeError(f"code {code} uses symbol {s} >= kappa={self.kappa}")
            index = index * self.kappa + s
        return index

    def parse(self, text: str) -> Code:
        return parse_code(text, self.kappa, self.ell)

    # -- response encoding ----------------------------------------------

    @property
    def n_response_codes(self) -> int:
        return (self.ell + 1) * (self.ell + 1)

    @property
    def all_black_index(self) -> int:
        return self.ell * (self.ell + 1)

    def response_index(self, response: Response) -> int:
        return response.black * (self.ell + 1) + response.white

    def decode_response(self, index: int) -> Response:
        return Response(index // (self.ell + 1), index % (self.ell + 1))

    # -- pairwise responses ----------------------------------------------

    def pair_matrix(self) -> np.ndarray | None:
        """Full response-index matrix, cached; None for oversized spaces."""
        if self.size > PAIR_MATRIX_MAX_CODES:
            return None
        with self._pair_lock:
            if self._pair_matrix is None:
                self._pair_matrix = self._respond_block(
                    np.arange(self.size), np.arange(self.size)
                )
                self._pair_matrix.setflags(write=False)
            return self._pair_matrix

    def _respond_block(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        black = np.zeros((len(rows), len(cols)), dtype=np.uint8)
        for pos in range(self.ell):
            r = self.digits[rows, pos]
            c = self.digits[cols, pos]
            black += r[:, None] == c[None, :]
        total = np.zeros_like(black)
        for color in range(self.kappa):
            r = self._color_counts[rows, color]
            c = self._color_counts[cols, color]
            total += np.minimum(r[:, None], c[None, :])
        return black.astype(np.uint8) * (self.ell + 1) + (total - black)

    def respond_row(self, guess_index: int, members: np.ndarray) -> np.ndarray:
        """Response indices of ``guess_index`` against each member index."""
        matrix = self.pair_matrix()
        if matrix is not None:
            return matrix[guess_index, members]
        return self._respond_block(np.asarray([guess_index]), members)[0]

    def pair_submatrix(self, members: np.ndarray) -> np.ndarray:
        """Pairwise response indices among ``members`` (rows = candidates)."""
        matrix = self.pair_matrix()
        if matrix is not None:
            return matrix[np.ix_(members, members)]
        return self._respond_block(members, members)


@lru_cache(maxsize=8)
def _cached_space(kappa: int, ell: int) -> CodeSpace:
    return CodeSpace(kappa, ell)


def space_for(kappa: int, ell: int, budget: int = DEFAULT_SPACE_BUDGET) -> CodeSpace:
    """Shared CodeSpace instance for (kappa, ell); budget checked first."""
    size = kappa**ell if ell >= 1 else 0
    if ell < 1:
        raise CodeError(f"ell must be >= 1, got {ell}")
    if size > budget:
        raise SpaceBudgetError(
            f"space of {kappa}^{ell} = {size} codes exceeds budget {budget}"
        )
    return _cached_space(kappa, ell)


def codes_from_texts(texts: Iterable[str], kappa: int, ell: int) -> list[Code]:
    return [parse_code(t, kappa, ell) for t in texts]


def render_codes(codes: Sequence[Code]) -> list[str]:
    return [str(c) for c in codes]
