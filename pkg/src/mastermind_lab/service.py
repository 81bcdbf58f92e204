"""Session-oriented HTTP API for live advisory play.

A human plays a real board game and relays the codemaker's peg feedback; the
service answers with the next suggested guess.  The server never knows the
secret: it only maintains the consistent set implied by the feedback, which
is why contradictory pegs surface as a ``contradiction`` state with an undo
affordance instead of an error.

Sessions are held in memory with LRU eviction and a TTL; this is a lab tool,
not a product, so there is no persistence and no authentication.  Requests
for distinct sessions run concurrently; operations on one session serialize
on its lock.
"""

from __future__ import annotations

import random
import secrets as _secrets
import threading
import time
from collections import OrderedDict
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .codes import Code, CodeError, Response, is_legal_response, space_for
from .consistency import ConsistentSet, PlayedMove, filter_consistent, full_set
from .strategies import (
    FIRST_MOVE_HALF,
    StrategyKind,
    first_move,
    next_move,
    strategy_from_name,
)

DEFAULT_SESSION_TTL = 3600.0
DEFAULT_MAX_SESSIONS = 256
DEFAULT_SPACE_BUDGET = 65_536

STATE_AWAITING = "awaiting-feedback"
STATE_SOLVED = "solved"
STATE_CONTRADICTION = "contradiction"


class CreateSessionRequest(BaseModel):
    kappa: int = 6
    ell: int = 4
    strategy: str = "entropy"
    first_move: str | None = None
    seed: int | None = None


class FeedbackRequest(BaseModel):
    black: int
    white: int


class HistoryEntryView(BaseModel):
    suggestion: str
    black: int | None = None
    white: int | None = None


class SessionView(BaseModel):
    id: str
    kappa: int
    ell: int
    strategy: str
    state: str
    suggestion: str
    remaining: int
    history: list[HistoryEntryView]


@dataclass
class _Entry:
    suggestion: Code
    black: int | None = None
    white: int | None = None


@dataclass
class Session:
    id: str
    kind: StrategyKind
    rng: random.Random
    entries: list[_Entry]
    stack: list[ConsistentSet]
    state: str = STATE_AWAITING
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def space(self):
        return self.stack[0].space

    @property
    def remaining(self) -> int:
        return len(self.stack[-1])

    def view(self) -> SessionView:
        return SessionView(
            id=self.id,
            kappa=self.space.kappa,
            ell=self.space.ell,
            strategy=self.kind.value,
            state=self.state,
            suggestion=str(self.entries[-1].suggestion),
            remaining=self.remaining,
            history=[
                HistoryEntryView(suggestion=str(e.suggestion), black=e.black, white=e.white)
                for e in self.entries
            ],
        )


class SessionStore:
    """In-memory session map with TTL expiry and LRU capacity eviction."""

    def __init__(
        self,
        ttl: float = DEFAULT_SESSION_TTL,
        max_sessions: int = DEFAULT_MAX_SESSIONS,
    ):
        self.ttl = ttl
        self.max_sessions = max_sessions
        self._sessions: OrderedDict[str, tuple[Session, float]] = OrderedDict()
        self._lock = threading.Lock()
        self._now = time.monotonic

    def add(self, session: Session) -> None:
        with self._lock:
            self._expire()
            while len(self._sessions) >= self.max_sessions:
                self._sessions.popitem(last=False)
            self._sessions[session.id] = (session, self._now())

    def get(self, session_id: str) -> Session:
        with self._lock:
            self._expire()
            try:
                session, _ = self._sessions.pop(session_id)
            except KeyError:
                raise HTTPException(status_code=404, detail="unknown session")
            self._sessions[session_id] = (session, self._now())
            return session

    def _expire(self) -> None:
        deadline = self._now() - self.ttl
        stale = [sid for sid, (_, at) in self._sessions.items() if at < deadline]
        for sid in stale:
            del self._sessions[sid]

    def __len__(self) -> int:
        return len(self._sessions)


def create_app(
    ttl: float = DEFAULT_SESSION_TTL,
    max_sessions: int = DEFAULT_MAX_SESSIONS,
    space_budget: int = DEFAULT_SPACE_BUDGET,
    static_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="mastermind-lab advisor")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(ttl=ttl, max_sessions=max_sessions)
    app.state.store = store

    @app.post("/sessions", response_model=SessionView)
    def create_session(request: CreateSessionRequest) -> SessionView:
        try:
            kind = strategy_from_name(request.strategy)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        if request.ell < 1:
            raise HTTPException(status_code=400, detail="ell must be >= 1")
        if not 2 <= request.kappa <= 26:
            raise HTTPException(status_code=400, detail="kappa must be in [2, 26]")
        if request.kappa**request.ell > space_budget:
            raise HTTPException(
                status_code=413,
                detail=(
                    f"space of {request.kappa}^{request.ell} codes exceeds the "
                    f"advisor budget of {space_budget}"
                ),
            )
        try:
            opening = first_move(
                request.kappa, request.ell, request.first_move or FIRST_MOVE_HALF
            )
            space = space_for(request.kappa, request.ell)
        except CodeError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        seed = request.seed if request.seed is not None else _secrets.randbits(48)
        session = Session(
            id=_secrets.token_urlsafe(9),
            kind=kind,
            rng=random.Random(seed),
            entries=[_Entry(opening)],
            stack=[full_set(space)],
        )
        store.add(session)
        return session.view()

    @app.get("/sessions/{session_id}", response_model=SessionView)
    def get_session(session_id: str) -> SessionView:
        session = store.get(session_id)
        with session.lock:
            return session.view()

    @app.post("/sessions/{session_id}/feedback", response_model=SessionView)
    def submit_feedback(session_id: str, request: FeedbackRequest) -> SessionView:
        session = store.get(session_id)
        with session.lock:
            if session.state != STATE_AWAITING:
                raise HTTPException(
                    status_code=409,
                    detail=f"session is {session.state}; undo or start a new one",
                )
            ell = session.space.ell
            if not is_legal_response(request.black, request.white, ell):
                raise HTTPException(
                    status_code=422,
                    detail=(
                        f"impossible peg pair {request.black}-{request.white} "
                        f"for code length {ell}"
                    ),
                )
            entry = session.entries[-1]
            entry.black = request.black
            entry.white = request.white
            move = PlayedMove(entry.suggestion, Response(request.black, request.white))
            filtered = filter_consistent(session.stack[-1], move)
            session.stack.append(filtered)
            if request.black == ell:
                session.state = STATE_SOLVED
            elif len(filtered) == 0:
                session.state = STATE_CONTRADICTION
            else:
                session.entries.append(
                    _Entry(next_move(filtered, session.kind, session.rng))
                )
            return session.view()

    @app.post("/sessions/{session_id}/undo", response_model=SessionView)
    def undo(session_id: str) -> SessionView:
        session = store.get(session_id)
        with session.lock:
            if len(session.stack) == 1:
                raise HTTPException(status_code=400, detail="no feedback to undo")
            session.stack.pop()
            if session.state == STATE_AWAITING:
                session.entries.pop()
            entry = session.entries[-1]
            entry.black = None
            entry.white = None
            session.state = STATE_AWAITING
            return session.view()

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


app = create_app()
