"""HTTP session server for live human-vs-strategy play.

Sessions are in-memory; ids are 128-bit random hex.  Mutations on a
session are serialized by a non-blocking per-session lock: of two
concurrent submissions exactly one wins, the other gets a 409.  State
views embed coordinates, face colors, and marked angles so the UI needs
no graph logic of its own.

Endpoints:
    POST /sessions                      create a game
    GET  /sessions/{sid}                current view
    POST /sessions/{sid}/moves          submit {"object": "v:12" | "e:7"}
    GET  /sessions/{sid}/hint           suggested move for the human side
    GET  /sessions/{sid}/transcript     replayable move list
"""

from __future__ import annotations

import os
import secrets
import threading
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .engine import (
    ALICE,
    BOB,
    GameState,
    Move,
    apply_move,
    game_over,
    legal_moves,
    new_game,
    round_score,
    vertex_score,
)
from .freepath import bob_free_path
from .lattices import LatticeBundle, LatticeError, generate
from .strategies import Strategy, StrategyError, alice_angle, baseline_strategy, parse_strategy


@dataclass
class Session:
    id: str
    bundle: LatticeBundle
    human_side: str
    machine: Strategy
    state: GameState
    seed: Optional[int]
    trace: list[int] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class CreateSession(BaseModel):
    family: str = "T"
    rows: int = 3
    cols: int = 3
    insertions: int = 0
    seed: Optional[int] = None
    human_side: str = BOB
    strategy: Optional[str] = None


class SubmitMove(BaseModel):
    object: str


def _default_machine(side: str, bundle: LatticeBundle, seed: Optional[int]) -> Strategy:
    if side == ALICE:
        if bundle.scheme is not None:
            return alice_angle(bundle.graph, bundle.scheme)
        return baseline_strategy("alice_greedy")
    return bob_free_path(0)


def _view(session: Session) -> dict:
    state = session.state
    graph = state.graph
    scheme = session.bundle.scheme
    score, witness = round_score(state)
    return {
        "session_id": session.id,
        "family": session.bundle.family,
        "human_side": session.human_side,
        "machine": session.machine.descriptor,
        "vertices": [
            {
                "id": v.id,
                "x": v.x,
                "y": v.y,
                "marked": state.vertex_marked(v.id),
                "score": vertex_score(state, v.id),
            }
            for v in graph.vertices.values()
        ],
        "edges": [
            {"id": i, "u": u, "v": v, "marked": state.edge_marked(i)}
            for i, (u, v) in enumerate(graph.edges)
        ],
        "faces": [
            {
                "id": f.id,
                "cycle": list(f.cycle),
                "color": scheme.color(f.id) if scheme else None,
                "marked_angle": scheme.marked_angle.get(f.id) if scheme else None,
            }
            for f in graph.faces.values()
        ],
        "to_move": state.to_move,
        "round": state.round,
        "trace": list(session.trace),
        "current_score": score,
        "current_witness": witness,
        "final_score_so_far": max(session.trace, default=0),
        "game_over": game_over(state),
        "moves": [{"side": m.side, "object_id": m.token()} for m in state.history],
    }


def _machine_turn(session: Session) -> None:
    state = session.state
    if game_over(state) or state.to_move == session.human_side:
        return
    move = session.machine.choose(state)
    if move is None:
        return
    session.state = apply_move(state, move)
    if move.side == BOB:
        session.trace.append(round_score(session.state)[0])


def create_app() -> FastAPI:
    app = FastAPI(title="markgame play service")
    origin = os.environ.get("MARKGAME_UI_ORIGIN", "*")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}

    def get_session(sid: str) -> Session:
        session = sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return session

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSession):
        if req.human_side not in (ALICE, BOB):
            raise HTTPException(status_code=400, detail="human_side must be alice or bob")
        machine_side = BOB if req.human_side == ALICE else ALICE
        try:
            params = (
                {"insertions": req.insertions, "seed": req.seed or 0}
                if req.family == "apollonian"
                else {"rows": req.rows, "cols": req.cols}
            )
            bundle = generate(req.family, **params)
            if req.strategy:
                machine = parse_strategy(
                    req.strategy, bundle.graph, bundle.scheme, default_seed=req.seed
                )
                if machine.side != machine_side:
                    raise StrategyError(
                        f"machine strategy must play {machine_side}, got {machine.side}"
                    )
            else:
                machine = _default_machine(machine_side, bundle, req.seed)
        except (LatticeError, StrategyError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        sid = secrets.token_hex(16)
        session = Session(
            id=sid,
            bundle=bundle,
            human_side=req.human_side,
            machine=machine,
            state=new_game(bundle.graph),
            seed=req.seed,
        )
        _machine_turn(session)
        sessions[sid] = session
        return _view(session)

    @app.get("/sessions/{sid}")
    def get_state(sid: str):
        return _view(get_session(sid))

    @app.post("/sessions/{sid}/moves")
    def submit_move(sid: str, req: SubmitMove):
        session = get_session(sid)
        if not session.lock.acquire(blocking=False):
            raise HTTPException(status_code=409, detail="concurrent move in progress")
        try:
            state = session.state
            if game_over(state):
                raise HTTPException(status_code=409, detail="game over")
            if state.to_move != session.human_side:
                raise HTTPException(status_code=409, detail="not your turn")
            try:
                move = Move.from_token(session.human_side, req.object)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            legal = {m.token() for m in legal_moves(state)}
            if move.token() not in legal:
                raise HTTPException(
                    status_code=409,
                    detail={"error": "illegal move", "legal_moves": sorted(legal)},
                )
            session.state = apply_move(state, move)
            if move.side == BOB:
                session.trace.append(round_score(session.state)[0])
            _machine_turn(session)
            return _view(session)
        finally:
            session.lock.release()

    @app.get("/sessions/{sid}/hint")
    def hint(sid: str):
        session = get_session(sid)
        state = session.state
        if game_over(state) or state.to_move != session.human_side:
            return {"object": None}
        helper = _default_machine(session.human_side, session.bundle, session.seed)
        move = helper.choose(state)
        return {"object": move.token() if move else None}

    @app.get("/sessions/{sid}/transcript")
    def transcript(sid: str):
        session = get_session(sid)
        return {
            "graph_ref": f"{session.bundle.family}:{session.bundle.params}",
            "moves": [{"side": m.side, "object_id": m.token()} for m in session.state.history],
            "trace": list(session.trace),
            "final_score": max(session.trace, default=0),
        }

    return app
