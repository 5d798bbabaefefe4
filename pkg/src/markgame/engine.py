"""Game semantics: rounds, legal moves, scores, match orchestration.

Alice marks vertices, Bob marks edges, alternating within a round with
Alice first.  A vertex's score after a round is the number of marked edges
incident to it while it stays unmarked, zero once marked; the round score
is the maximum over vertices, and the final score the maximum over rounds.
Scores that count are measured at round ends (after Bob's half-move);
post-Alice samples are recorded for diagnostics only, and can never exceed
the preceding round's score because marking a vertex only zeroes it.

States are immutable; ``apply_move`` returns a fresh state.  Mark sets are
kept as bitsets internally (vertex bit = position in the sorted id list,
edge bit = canonical edge index) with frozenset views on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .graph import PlanarGraph

ALICE = "alice"
BOB = "bob"
VERTEX = "vertex"
EDGE = "edge"


class EngineError(ValueError):
    pass


class IllegalMove(EngineError):
    pass


class MatchAbort(RuntimeError):
    """A strategy returned an illegal move; carries the diagnostic."""


@dataclass(frozen=True)
class Move:
    side: str
    kind: str
    ref: int  # vertex id for Alice, canonical edge index for Bob

    def token(self) -> str:
        return ("v:" if self.kind == VERTEX else "e:") + str(self.ref)

    @staticmethod
    def from_token(side: str, token: str) -> "Move":
        prefix, _, num = token.partition(":")
        if prefix == "v":
            return Move(side, VERTEX, int(num))
        if prefix == "e":
            return Move(side, EDGE, int(num))
        raise EngineError(f"bad move token {token!r}")


@dataclass(frozen=True)
class GameState:
    graph: PlanarGraph
    mv_bits: int = 0
    me_bits: int = 0
    rounds_completed: int = 0
    to_move: str = ALICE
    history: tuple[Move, ...] = ()

    @property
    def round(self) -> int:
        return self.rounds_completed

    @cached_property
    def marked_vertices(self) -> frozenset[int]:
        return frozenset(
            vid for vid in self.graph.vertex_ids if self.mv_bits >> self.graph.vertex_pos(vid) & 1
        )

    @cached_property
    def marked_edges(self) -> frozenset[int]:
        return frozenset(i for i in range(len(self.graph.edges)) if self.me_bits >> i & 1)

    def vertex_marked(self, vid: int) -> bool:
        return bool(self.mv_bits >> self.graph.vertex_pos(vid) & 1)

    def edge_marked(self, eidx: int) -> bool:
        return bool(self.me_bits >> eidx & 1)

    def unmarked_vertices(self) -> list[int]:
        return [vid for vid in self.graph.vertex_ids if not self.vertex_marked(vid)]

    def unmarked_edges(self) -> list[int]:
        return [i for i in range(len(self.graph.edges)) if not self.me_bits >> i & 1]

    def last_move(self, side: Optional[str] = None) -> Optional[Move]:
        for m in reversed(self.history):
            if side is None or m.side == side:
                return m
        return None

    @staticmethod
    def from_marks(
        graph: PlanarGraph,
        marked_vertices: Iterable[int] = (),
        marked_edges: Iterable[int] = (),
        to_move: str = ALICE,
    ) -> "GameState":
        """Synthetic analysis state; no history, round counter from |ME|.

        The |MV| = |ME| = r bookkeeping invariant only binds states reached
        by play; analysis entry points (solver ``from_state``, constructed
        free-path positions) may set marks directly.
        """
        mv = 0
        for vid in marked_vertices:
            mv |= 1 << graph.vertex_pos(vid)
        me = 0
        for eidx in marked_edges:
            me |= 1 << eidx
        return GameState(graph, mv, me, rounds_completed=me.bit_count(), to_move=to_move)


def new_game(graph: PlanarGraph) -> GameState:
    """Fresh state: nothing marked, Alice opens round 1."""
    if not graph.vertices:
        raise EngineError("cannot play on an empty graph")
    return GameState(graph)


def game_over(state: GameState) -> bool:
    """Finite games end once all vertices or all edges are marked."""
    g = state.graph
    return state.mv_bits.bit_count() >= len(g.vertices) or state.me_bits.bit_count() >= len(
        g.edges
    )


def legal_moves(state: GameState) -> list[Move]:
    """Unmarked vertices (Alice) or edges (Bob); empty means game over."""
    if game_over(state):
        return []
    if state.to_move == ALICE:
        return [Move(ALICE, VERTEX, vid) for vid in state.unmarked_vertices()]
    return [Move(BOB, EDGE, i) for i in state.unmarked_edges()]


def apply_move(state: GameState, move: Move) -> GameState:
    """Apply a half-move; the round counter advances on Bob's half."""
    if move.side != state.to_move:
        raise IllegalMove(f"wrong side: {move.side} moved on {state.to_move}'s turn")
    if game_over(state):
        raise IllegalMove("game is over")
    g = state.graph
    if move.side == ALICE:
        if move.kind != VERTEX:
            raise IllegalMove("wrong side: alice marks vertices")
        if move.ref not in g.vertices:
            raise IllegalMove(f"unknown vertex {move.ref}")
        bit = 1 << g.vertex_pos(move.ref)
        if state.mv_bits & bit:
            raise IllegalMove(f"vertex {move.ref} already marked")
        return replace(
            state,
            mv_bits=state.mv_bits | bit,
            to_move=BOB,
            history=state.history + (move,),
        )
    if move.kind != EDGE:
        raise IllegalMove("wrong side: bob marks edges")
    if not 0 <= move.ref < len(g.edges):
        raise IllegalMove(f"unknown edge index {move.ref}")
    bit = 1 << move.ref
    if state.me_bits & bit:
        raise IllegalMove(f"edge {move.ref} already marked")
    return replace(
        state,
        me_bits=state.me_bits | bit,
        rounds_completed=state.rounds_completed + 1,
        to_move=ALICE,
        history=state.history + (move,),
    )


def vertex_score(state: GameState, vid: int) -> int:
    """Marked incident edges while unmarked; zero once the vertex is marked."""
    if vid not in state.graph.vertices:
        raise EngineError(f"unknown vertex {vid}")
    if state.vertex_marked(vid):
        return 0
    return (state.me_bits & state.graph.incidence_mask(vid)).bit_count()


def round_score(state: GameState) -> tuple[int, Optional[int]]:
    """Maximum vertex score and its lowest-id witness."""
    best, witness = 0, None
    for vid in state.graph.vertex_ids:
        s = vertex_score(state, vid)
        if s > best or witness is None:
            best, witness = s, vid
    return best, witness


@dataclass(frozen=True)
class MatchResult:
    final_score: int
    achieved_by: Optional[int]
    achieved_round: Optional[int]
    trace: tuple[int, ...]
    history: tuple[Move, ...]
    termination: str  # "vertices exhausted" | "edges exhausted" | "round cap"
    post_alice_scores: tuple[int, ...] = ()
    final_state: Optional[GameState] = None

    def to_dict(self, graph_ref: str = "") -> dict:
        return {
            "graph_ref": graph_ref,
            "moves": [{"side": m.side, "object_id": m.token()} for m in self.history],
            "trace": list(self.trace),
            "final_score": self.final_score,
            "achieved_by": self.achieved_by,
            "achieved_round": self.achieved_round,
            "termination": self.termination,
        }


def replay(graph: PlanarGraph, moves: Sequence[Move]) -> GameState:
    state = new_game(graph)
    for m in moves:
        state = apply_move(state, m)
    return state


def play_match(
    graph: PlanarGraph,
    alice,
    bob,
    round_cap: Optional[int] = None,
) -> MatchResult:
    """Run a match to exhaustion (or the defensive round cap).

    Strategies are callables via ``.choose(state)`` returning a legal move;
    an illegal return aborts with :class:`MatchAbort`.  Scores are tracked
    incrementally; the final score is the max over post-Bob round scores.
    """
    state = new_game(graph)
    counts = {vid: 0 for vid in graph.vertex_ids}
    trace: list[int] = []
    witnesses: list[Optional[int]] = []
    post_alice: list[int] = []

    def current_max() -> tuple[int, Optional[int]]:
        best, wit = 0, None
        for vid in graph.vertex_ids:
            if state.vertex_marked(vid):
                continue
            if counts[vid] > best:
                best, wit = counts[vid], vid
        return best, wit

    while True:
        if round_cap is not None and len(trace) >= round_cap:
            termination = "round cap"
            break
        moves = legal_moves(state)
        if not moves:
            termination = _exhaustion(state)
            break
        move = alice.choose(state)
        state = _apply_checked(state, move, alice)
        post_alice.append(current_max()[0])

        moves = legal_moves(state)
        if not moves:
            termination = _exhaustion(state)
            break
        move = bob.choose(state)
        state = _apply_checked(state, move, bob)
        u, v = graph.edges[move.ref]
        counts[u] += 1
        counts[v] += 1
        s, wit = current_max()
        trace.append(s)
        witnesses.append(wit)

    final = max(trace, default=0)
    achieved_round = achieved_by = None
    if trace:
        achieved_round = trace.index(final) + 1
        achieved_by = witnesses[achieved_round - 1]
    return MatchResult(
        final_score=final,
        achieved_by=achieved_by,
        achieved_round=achieved_round,
        trace=tuple(trace),
        history=state.history,
        termination=termination,
        post_alice_scores=tuple(post_alice),
        final_state=state,
    )


def _exhaustion(state: GameState) -> str:
    if state.mv_bits.bit_count() >= len(state.graph.vertices):
        return "vertices exhausted"
    return "edges exhausted"


def _apply_checked(state: GameState, move: Move, strategy) -> GameState:
    if move is None:
        raise MatchAbort(f"strategy {getattr(strategy, 'descriptor', strategy)} returned no move")
    try:
        return apply_move(state, move)
    except IllegalMove as exc:
        raise MatchAbort(
            f"strategy {getattr(strategy, 'descriptor', strategy)} returned illegal move "
            f"{move}: {exc}"
        ) from exc
