"""Pluggable move choosers for both sides.

The angle strategy implements the three-rule response to Bob's last edge,
keyed on whether it was the first, second, or third marked edge of its
gray triangle:

* first edge: mark the triangle's marked-angle vertex,
* second edge: mark the vertex shared by the two marked edges,
* third edge: mark a remaining unmarked vertex of the triangle,

falling back to any other unmarked vertex of the triangle, then any
unmarked vertex at all.  Every "any" resolves to the lowest id (an
optional seed randomizes the opening move only).

The extension combinator plays a larger graph by routing Bob's edges:
outside edges trigger a free move or mark their single unmarked endpoint
inside the core; core edges are delegated to an inner strategy on the
projected core game.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .engine import ALICE, BOB, EDGE, VERTEX, GameState, Move
from .graph import PlanarGraph
from .scheme import MarkingScheme, gray_owner_map, validate_theorem_conditions


class StrategyError(ValueError):
    pass


class ExtensionAssertionError(RuntimeError):
    """The inner strategy left a hot vertex; carries the offending state."""

    def __init__(self, message: str, state: GameState):
        super().__init__(message)
        self.state = state


@dataclass
class Strategy:
    side: str
    name: str
    params: dict = field(default_factory=dict)
    choose: Callable[[GameState], Optional[Move]] = None

    @property
    def descriptor(self) -> str:
        parts = [self.side, self.name]
        parts += [f"{k}={v}" for k, v in sorted(self.params.items()) if v is not None]
        return ":".join(parts)

    def __repr__(self) -> str:  # pragma: no cover
        return f"Strategy({self.descriptor})"


def corresponding_triangle(graph: PlanarGraph, scheme: MarkingScheme, eidx: int) -> int:
    """The unique gray face owning edge ``eidx``.

    Under a valid scheme every edge has exactly one owner; a missing owner
    signals corrupted state and raises.
    """
    owner = gray_owner_map(graph, scheme)
    if eidx not in owner:
        raise StrategyError(f"edge {eidx} has no gray owner; scheme/graph mismatch")
    return owner[eidx]


def marked_edge_rank(state: GameState, scheme: MarkingScheme, eidx: int) -> int:
    """Position (1..3) of ``eidx`` in the chronological marking order of
    its triangle's edges, read off the game history."""
    fid = corresponding_triangle(state.graph, scheme, eidx)
    tri_edges = set(state.graph.face_edges(fid))
    order = [m.ref for m in state.history if m.side == BOB and m.ref in tri_edges]
    if eidx not in order:
        raise StrategyError(f"edge {eidx} is not marked")
    return order.index(eidx) + 1


def _lowest_unmarked(state: GameState) -> Optional[int]:
    for vid in state.graph.vertex_ids:
        if not state.vertex_marked(vid):
            return vid
    return None


def alice_angle(
    graph: PlanarGraph,
    scheme: MarkingScheme,
    first: str = "lowest",
    seed: Optional[int] = None,
) -> Strategy:
    """Alice's three-rule strategy for a graph passing the five conditions.

    ``first`` is ``"lowest"`` or ``"random"`` (seeded); the opening move is
    provably irrelevant to the score-3 cap, both are exposed for probing.
    """
    report = validate_theorem_conditions(graph, scheme)
    if not report.passed:
        raise StrategyError(f"scheme fails validation: {report.to_dict()}")
    owner = gray_owner_map(graph, scheme)
    rng = random.Random(seed)

    def choose(state: GameState) -> Optional[Move]:
        if state.graph is not graph:
            raise StrategyError("angle strategy bound to a different graph")
        last_bob = state.last_move(BOB)
        if last_bob is None:
            unmarked = state.unmarked_vertices()
            if not unmarked:
                return None
            pick = rng.choice(unmarked) if first == "random" else unmarked[0]
            return Move(ALICE, VERTEX, pick)

        fid = owner[last_bob.ref]
        tri_edges = graph.face_edges(fid)
        rank = sum(1 for e in tri_edges if state.edge_marked(e))
        target: Optional[int] = None
        if rank == 1:
            target = scheme.marked_angle[fid]
        elif rank == 2:
            marked_pairs = [graph.edges[e] for e in tri_edges if state.edge_marked(e)]
            shared = set(marked_pairs[0]) & set(marked_pairs[1])
            target = next(iter(shared))
        if target is not None and not state.vertex_marked(target):
            return Move(ALICE, VERTEX, target)
        in_tri = sorted(v for v in graph.faces[fid].cycle if not state.vertex_marked(v))
        if in_tri:
            return Move(ALICE, VERTEX, in_tri[0])
        fallback = _lowest_unmarked(state)
        return Move(ALICE, VERTEX, fallback) if fallback is not None else None

    return Strategy(ALICE, "angle", {"first": first, "seed": seed}, choose)


def alice_extension(
    big_graph: PlanarGraph,
    core_graph: PlanarGraph,
    inner: Strategy,
    n: int,
) -> Strategy:
    """Lift an Alice strategy from a vertex-induced core to a supergraph.

    Requires every vertex outside the core to have degree < ``n`` in the
    big graph.  After each of Alice's turns the inner strategy's contract
    is asserted: no unmarked core vertex may have ``n - 1`` or more marked
    incident core edges (violations raise with the offending state).
    """
    core_vids = set(core_graph.vertices)
    if not core_vids <= set(big_graph.vertices):
        raise StrategyError("core vertices are not a subset of the big graph")
    core_pairs = set(core_graph.edges)
    for u, v in big_graph.edges:
        if u in core_vids and v in core_vids and (u, v) not in core_pairs:
            raise StrategyError(f"core is not vertex-induced: missing edge ({u}, {v})")
    if not core_pairs <= set(big_graph.edges):
        raise StrategyError("core has edges absent from the big graph")
    for vid in big_graph.vertices:
        if vid not in core_vids and big_graph.degree(vid) >= n:
            raise StrategyError(f"outside vertex {vid} has degree {big_graph.degree(vid)} >= {n}")

    def project(state: GameState) -> GameState:
        moves = []
        for m in state.history:
            if m.side == ALICE and m.ref in core_vids:
                moves.append(m)
            elif m.side == BOB:
                pair = state.graph.edges[m.ref]
                if pair in core_pairs:
                    moves.append(Move(BOB, EDGE, core_graph.edge_index(*pair)))
        mv = 0
        for vid in core_vids:
            if state.vertex_marked(vid):
                mv |= 1 << core_graph.vertex_pos(vid)
        me = 0
        for m in moves:
            if m.side == BOB:
                me |= 1 << m.ref
        return GameState(
            core_graph,
            mv_bits=mv,
            me_bits=me,
            rounds_completed=me.bit_count(),
            to_move=ALICE,
            history=tuple(moves),
        )

    def assert_inner_contract(state: GameState, chosen: Optional[int]) -> None:
        for vid in core_graph.vertex_ids:
            if vid == chosen or state.vertex_marked(vid):
                continue
            marked = sum(
                1
                for e in core_graph.incident_edges(vid)
                if state.edge_marked(e)
            )
            if marked >= n - 1:
                raise ExtensionAssertionError(
                    f"inner strategy left unmarked core vertex {vid} with "
                    f"{marked} marked incident core edges",
                    state,
                )

    def free_move(state: GameState) -> Optional[Move]:
        vid = _lowest_unmarked(state)
        return Move(ALICE, VERTEX, vid) if vid is not None else None

    def choose(state: GameState) -> Optional[Move]:
        if state.graph is not big_graph:
            raise StrategyError("extension strategy bound to a different graph")
        core_state = project(state)
        last_bob = state.last_move(BOB)
        move: Optional[Move] = None
        if last_bob is None:
            move = free_move(state)
        else:
            u, v = state.graph.edges[last_bob.ref]
            u_in, v_in = u in core_vids, v in core_vids
            if u_in and v_in:
                inner_move = inner.choose(core_state)
                if inner_move is not None:
                    move = Move(ALICE, VERTEX, inner_move.ref)
                else:
                    move = free_move(state)
            elif u_in or v_in:
                w = u if u_in else v
                if not state.vertex_marked(w):
                    move = Move(ALICE, VERTEX, w)
                else:
                    move = free_move(state)
            else:
                move = free_move(state)
        assert_inner_contract(core_state, move.ref if move else None)
        return move

    return Strategy(ALICE, "extension", {"n": n, "inner": inner.descriptor}, choose)


def _marked_incident_count(state: GameState, vid: int) -> int:
    return (state.me_bits & state.graph.incidence_mask(vid)).bit_count()


def _greedy_alice_move(state: GameState) -> Optional[Move]:
    best_vid, best = None, -1
    for vid in state.graph.vertex_ids:
        if state.vertex_marked(vid):
            continue
        c = _marked_incident_count(state, vid)
        if c > best:
            best_vid, best = vid, c
    return Move(ALICE, VERTEX, best_vid) if best_vid is not None else None


def _greedy_bob_move(state: GameState) -> Optional[Move]:
    # Maximize (resulting max vertex score, vertices at that max); ties to
    # the lowest canonical edge index.
    g = state.graph
    scores = {
        vid: _marked_incident_count(state, vid)
        for vid in g.vertex_ids
        if not state.vertex_marked(vid)
    }
    if not scores:
        base_max, base_count = 0, 0
    else:
        base_max = max(scores.values())
        base_count = sum(1 for s in scores.values() if s == base_max)
    best = None
    best_key = None
    for eidx in state.unmarked_edges():
        u, v = g.edges[eidx]
        bumped = [w for w in (u, v) if w in scores]
        new_max = base_max if scores else 0
        for w in bumped:
            new_max = max(new_max, scores[w] + 1)
        count = 0
        if scores:
            count = sum(
                1 for vid, s in scores.items() if (s + (1 if vid in bumped else 0)) == new_max
            )
        key = (new_max, count)
        if best_key is None or key > best_key:
            best, best_key = eidx, key
    return Move(BOB, EDGE, best) if best is not None else None


def baseline_strategy(kind: str, seed: Optional[int] = None) -> Strategy:
    """Greedy and seeded-random baselines for both sides.

    ``alice_greedy`` marks the unmarked vertex with the most marked
    incident edges (lowest id on ties); ``bob_greedy`` marks the edge
    maximizing the resulting maximum vertex score, preferring moves that
    put more vertices at that maximum, lowest edge index on full ties.
    """
    if kind == "alice_greedy":
        return Strategy(ALICE, "greedy", {}, _greedy_alice_move)
    if kind == "bob_greedy":
        return Strategy(BOB, "greedy", {}, _greedy_bob_move)
    if kind in ("alice_random", "bob_random"):
        rng = random.Random(seed)
        side = ALICE if kind == "alice_random" else BOB

        def choose(state: GameState) -> Optional[Move]:
            if side == ALICE:
                options = state.unmarked_vertices()
                return Move(ALICE, VERTEX, rng.choice(options)) if options else None
            options = state.unmarked_edges()
            return Move(BOB, EDGE, rng.choice(options)) if options else None

        return Strategy(side, "random", {"seed": seed}, choose)
    raise StrategyError(f"unknown baseline {kind!r}")


def parse_strategy(
    descriptor: str,
    graph: PlanarGraph,
    scheme: Optional[MarkingScheme] = None,
    default_seed: Optional[int] = None,
) -> Strategy:
    """Build a strategy from a CLI descriptor string.

    Grammar: ``side:kind[:key=value]*`` with kinds ``angle`` (Alice, needs
    a scheme), ``freepath`` (Bob, param ``n``), ``greedy``, ``random``
    (param ``seed``).  ``default_seed`` seeds random strategies that do not
    carry an explicit seed.
    """
    from .freepath import bob_free_path  # local import to avoid a cycle

    parts = descriptor.split(":")
    if len(parts) < 2:
        raise StrategyError(f"bad strategy descriptor {descriptor!r}")
    side, kind = parts[0], parts[1]
    params: dict[str, str] = {}
    for p in parts[2:]:
        k, _, v = p.partition("=")
        params[k] = v
    if side not in (ALICE, BOB):
        raise StrategyError(f"bad side {side!r}")
    if kind == "angle":
        if side != ALICE:
            raise StrategyError("angle strategy is an Alice strategy")
        if scheme is None:
            raise StrategyError("angle strategy needs a marking scheme")
        seed = int(params["seed"]) if "seed" in params else None
        return alice_angle(graph, scheme, first=params.get("first", "lowest"), seed=seed)
    if kind == "freepath":
        if side != BOB:
            raise StrategyError("freepath strategy is a Bob strategy")
        return bob_free_path(int(params.get("n", 0)))
    if kind == "greedy":
        return baseline_strategy(f"{side}_greedy")
    if kind == "random":
        seed = int(params["seed"]) if "seed" in params else default_seed
        return baseline_strategy(f"{side}_random", seed=seed)
    raise StrategyError(f"unknown strategy kind {kind!r}")
