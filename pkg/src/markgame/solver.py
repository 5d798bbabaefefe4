"""Exact col_ve on small graphs via memoized adversarial search.

The threshold game asks whether Bob can force some post-round state with
an unmarked vertex touching at least s marked edges; Alice minimizes.
col_ve is 1 plus the largest winning s (1 for edgeless graphs, where the
supremum runs over an empty set).  Search state is the pair of mark
bitsets plus the side to move: future play never depends on move order,
so the memo key ignores history.

Verdicts are exact or "unknown" (node budget exhausted) -- never guessed.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .engine import ALICE, BOB, EDGE, VERTEX, GameState, Move, new_game
from .graph import PlanarGraph, is_subgraph
from .orientation import Orientation, orientation_bound

DEFAULT_BUDGET = 5_000_000


class _BudgetExhausted(Exception):
    pass


class SubgraphError(ValueError):
    pass


@dataclass
class ForceResult:
    """One threshold-game verdict: True/False, or None when out of budget."""

    s: int
    verdict: Optional[bool]
    line: tuple[Move, ...] = ()
    nodes: int = 0
    memo_hits: int = 0


@dataclass
class SolveResult:
    value: Optional[int]
    bracket: tuple[int, int]
    verdicts: dict[int, Optional[bool]] = field(default_factory=dict)
    lines: dict[int, tuple[Move, ...]] = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "bracket": list(self.bracket),
            "verdicts": {str(s): v for s, v in sorted(self.verdicts.items())},
            "lines": {
                str(s): [m.token() for m in line] for s, line in sorted(self.lines.items())
            },
            "stats": self.stats,
        }


def default_budget() -> int:
    env = os.environ.get("MARKGAME_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class _Searcher:
    def __init__(self, graph: PlanarGraph, s: int, budget: Optional[int]):
        self.g = graph
        self.s = s
        self.budget = budget
        self.n = len(graph.vertex_ids)
        self.m = len(graph.edges)
        self.full_v = (1 << self.n) - 1
        self.full_e = (1 << self.m) - 1
        self.inc = [graph.incidence_mask(vid) for vid in graph.vertex_ids]
        self.epts = [
            (graph.vertex_pos(u), graph.vertex_pos(v)) for u, v in graph.edges
        ]
        self.memo: dict[tuple[int, int, bool], bool] = {}
        self.nodes = 0
        self.hits = 0

    def over(self, mv: int, me: int) -> bool:
        return mv == self.full_v or me == self.full_e

    def wins_now(self, mv: int, me: int, e: int) -> bool:
        """Marking e reaches the threshold at one of its endpoints."""
        me2 = me | (1 << e)
        for p in self.epts[e]:
            if not mv >> p & 1 and (me2 & self.inc[p]).bit_count() >= self.s:
                return True
        return False

    def search(self, mv: int, me: int, alice_to_move: bool) -> bool:
        key = (mv, me, alice_to_move)
        cached = self.memo.get(key)
        if cached is not None:
            self.hits += 1
            return cached
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _BudgetExhausted
        if self.over(mv, me):
            res = False
        elif alice_to_move:
            res = True
            for p in range(self.n):
                if not mv >> p & 1:
                    if not self.search(mv | (1 << p), me, False):
                        res = False
                        break
        else:
            res = False
            for e in range(self.m):
                if not me >> e & 1:
                    if self.wins_now(mv, me, e) or self.search(mv, me | (1 << e), True):
                        res = True
                        break
        self.memo[key] = res
        return res

    def principal_variation(self, mv: int, me: int, alice_to_move: bool) -> tuple[Move, ...]:
        """Deterministic line consistent with the computed root verdict."""
        verdict = self.search(mv, me, alice_to_move)
        line: list[Move] = []
        g = self.g
        while not self.over(mv, me) and len(line) <= 2 * (self.n + self.m):
            if alice_to_move:
                pick = None
                for p in range(self.n):
                    if mv >> p & 1:
                        continue
                    child = self.search(mv | (1 << p), me, False)
                    if child == verdict:
                        pick = p
                        break
                    if pick is None:
                        pick = p
                if pick is None:
                    break
                mv |= 1 << pick
                line.append(Move(ALICE, VERTEX, g.vertex_ids[pick]))
                alice_to_move = False
            else:
                pick = None
                immediate = False
                for e in range(self.m):
                    if me >> e & 1:
                        continue
                    if verdict and self.wins_now(mv, me, e):
                        pick, immediate = e, True
                        break
                    child = self.search(mv, me | (1 << e), True)
                    if child == verdict:
                        pick = e
                        break
                    if pick is None:
                        pick = e
                if pick is None:
                    break
                me |= 1 << pick
                line.append(Move(BOB, EDGE, pick))
                alice_to_move = True
                if immediate:
                    break
        return tuple(line)


def _current_score(state: GameState) -> int:
    best = 0
    g = state.graph
    for vid in g.vertex_ids:
        if not state.vertex_marked(vid):
            best = max(best, (state.me_bits & g.incidence_mask(vid)).bit_count())
    return best


def bob_can_force(
    graph: PlanarGraph,
    s: int,
    from_state: Optional[GameState] = None,
    node_budget: Optional[int] = None,
    parallel: bool = False,
    with_line: bool = True,
) -> ForceResult:
    """Exact threshold-game verdict: can Bob force a round score >= s?

    The score is examined after Bob's half-moves only, plus once at the
    supplied root (a handed-in position may already sit at the threshold).
    ``parallel`` splits the root's children over threads sharing the memo
    table; entries are write-once and value-idempotent, so verdicts do not
    depend on interleaving.
    """
    if s < 1:
        raise ValueError("threshold s must be >= 1")
    if from_state is not None and from_state.graph is not graph:
        raise ValueError("from_state belongs to a different graph")
    state = from_state if from_state is not None else new_game(graph)
    if _current_score(state) >= s:
        return ForceResult(s, True, (), 0, 0)
    searcher = _Searcher(graph, s, node_budget)
    alice_to_move = state.to_move == ALICE
    try:
        if parallel and not searcher.over(state.mv_bits, state.me_bits):
            verdict = _parallel_root(searcher, state.mv_bits, state.me_bits, alice_to_move)
        else:
            verdict = searcher.search(state.mv_bits, state.me_bits, alice_to_move)
    except _BudgetExhausted:
        return ForceResult(s, None, (), searcher.nodes, searcher.hits)
    line: tuple[Move, ...] = ()
    if with_line:
        try:
            line = searcher.principal_variation(state.mv_bits, state.me_bits, alice_to_move)
        except _BudgetExhausted:
            line = ()
    return ForceResult(s, verdict, line, searcher.nodes, searcher.hits)


def _parallel_root(searcher: _Searcher, mv: int, me: int, alice_to_move: bool) -> bool:
    if alice_to_move:
        children = [
            (mv | (1 << p), me, False) for p in range(searcher.n) if not mv >> p & 1
        ]
        combine = all
    else:
        for e in range(searcher.m):
            if not me >> e & 1 and searcher.wins_now(mv, me, e):
                searcher.memo[(mv, me, alice_to_move)] = True
                return True
        children = [
            (mv, me | (1 << e), True) for e in range(searcher.m) if not me >> e & 1
        ]
        combine = any
    with ThreadPoolExecutor(max_workers=min(8, max(1, len(children)))) as pool:
        results = list(pool.map(lambda c: searcher.search(*c), children))
    verdict = combine(results)
    searcher.memo[(mv, me, alice_to_move)] = verdict
    return verdict


def solve_colve(
    graph: PlanarGraph,
    node_budget: Optional[int] = None,
    with_lines: bool = True,
) -> SolveResult:
    """col_ve by ascending threshold sweep, exploiting monotonicity.

    On budget exhaustion the result is a bracket (the exact value is
    somewhere inside) with ``value=None``.
    """
    start = time.perf_counter()
    budget = node_budget if node_budget is not None else default_budget()
    delta = graph.max_degree
    verdicts: dict[int, Optional[bool]] = {}
    lines: dict[int, tuple[Move, ...]] = {}
    nodes = hits = 0
    best_true = 0
    unknown = False
    for s in range(1, delta + 1):
        res = bob_can_force(graph, s, node_budget=budget, with_line=with_lines)
        verdicts[s] = res.verdict
        nodes += res.nodes
        hits += res.memo_hits
        if res.verdict:
            best_true = s
            if res.line:
                lines[s] = res.line
        elif res.verdict is None:
            unknown = True
            break
        else:
            break
    value = None if unknown else best_true + 1
    bracket = (best_true + 1, delta + 1) if unknown else (value, value)
    stats = {
        "nodes": nodes,
        "memo_hits": hits,
        "wall_ms": round((time.perf_counter() - start) * 1000, 3),
    }
    return SolveResult(value, bracket, verdicts, lines, stats)


@dataclass
class BoundsReport:
    lo: int
    hi: int
    delta_bound: int
    orientation_bound: int
    orientation: Orientation
    subgraph_values: dict[str, int] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return self.lo <= self.hi

    def to_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "delta_plus_one": self.delta_bound,
            "orientation_d_plus_two": self.orientation_bound,
            "orientation_d": self.orientation.d,
            "subgraph_values": dict(self.subgraph_values),
            "consistent": self.consistent,
        }


def bounds_report(
    graph: PlanarGraph,
    subgraphs: tuple = (),
    node_budget: Optional[int] = None,
) -> BoundsReport:
    """Bracket col_ve: hi = min(Delta+1, d+2); lo from solved subgraphs.

    Each supplied subgraph must verify as a vertex/edge subset (else
    :class:`SubgraphError`) and is solved exactly to raise the lower
    bound.  Any graph with an edge has col_ve >= 2; an edgeless graph is
    exactly 1.
    """
    delta_bound = graph.max_degree + 1
    orient = orientation_bound(graph)
    hi = min(delta_bound, orient.d + 2)
    lo = 2 if graph.edges else 1
    sub_values: dict[str, int] = {}
    for i, sub in enumerate(subgraphs):
        if not is_subgraph(sub, graph):
            raise SubgraphError(f"claimed subgraph #{i} is not a subgraph")
        res = solve_colve(sub, node_budget=node_budget, with_lines=False)
        if res.value is not None:
            sub_values[f"subgraph_{i}"] = res.value
            lo = max(lo, res.value)
    return BoundsReport(lo, hi, delta_bound, orient.d + 2, orient, sub_values)
