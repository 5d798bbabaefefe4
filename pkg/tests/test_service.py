from __future__ import annotations

import threading

import pytest
from fastapi.testclient import TestClient

from markgame.engine import BOB, Move, new_game, apply_move, round_score
from markgame.lattices import generate
from markgame.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def create(client, **overrides):
    body = {"family": "T", "rows": 3, "cols": 3, "human_side": "bob", "seed": 0}
    body.update(overrides)
    resp = client.post("/sessions", json=body)
    assert resp.status_code == 201, resp.text
    return resp.json()


def test_create_human_bob_gets_opening_move(client):
    view = create(client, strategy="alice:angle")
    assert sum(v["marked"] for v in view["vertices"]) == 1
    assert view["to_move"] == "bob"
    assert view["game_over"] is False


def test_create_human_alice_empty_board(client):
    view = create(client, human_side="alice", strategy="bob:freepath:n=0")
    assert sum(v["marked"] for v in view["vertices"]) == 0
    assert view["to_move"] == "alice"


def test_bad_strategy_rejected(client):
    resp = client.post(
        "/sessions",
        json={"family": "T", "rows": 2, "cols": 2, "human_side": "bob", "strategy": "bob:zzz"},
    )
    assert resp.status_code == 400


def test_wrong_side_strategy_rejected(client):
    resp = client.post(
        "/sessions",
        json={"family": "T", "rows": 2, "cols": 2, "human_side": "bob", "strategy": "bob:greedy"},
    )
    assert resp.status_code == 400  # machine must play alice here


def test_get_state_idempotent(client):
    view = create(client)
    sid = view["session_id"]
    again = client.get(f"/sessions/{sid}").json()
    assert again == view


def test_unknown_session_404(client):
    assert client.get("/sessions/deadbeef").status_code == 404
    assert client.post("/sessions/deadbeef/moves", json={"object": "e:0"}).status_code == 404


def test_submit_move_and_machine_reply(client):
    view = create(client, strategy="alice:angle")
    sid = view["session_id"]
    free_edge = next(e for e in view["edges"] if not e["marked"])
    resp = client.post(f"/sessions/{sid}/moves", json={"object": f"e:{free_edge['id']}"})
    assert resp.status_code == 200
    after = resp.json()
    assert after["edges"][free_edge["id"]]["marked"] is True
    # machine Alice replied: two marked vertices now
    assert sum(v["marked"] for v in after["vertices"]) == 2
    assert after["to_move"] == "bob"
    assert len(after["trace"]) == 1


def test_illegal_move_rejected_with_legal_list(client):
    view = create(client, strategy="alice:angle")
    sid = view["session_id"]
    free_edge = next(e["id"] for e in view["edges"] if not e["marked"])
    client.post(f"/sessions/{sid}/moves", json={"object": f"e:{free_edge}"})
    resp = client.post(f"/sessions/{sid}/moves", json={"object": f"e:{free_edge}"})
    assert resp.status_code == 409
    detail = resp.json()["detail"]
    assert detail["error"] == "illegal move"
    assert f"e:{free_edge}" not in detail["legal_moves"]
    assert detail["legal_moves"]


def test_wrong_object_kind_rejected(client):
    view = create(client)
    sid = view["session_id"]
    resp = client.post(f"/sessions/{sid}/moves", json={"object": "v:0"})
    assert resp.status_code == 409


def test_hint_for_bob_prefers_free_path_edge(client):
    view = create(client, strategy="alice:angle")
    sid = view["session_id"]
    resp = client.get(f"/sessions/{sid}/hint")
    assert resp.status_code == 200
    token = resp.json()["object"]
    assert token.startswith("e:")
    legal = {f"e:{e['id']}" for e in view["edges"] if not e["marked"]}
    assert token in legal


def test_hint_for_alice_is_angle_move(client):
    view = create(client, human_side="alice", strategy="bob:random:seed=5")
    sid = view["session_id"]
    token = client.get(f"/sessions/{sid}/hint").json()["object"]
    assert token.startswith("v:")


def test_play_to_completion_and_transcript_replay(client):
    view = create(client, rows=2, cols=2, strategy="alice:angle")
    sid = view["session_id"]
    guard = 0
    while not view["game_over"] and guard < 100:
        edge = next((e for e in view["edges"] if not e["marked"]), None)
        if edge is None:
            break
        resp = client.post(f"/sessions/{sid}/moves", json={"object": f"e:{edge['id']}"})
        if resp.status_code != 200:
            break
        view = resp.json()
        guard += 1
    assert view["game_over"] is True
    assert view["final_score_so_far"] <= 3

    transcript = client.get(f"/sessions/{sid}/transcript").json()
    bundle = generate("T", rows=2, cols=2)
    state = new_game(bundle.graph)
    trace = []
    for m in transcript["moves"]:
        state = apply_move(state, Move.from_token(m["side"], m["object_id"]))
        if m["side"] == BOB:
            trace.append(round_score(state)[0])
    assert trace == transcript["trace"]
    assert transcript["final_score"] == max(trace, default=0)
    # the replayed state matches the served view exactly
    marked_v = {v["id"] for v in view["vertices"] if v["marked"]}
    assert state.marked_vertices == frozenset(marked_v)
    marked_e = {e["id"] for e in view["edges"] if e["marked"]}
    assert state.marked_edges == frozenset(marked_e)


def test_concurrent_submission_conflict(client):
    # two racing submissions of the same move: at most one may win, the
    # loser gets a conflict (409 either from the lock or the legality check)
    view = create(client, strategy="alice:angle")
    sid = view["session_id"]
    edge = next(e["id"] for e in view["edges"] if not e["marked"])
    results = []

    def submit():
        r = client.post(f"/sessions/{sid}/moves", json={"object": f"e:{edge}"})
        results.append(r.status_code)

    threads = [threading.Thread(target=submit) for _ in range(2)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sorted(results)[0] in (200, 409)
    assert results.count(200) <= 1  # at most one winner for the same edge


def test_hint_never_mutates(client):
    view = create(client, strategy="alice:angle")
    sid = view["session_id"]
    client.get(f"/sessions/{sid}/hint")
    client.get(f"/sessions/{sid}/hint")
    assert client.get(f"/sessions/{sid}").json() == view


def test_schemeless_family_gets_greedy_machine(client):
    view = create(client, family="H", rows=2, cols=2, strategy=None)
    assert view["machine"].startswith("alice:greedy")
    assert view["to_move"] == "bob"
    assert all(f["color"] is None for f in view["faces"])


def test_apollonian_session(client):
    resp = client.post(
        "/sessions",
        json={"family": "apollonian", "insertions": 6, "human_side": "alice", "seed": 1},
    )
    assert resp.status_code == 201
    view = resp.json()
    assert len(view["vertices"]) == 9
    assert view["to_move"] == "alice"
