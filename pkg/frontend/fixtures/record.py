"""Record a deterministic human-vs-machine session through the real service.

The pseudo-human plays Bob, picking a seeded-random legal edge each turn;
the machine plays the angle strategy.  Writes session.json next to this
file: the creation request, every submitted move with the full returned
view, and the final transcript.  Run from the repo root:

    python3 frontend/fixtures/record.py
"""

from __future__ import annotations

import json
import random
from pathlib import Path

from fastapi.testclient import TestClient

from markgame.service import create_app


def main() -> None:
    client = TestClient(create_app())
    rng = random.Random(12345)
    create_req = {
        "family": "T",
        "rows": 3,
        "cols": 3,
        "human_side": "bob",
        "strategy": "alice:angle",
        "seed": 0,
    }
    view = client.post("/sessions", json=create_req).json()
    sid = view["session_id"]
    steps = []
    while len(steps) < 10 and not view["game_over"]:
        free = [e["id"] for e in view["edges"] if not e["marked"]]
        obj = f"e:{rng.choice(free)}"
        view = client.post(f"/sessions/{sid}/moves", json={"object": obj}).json()
        steps.append({"object": obj, "view": view})
    transcript = client.get(f"/sessions/{sid}/transcript").json()
    fixture = {
        "create": create_req,
        "initial_view": None,
        "steps": steps,
        "transcript": transcript,
    }
    # re-fetch the initial view deterministically by replaying a fresh session
    view0 = client.post("/sessions", json=create_req).json()
    fixture["initial_view"] = view0
    out = Path(__file__).with_name("session.json")
    # session ids are random; normalize them so the fixture is stable
    def scrub(obj):
        if isinstance(obj, dict):
            return {
                k: ("SESSION" if k == "session_id" else scrub(v)) for k, v in obj.items()
            }
        if isinstance(obj, list):
            return [scrub(x) for x in obj]
        return obj

    out.write_text(json.dumps(scrub(fixture), indent=2) + "\n")
    moves = len(transcript["moves"])
    print(f"recorded {moves} half-moves ({len(steps)} human submissions) -> {out}")


if __name__ == "__main__":
    main()
