// Single-page wiring: new-game form, click-to-move board, hint overlay.
// The session id lives in the URL fragment so games are shareable.

import { ApiError, Client, defaultBaseUrl } from "./api.js";
import { legalTargets, renderBoard, renderStatus } from "./board.js";
import { BoardView } from "./types.js";

const client = new Client(defaultBaseUrl());

let view: BoardView | null = null;
let busy = false; // one in-flight mutation at a time

const boardEl = document.getElementById("board")!;
const statusEl = document.getElementById("status")!;
const noticeEl = document.getElementById("notice")!;
const form = document.getElementById("new-game") as HTMLFormElement;
const hintBtn = document.getElementById("hint") as HTMLButtonElement;

function notice(text: string, kind: "info" | "error" = "info") {
    noticeEl.textContent = text;
    noticeEl.className = kind;
}

function redraw() {
    if (!view) return;
    try {
        boardEl.innerHTML = renderBoard(view);
        statusEl.innerHTML = renderStatus(view);
    } catch (err) {
        notice(`malformed payload from service: ${err}`, "error");
        return;
    }
    hintBtn.disabled = view.game_over || busy || view.to_move !== view.human_side;
}

function flashLegal(tokens: string[]) {
    for (const token of tokens) {
        const el = boardEl.querySelector(`[data-object="${token}"]`);
        el?.classList.add("flash");
    }
    setTimeout(() => {
        boardEl.querySelectorAll(".flash").forEach((el) => el.classList.remove("flash"));
    }, 900);
}

async function refreshFromFragment() {
    const sid = window.location.hash.slice(1);
    if (!sid) return;
    try {
        view = await client.getState(sid);
        notice(`resumed session ${sid.slice(0, 8)}...`);
        redraw();
    } catch {
        notice("session in the URL fragment was not found", "error");
    }
}

form.addEventListener("submit", async (ev) => {
    ev.preventDefault();
    const data = new FormData(form);
    const humanSide = data.get("side") as "alice" | "bob";
    const machineSide = humanSide === "alice" ? "bob" : "alice";
    const strategyField = (data.get("strategy") as string).trim();
    try {
        view = await client.createSession({
            family: data.get("family") as string,
            rows: Number(data.get("rows")),
            cols: Number(data.get("cols")),
            human_side: humanSide,
            strategy: strategyField || (machineSide === "alice" ? "alice:angle" : "bob:freepath:n=0"),
            seed: 0,
        });
        window.location.hash = view.session_id;
        notice(`playing ${view.human_side} vs ${view.machine}`);
        redraw();
    } catch (err) {
        notice(err instanceof ApiError ? `cannot create game: ${JSON.stringify(err.detail)}` : "network failure; service unreachable", "error");
    }
});

boardEl.addEventListener("click", async (ev) => {
    if (!view || busy || view.game_over) return;
    const target = (ev.target as Element).closest("[data-object]");
    if (!target) return;
    const token = target.getAttribute("data-object")!;
    if (!legalTargets(view).has(token)) {
        flashLegal([...legalTargets(view)]);
        return;
    }
    busy = true;
    redraw();
    try {
        view = await client.submitMove(view.session_id, token);
        notice(view.game_over ? "game over" : "machine replied");
    } catch (err) {
        if (err instanceof ApiError && err.status === 409) {
            const detail = err.detail as { legal_moves?: string[] } | string;
            const legal = typeof detail === "object" && detail?.legal_moves ? detail.legal_moves : [];
            notice("illegal move", "error");
            flashLegal(legal);
        } else {
            // board unchanged; invite a retry
            notice("network failure; move not sent - retry", "error");
        }
    } finally {
        busy = false;
        redraw();
    }
});

hintBtn.addEventListener("click", async () => {
    if (!view) return;
    try {
        const { object } = await client.hint(view.session_id);
        if (object) {
            const el = boardEl.querySelector(`[data-object="${object}"]`);
            el?.classList.add("pulse");
            setTimeout(() => el?.classList.remove("pulse"), 1500);
            notice(`hint: ${object}`);
        }
    } catch {
        notice("hint unavailable", "error");
    }
});

window.addEventListener("hashchange", refreshFromFragment);
refreshFromFragment();
