import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { legalTargets, renderBoard, renderStatus, scoreLabels } from "../src/board.js";
import { BoardView, Transcript } from "../src/types.js";

interface Fixture {
    create: Record<string, unknown>;
    initial_view: BoardView;
    steps: { object: string; view: BoardView }[];
    transcript: Transcript;
}

const here = dirname(fileURLToPath(import.meta.url));
const fixture: Fixture = JSON.parse(
    readFileSync(join(here, "..", "fixtures", "session.json"), "utf-8"),
);

const allViews: BoardView[] = [fixture.initial_view, ...fixture.steps.map((s) => s.view)];

describe("score display fidelity", () => {
    it("score labels byte-match the service payload in every recorded view", () => {
        for (const view of allViews) {
            const labels = scoreLabels(view);
            for (const v of view.vertices) {
                expect(labels[`v:${v.id}`]).toBe(String(v.score));
            }
        }
    });

    it("every rendered score text node carries the payload number verbatim", () => {
        for (const view of allViews) {
            const svg = renderBoard(view);
            for (const v of view.vertices) {
                const re = new RegExp(
                    `<text class="score" data-vertex="${v.id}"[^>]*>(\\d+)</text>`,
                );
                const match = svg.match(re);
                expect(match, `label for vertex ${v.id}`).not.toBeNull();
                expect(match![1]).toBe(String(v.score));
            }
        }
    });

    it("status strip shows the payload trace and final score verbatim", () => {
        for (const view of allViews) {
            const status = renderStatus(view);
            expect(status).toContain(`trace [${view.trace.join(", ")}]`);
            expect(status).toContain(`final score so far ${view.final_score_so_far}`);
        }
    });
});

describe("board rendering", () => {
    it("initial view snapshot", () => {
        expect(renderBoard(fixture.initial_view)).toMatchSnapshot();
    });

    it("final recorded view snapshot", () => {
        expect(renderBoard(fixture.steps[fixture.steps.length - 1].view)).toMatchSnapshot();
    });

    it("shades faces and draws one angle arc per gray triangle", () => {
        const view = fixture.initial_view;
        const svg = renderBoard(view);
        const grays = view.faces.filter((f) => f.color === "gray").length;
        expect((svg.match(/class="face gray"/g) ?? []).length).toBe(grays);
        expect((svg.match(/class="angle-mark"/g) ?? []).length).toBe(
            view.faces.filter((f) => f.marked_angle !== null).length,
        );
    });

    it("marked edges and vertices are visually distinct", () => {
        const view = fixture.steps[2].view;
        const svg = renderBoard(view);
        const markedEdges = view.edges.filter((e) => e.marked).length;
        expect((svg.match(/class="edge marked/g) ?? []).length).toBe(markedEdges);
        const markedVertices = view.vertices.filter((v) => v.marked).length;
        expect((svg.match(/class="vertex marked/g) ?? []).length).toBe(markedVertices);
    });

    it("hot highlight is exactly the unmarked-score-3 rule", () => {
        const base = fixture.initial_view;
        const doctored: BoardView = {
            ...base,
            vertices: base.vertices.map((v, i) =>
                i === 0 ? { ...v, score: 3, marked: false } : v,
            ),
        };
        const svg = renderBoard(doctored);
        expect(svg).toContain("hot");
        const cold = renderBoard(base);
        expect(cold).not.toContain("hot");
    });
});

describe("legal-move highlighting (the only client-side derivation)", () => {
    it("human Bob to move: exactly the unmarked edges", () => {
        const view = fixture.initial_view;
        expect(view.to_move).toBe("bob");
        const targets = legalTargets(view);
        const unmarked = view.edges.filter((e) => !e.marked).map((e) => `e:${e.id}`);
        expect([...targets].sort()).toEqual(unmarked.sort());
    });

    it("machine to move or game over: no targets", () => {
        const view = fixture.initial_view;
        expect(legalTargets({ ...view, to_move: "alice" }).size).toBe(0);
        expect(legalTargets({ ...view, game_over: true }).size).toBe(0);
    });
});

describe("recorded session shape", () => {
    it("covers at least 20 half-moves of human-vs-angle-Alice play", () => {
        expect(fixture.transcript.moves.length).toBeGreaterThanOrEqual(20);
        expect(fixture.create["strategy"]).toBe("alice:angle");
        const last = fixture.steps[fixture.steps.length - 1].view;
        expect(last.moves).toEqual(fixture.transcript.moves);
        expect(last.trace).toEqual(fixture.transcript.trace);
    });
});

describe("alice-side highlighting", () => {
    it("human Alice to move: exactly the unmarked vertices", () => {
        const view: BoardView = {
            ...fixture.initial_view,
            human_side: "alice",
            to_move: "alice",
        };
        const targets = legalTargets(view);
        const unmarked = view.vertices.filter((v) => !v.marked).map((v) => `v:${v.id}`);
        expect([...targets].sort()).toEqual(unmarked.sort());
    });
});
