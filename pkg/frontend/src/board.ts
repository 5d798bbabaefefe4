// Pure SVG rendering of the service view. Everything here is a string
// builder with no DOM dependency, so tests can snapshot the output
// directly against recorded payloads.

import { BoardView, FaceView, VertexView } from "./types.js";

const PAD = 0.6;
const VERTEX_R = 0.14;
const ANGLE_R = 0.3;

function fmt(x: number): string {
    return Number(x.toFixed(4)).toString();
}

/** Objects the human may click right now, derived from the view only. */
export function legalTargets(view: BoardView): Set<string> {
    const targets = new Set<string>();
    if (view.game_over || view.to_move !== view.human_side) {
        return targets;
    }
    if (view.human_side === "alice") {
        for (const v of view.vertices) {
            if (!v.marked) targets.add(`v:${v.id}`);
        }
    } else {
        for (const e of view.edges) {
            if (!e.marked) targets.add(`e:${e.id}`);
        }
    }
    return targets;
}

function vertexIndex(view: BoardView): Map<number, VertexView> {
    const index = new Map<number, VertexView>();
    for (const v of view.vertices) index.set(v.id, v);
    return index;
}

function facePolygon(face: FaceView, index: Map<number, VertexView>): string {
    const points = face.cycle
        .map((id) => index.get(id)!)
        .map((v) => `${fmt(v.x)},${fmt(v.y)}`)
        .join(" ");
    const fill = face.color === "gray" ? "#b8b8b8" : "#ffffff";
    return `<polygon class="face ${face.color ?? "plain"}" points="${points}" fill="${fill}" stroke="none"/>`;
}

/** Small arc at the marked corner of a gray triangle, as in the figures. */
function markedAngleArc(face: FaceView, index: Map<number, VertexView>): string {
    if (face.marked_angle === null) return "";
    const at = index.get(face.marked_angle)!;
    const others = face.cycle.filter((id) => id !== face.marked_angle);
    if (others.length !== 2) return "";
    const [a, b] = others.map((id) => index.get(id)!);
    const da = Math.atan2(a.y - at.y, a.x - at.x);
    const db = Math.atan2(b.y - at.y, b.x - at.x);
    let sweep = db - da;
    while (sweep <= -Math.PI) sweep += 2 * Math.PI;
    while (sweep > Math.PI) sweep -= 2 * Math.PI;
    const start = da;
    const end = da + sweep;
    const sx = at.x + ANGLE_R * Math.cos(start);
    const sy = at.y + ANGLE_R * Math.sin(start);
    const ex = at.x + ANGLE_R * Math.cos(end);
    const ey = at.y + ANGLE_R * Math.sin(end);
    const flag = sweep > 0 ? 1 : 0;
    return (
        `<path class="angle-mark" d="M ${fmt(sx)} ${fmt(sy)} ` +
        `A ${ANGLE_R} ${ANGLE_R} 0 0 ${flag} ${fmt(ex)} ${fmt(ey)}" ` +
        `fill="none" stroke="#222" stroke-width="0.04"/>`
    );
}

/**
 * Render the whole board as an SVG string. Never computes scores: the
 * numbers shown are the payload's `score` fields verbatim.
 */
export function renderBoard(view: BoardView): string {
    const index = vertexIndex(view);
    const xs = view.vertices.map((v) => v.x);
    const ys = view.vertices.map((v) => v.y);
    const minX = Math.min(...xs) - PAD;
    const minY = Math.min(...ys) - PAD;
    const w = Math.max(...xs) - Math.min(...xs) + 2 * PAD;
    const h = Math.max(...ys) - Math.min(...ys) + 2 * PAD;
    const targets = legalTargets(view);

    const parts: string[] = [];
    parts.push(
        `<svg class="board" viewBox="${fmt(minX)} ${fmt(minY)} ${fmt(w)} ${fmt(h)}" xmlns="http://www.w3.org/2000/svg">`,
    );
    // flip y so larger y draws upward, matching the generator's geometry
    parts.push(`<g transform="translate(0 ${fmt(2 * minY + h)}) scale(1 -1)">`);
    for (const face of view.faces) {
        parts.push(facePolygon(face, index));
    }
    for (const face of view.faces) {
        const arc = markedAngleArc(face, index);
        if (arc) parts.push(arc);
    }
    for (const e of view.edges) {
        const u = index.get(e.u)!;
        const v = index.get(e.v)!;
        const cls = ["edge", e.marked ? "marked" : "unmarked"];
        if (targets.has(`e:${e.id}`)) cls.push("clickable");
        parts.push(
            `<line class="${cls.join(" ")}" data-object="e:${e.id}" ` +
                `x1="${fmt(u.x)}" y1="${fmt(u.y)}" x2="${fmt(v.x)}" y2="${fmt(v.y)}" ` +
                `stroke="${e.marked ? "#d62728" : "#333"}" stroke-width="${e.marked ? 0.09 : 0.04}"/>`,
        );
    }
    for (const v of view.vertices) {
        const hot = !v.marked && v.score >= 3;
        const cls = ["vertex", v.marked ? "marked" : "unmarked"];
        if (hot) cls.push("hot");
        if (targets.has(`v:${v.id}`)) cls.push("clickable");
        const fill = v.marked ? "#1f77b4" : hot ? "#ff7f0e" : "#fff";
        parts.push(
            `<circle class="${cls.join(" ")}" data-object="v:${v.id}" ` +
                `cx="${fmt(v.x)}" cy="${fmt(v.y)}" r="${VERTEX_R}" ` +
                `fill="${fill}" stroke="#000" stroke-width="0.03"/>`,
        );
    }
    for (const v of view.vertices) {
        // score labels: payload numbers, byte for byte
        parts.push(
            `<text class="score" data-vertex="${v.id}" x="${fmt(v.x + 0.18)}" y="${fmt(v.y + 0.18)}" ` +
                `font-size="0.28" transform="scale(1 -1) translate(0 ${fmt(-2 * (v.y + 0.18))})">${v.score}</text>`,
        );
    }
    parts.push("</g></svg>");
    return parts.join("\n");
}

/** Status strip: side to move, round, running scores, game-over banner. */
export function renderStatus(view: BoardView): string {
    const lines: string[] = [];
    lines.push(`<span class="family">${view.family}</span>`);
    lines.push(`<span class="round">round ${view.round}</span>`);
    lines.push(
        `<span class="turn">${view.game_over ? "game over" : `${view.to_move} to move`}</span>`,
    );
    lines.push(`<span class="trace">trace [${view.trace.join(", ")}]</span>`);
    lines.push(`<span class="final">final score so far ${view.final_score_so_far}</span>`);
    if (view.game_over) {
        lines.push(
            `<strong class="banner">Final score: ${view.final_score_so_far}</strong>`,
        );
    }
    return lines.join(" ");
}

/** The exact score strings shown for each vertex, for payload comparison. */
export function scoreLabels(view: BoardView): Record<string, string> {
    const labels: Record<string, string> = {};
    for (const v of view.vertices) {
        labels[`v:${v.id}`] = String(v.score);
    }
    return labels;
}
