// Mirror of the play-service state view. The board renders exactly this
// payload; the only client-side derivation is legal-move highlighting.

export interface VertexView {
    id: number;
    x: number;
    y: number;
    marked: boolean;
    score: number;
}

export interface EdgeView {
    id: number;
    u: number;
    v: number;
    marked: boolean;
}

export interface FaceView {
    id: number;
    cycle: number[];
    color: "gray" | "white" | null;
    marked_angle: number | null;
}

export interface MoveRecord {
    side: "alice" | "bob";
    object_id: string;
}

export interface BoardView {
    session_id: string;
    family: string;
    human_side: "alice" | "bob";
    machine: string;
    vertices: VertexView[];
    edges: EdgeView[];
    faces: FaceView[];
    to_move: "alice" | "bob";
    round: number;
    trace: number[];
    current_score: number;
    current_witness: number | null;
    final_score_so_far: number;
    game_over: boolean;
    moves: MoveRecord[];
}

export interface Transcript {
    graph_ref: string;
    moves: MoveRecord[];
    trace: number[];
    final_score: number;
}

export interface CreateSessionRequest {
    family: string;
    rows: number;
    cols: number;
    human_side: "alice" | "bob";
    strategy?: string;
    seed?: number;
}
