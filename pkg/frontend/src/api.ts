// Thin fetch client for the play service.

import { BoardView, CreateSessionRequest, Transcript } from "./types.js";

export class ApiError extends Error {
    constructor(
        public status: number,
        public detail: unknown,
    ) {
        super(`service error ${status}`);
    }
}

export class Client {
    constructor(public baseUrl: string) {}

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const resp = await fetch(this.baseUrl + path, {
            headers: { "Content-Type": "application/json" },
            ...init,
        });
        const body = await resp.json().catch(() => null);
        if (!resp.ok) {
            throw new ApiError(resp.status, body?.detail ?? body);
        }
        return body as T;
    }

    createSession(req: CreateSessionRequest): Promise<BoardView> {
        return this.request("/sessions", { method: "POST", body: JSON.stringify(req) });
    }

    getState(sessionId: string): Promise<BoardView> {
        return this.request(`/sessions/${sessionId}`);
    }

    submitMove(sessionId: string, object: string): Promise<BoardView> {
        return this.request(`/sessions/${sessionId}/moves`, {
            method: "POST",
            body: JSON.stringify({ object }),
        });
    }

    hint(sessionId: string): Promise<{ object: string | null }> {
        return this.request(`/sessions/${sessionId}/hint`);
    }

    transcript(sessionId: string): Promise<Transcript> {
        return this.request(`/sessions/${sessionId}/transcript`);
    }
}

export function defaultBaseUrl(): string {
    const params = new URLSearchParams(window.location.search);
    return params.get("api") ?? "http://127.0.0.1:8000";
}
