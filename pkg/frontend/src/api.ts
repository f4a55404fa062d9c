/** Thin REST client for the session service.
 *
 * Decision submission is idempotent on the server (keyed by episode index),
 * so the client retries transient failures with the identical body instead
 * of guessing whether the first attempt landed.
 */

import type {
  Decision,
  DecisionResult,
  ScreenEnvelope,
  SessionCreated,
  SessionStats,
} from "./types.js";

export interface CreateSessionOptions {
  seed?: number;
  p_genuine?: number;
  strategies?: string[];
  exploration?: number;
  profile_name?: string;
  universe_size?: number;
  fullscreen_fidelity?: "realistic" | "crayon";
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseOrThrow<T>(response: Response): Promise<T> {
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(response.status, body.code ?? "UNKNOWN", body.message ?? "request failed");
  }
  return body as T;
}

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly retries = 3,
    private readonly retryDelayMs = 150,
  ) {}

  async createSession(options: CreateSessionOptions = {}): Promise<SessionCreated> {
    const response = await fetch(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(options),
    });
    return parseOrThrow<SessionCreated>(response);
  }

  async getScreen(sessionId: string): Promise<ScreenEnvelope> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/screen`);
    return parseOrThrow<ScreenEnvelope>(response);
  }

  /** Post a decision; network failures are retried with the same
   * (episode, decision) pair, which the server resolves idempotently. */
  async submitDecision(
    sessionId: string,
    episode: number,
    decision: Decision,
  ): Promise<DecisionResult> {
    let lastError: unknown;
    for (let attempt = 0; attempt <= this.retries; attempt++) {
      try {
        const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/decision`, {
          method: "POST",
          headers: { "content-type": "application/json" },
          body: JSON.stringify({ episode, decision }),
        });
        return await parseOrThrow<DecisionResult>(response);
      } catch (error) {
        if (error instanceof ApiError) throw error; // the server answered; don't re-roll
        lastError = error;
        await sleep(this.retryDelayMs * (attempt + 1));
      }
    }
    throw lastError;
  }

  async getStats(sessionId: string): Promise<SessionStats> {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/stats`);
    return parseOrThrow<SessionStats>(response);
  }

  async getScreenSchema(): Promise<Record<string, unknown>> {
    const response = await fetch(`${this.baseUrl}/schema/v1/screen`);
    return parseOrThrow<Record<string, unknown>>(response);
  }
}
