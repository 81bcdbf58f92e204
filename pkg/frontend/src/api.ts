// Typed client for the advisor session API. The UI never computes game
// logic itself; everything flows through these four endpoints.

export interface HistoryEntry {
  suggestion: string;
  black: number | null;
  white: number | null;
}

export type SessionState = 'awaiting-feedback' | 'solved' | 'contradiction';

export interface SessionView {
  id: string;
  kappa: number;
  ell: number;
  strategy: string;
  state: SessionState;
  suggestion: string;
  remaining: number;
  history: HistoryEntry[];
}

export interface CreateSessionParams {
  kappa?: number;
  ell?: number;
  strategy?: string;
  first_move?: string;
  seed?: number;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = 'ApiError';
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class AdvisorClient {
  private fetchFn: FetchLike;

  constructor(private baseUrl = '', fetchFn?: FetchLike) {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request(path: string, init?: RequestInit): Promise<SessionView> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, `advisor service unreachable: ${String(err)}`);
    }
    if (!response.ok) {
      let detail = response.statusText || `HTTP ${response.status}`;
      try {
        const body = await response.json();
        if (body && typeof body.detail === 'string') detail = body.detail;
      } catch {
        // keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as SessionView;
  }

  createSession(params: CreateSessionParams): Promise<SessionView> {
    return this.request('/sessions', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(params),
    });
  }

  submitFeedback(id: string, black: number, white: number): Promise<SessionView> {
    return this.request(`/sessions/${encodeURIComponent(id)}/feedback`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ black, white }),
    });
  }

  undo(id: string): Promise<SessionView> {
    return this.request(`/sessions/${encodeURIComponent(id)}/undo`, {
      method: 'POST',
    });
  }

  getSession(id: string): Promise<SessionView> {
    return this.request(`/sessions/${encodeURIComponent(id)}`);
  }
}
