// Typed client for the advisor session API. The UI never computes game
// logic itself; everything flows through these four endpoints.
export class ApiError extends Error {
    constructor(status, message) {
        super(message);
        this.status = status;
        this.name = 'ApiError';
    }
}
export class AdvisorClient {
    constructor(baseUrl = '', fetchFn) {
        this.baseUrl = baseUrl;
        this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
    }
    async request(path, init) {
        let response;
        try {
            response = await this.fetchFn(this.baseUrl + path, init);
        }
        catch (err) {
            throw new ApiError(0, `advisor service unreachable: ${String(err)}`);
        }
        if (!response.ok) {
            let detail = response.statusText || `HTTP ${response.status}`;
            try {
                const body = await response.json();
                if (body && typeof body.detail === 'string')
                    detail = body.detail;
            }
            catch {
                // keep the status text
            }
            throw new ApiError(response.status, detail);
        }
        return (await response.json());
    }
    createSession(params) {
        return this.request('/sessions', {
            method: 'POST',
            headers: { 'Content-Type': 'application/json' },
            body: JSON.stringify(params),
        });
    }
    submitFeedback(id, black, white) {
        return this.request(`/sessions/${encodeURIComponent(id)}/feedback`, {
            method: 'POST',
            headers: { 'Content-Type': 'application/json' },
            body: JSON.stringify({ black, white }),
        });
    }
    undo(id) {
        return this.request(`/sessions/${encodeURIComponent(id)}/undo`, {
            method: 'POST',
        });
    }
    getSession(id) {
        return this.request(`/sessions/${encodeURIComponent(id)}`);
    }
}
