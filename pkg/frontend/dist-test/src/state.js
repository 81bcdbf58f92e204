// Session state store: a thin mirror of the server's session view plus the
// request lifecycle (loading / error). The rendering layer subscribes and
// redraws; it never talks to the API directly.
import { ApiError, } from './api.js';
import { feedbackProblem } from './validation.js';
function phaseOf(view) {
    if (view.state === 'solved')
        return 'solved';
    if (view.state === 'contradiction')
        return 'contradiction';
    return 'playing';
}
export class GameStore {
    constructor(client) {
        this.client = client;
        this.state = { phase: 'idle', view: null, error: null, lastParams: null };
        this.listeners = [];
    }
    subscribe(listener) {
        this.listeners.push(listener);
        listener(this.state);
        return () => {
            this.listeners = this.listeners.filter((l) => l !== listener);
        };
    }
    set(partial) {
        this.state = { ...this.state, ...partial };
        for (const listener of this.listeners)
            listener(this.state);
    }
    async start(params) {
        this.set({ phase: 'loading', error: null, lastParams: params });
        try {
            const view = await this.client.createSession(params);
            this.set({ phase: phaseOf(view), view, error: null });
        }
        catch (err) {
            this.set({ phase: 'error', view: null, error: describe(err) });
        }
    }
    async retry() {
        if (this.state.lastParams)
            await this.start(this.state.lastParams);
    }
    /** Returns a validation message when the pegs are impossible; otherwise
     * submits and returns null. */
    async submitFeedback(black, white) {
        const view = this.state.view;
        if (!view || this.state.phase !== 'playing') {
            return 'no active game';
        }
        const problem = feedbackProblem(black, white, view.ell);
        if (problem)
            return problem;
        this.set({ phase: 'loading', error: null });
        try {
            const next = await this.client.submitFeedback(view.id, black, white);
            this.set({ phase: phaseOf(next), view: next, error: null });
        }
        catch (err) {
            if (err instanceof ApiError && err.status === 422) {
                // server-side legality net: surface inline, keep playing
                this.set({ phase: 'playing', error: err.message });
                return err.message;
            }
            this.set({ phase: 'error', error: describe(err) });
        }
        return null;
    }
    async undo() {
        const view = this.state.view;
        if (!view)
            return;
        this.set({ phase: 'loading', error: null });
        try {
            const next = await this.client.undo(view.id);
            this.set({ phase: phaseOf(next), view: next, error: null });
        }
        catch (err) {
            this.set({ phase: 'error', error: describe(err) });
        }
    }
    async refresh() {
        const view = this.state.view;
        if (!view)
            return;
        try {
            const next = await this.client.getSession(view.id);
            this.set({ phase: phaseOf(next), view: next });
        }
        catch (err) {
            this.set({ phase: 'error', error: describe(err) });
        }
    }
}
function describe(err) {
    if (err instanceof ApiError)
        return err.message;
    return String(err);
}
