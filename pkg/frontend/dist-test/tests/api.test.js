import assert from 'node:assert/strict';
import { test } from 'node:test';
import { AdvisorClient, ApiError } from '../src/api.js';
const VIEW = {
    id: 'abc123',
    kappa: 6,
    ell: 4,
    strategy: 'entropy',
    state: 'awaiting-feedback',
    suggestion: 'ABCA',
    remaining: 1296,
    history: [{ suggestion: 'ABCA', black: null, white: null }],
};
function stub(handler) {
    const calls = [];
    const fetchFn = async (input, init) => {
        calls.push({ input, init });
        return handler(input, init);
    };
    return { calls, fetchFn };
}
function ok(body) {
    return new Response(JSON.stringify(body), {
        status: 200,
        headers: { 'Content-Type': 'application/json' },
    });
}
test('createSession posts params to /sessions', async () => {
    const { calls, fetchFn } = stub(() => ok(VIEW));
    const client = new AdvisorClient('http://x', fetchFn);
    const view = await client.createSession({ kappa: 6, ell: 4, strategy: 'entropy' });
    assert.deepEqual(view, VIEW);
    assert.equal(calls[0].input, 'http://x/sessions');
    assert.equal(calls[0].init?.method, 'POST');
    assert.deepEqual(JSON.parse(String(calls[0].init?.body)), {
        kappa: 6,
        ell: 4,
        strategy: 'entropy',
    });
});
test('feedback, undo and get hit the session endpoints', async () => {
    const { calls, fetchFn } = stub(() => ok(VIEW));
    const client = new AdvisorClient('', fetchFn);
    await client.submitFeedback('abc123', 2, 1);
    await client.undo('abc123');
    await client.getSession('abc123');
    assert.deepEqual(calls.map((c) => c.input), ['/sessions/abc123/feedback', '/sessions/abc123/undo', '/sessions/abc123']);
    assert.deepEqual(JSON.parse(String(calls[0].init?.body)), { black: 2, white: 1 });
});
test('http errors carry the server detail', async () => {
    const { fetchFn } = stub(() => new Response(JSON.stringify({ detail: 'impossible peg pair' }), { status: 422 }));
    const client = new AdvisorClient('', fetchFn);
    await assert.rejects(client.submitFeedback('abc123', 3, 1), (err) => err instanceof ApiError && err.status === 422 && /impossible peg pair/.test(err.message));
});
test('unreachable service maps to status 0', async () => {
    const client = new AdvisorClient('', async () => {
        throw new TypeError('fetch failed');
    });
    await assert.rejects(client.createSession({}), (err) => err instanceof ApiError && err.status === 0);
});
