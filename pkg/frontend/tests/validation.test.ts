import assert from 'node:assert/strict';
import { test } from 'node:test';

import { feedbackProblem } from '../src/validation.js';

test('legal pairs pass', () => {
  assert.equal(feedbackProblem(0, 0, 4), null);
  assert.equal(feedbackProblem(2, 1, 4), null);
  assert.equal(feedbackProblem(4, 0, 4), null);
  assert.equal(feedbackProblem(0, 4, 4), null);
  assert.equal(feedbackProblem(2, 2, 4), null);
});

test('too many pegs rejected', () => {
  assert.match(feedbackProblem(3, 2, 4) ?? '', /at most 4 pegs/);
  assert.match(feedbackProblem(0, 5, 4) ?? '', /at most 4 pegs/);
});

test('near-miss pair rejected', () => {
  assert.match(feedbackProblem(3, 1, 4) ?? '', /impossible/);
  assert.match(feedbackProblem(0, 1, 1) ?? '', /impossible/);
  assert.equal(feedbackProblem(2, 1, 4), null);
});

test('negative and fractional counts rejected', () => {
  assert.ok(feedbackProblem(-1, 0, 4));
  assert.ok(feedbackProblem(0, -2, 4));
  assert.ok(feedbackProblem(1.5, 0, 4));
});
