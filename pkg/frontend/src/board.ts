// DOM rendering: the board is a direct projection of the server's session
// view, so what you see is exactly what GET /sessions/{id} returns.

import { HistoryEntry, SessionView } from './api.js';
import { StoreState } from './state.js';
import { strategyBlurb } from './strategyInfo.js';

export function pegColor(letter: string): string {
  const index = letter.charCodeAt(0) - 65;
  const hue = (index * 137.5) % 360;
  return `hsl(${hue}, 70%, 55%)`;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderGuessRow(entry: HistoryEntry, rowIndex: number): HTMLElement {
  const row = el('div', 'board-row');
  row.appendChild(el('span', 'row-number', String(rowIndex + 1)));
  const pegs = el('div', 'guess-pegs');
  for (const letter of entry.suggestion) {
    const peg = el('span', 'peg', letter);
    peg.style.backgroundColor = pegColor(letter);
    pegs.appendChild(peg);
  }
  row.appendChild(pegs);
  const feedback = el('div', 'feedback-pegs');
  if (entry.black !== null && entry.white !== null) {
    for (let i = 0; i < entry.black; i++) feedback.appendChild(el('span', 'fb black'));
    for (let i = 0; i < entry.white; i++) feedback.appendChild(el('span', 'fb white'));
    if (entry.black + entry.white === 0) feedback.appendChild(el('span', 'fb none', '0'));
  } else {
    feedback.appendChild(el('span', 'fb pending', '?'));
  }
  row.appendChild(feedback);
  return row;
}

export function renderBoard(container: HTMLElement, view: SessionView): void {
  container.replaceChildren();
  view.history.forEach((entry, i) => container.appendChild(renderGuessRow(entry, i)));
}

export interface BoardElements {
  board: HTMLElement;
  banner: HTMLElement;
  remaining: HTMLElement;
  suggestion: HTMLElement;
  feedbackForm: HTMLElement;
  undoButton: HTMLButtonElement;
  retryButton: HTMLButtonElement;
  errorBox: HTMLElement;
  strategyPanel: HTMLElement;
}

export function renderState(ui: BoardElements, state: StoreState): void {
  const { view, phase, error } = state;

  ui.errorBox.textContent = error ?? '';
  ui.errorBox.hidden = !error;
  ui.retryButton.hidden = phase !== 'error';

  if (!view) {
    ui.board.replaceChildren();
    ui.banner.textContent = phase === 'error' ? 'could not reach the advisor' : '';
    ui.banner.className = `banner ${phase === 'error' ? 'banner-error' : ''}`;
    ui.remaining.textContent = '';
    ui.suggestion.textContent = '';
    ui.feedbackForm.hidden = true;
    ui.undoButton.hidden = true;
    return;
  }

  renderBoard(ui.board, view);
  ui.remaining.textContent = `${view.remaining} candidate${view.remaining === 1 ? '' : 's'} left`;
  ui.suggestion.textContent = view.suggestion;

  if (phase === 'solved') {
    ui.banner.textContent = `Solved: ${view.suggestion} 🎉`;
    ui.banner.className = 'banner banner-solved';
    ui.feedbackForm.hidden = true;
    ui.undoButton.hidden = false;
  } else if (phase === 'contradiction') {
    ui.banner.textContent = 'No consistent codes remain — check your pegs';
    ui.banner.className = 'banner banner-contradiction';
    ui.feedbackForm.hidden = true;
    ui.undoButton.hidden = false;
  } else if (phase === 'loading') {
    ui.banner.textContent = 'thinking…';
    ui.banner.className = 'banner';
    ui.feedbackForm.hidden = true;
    ui.undoButton.hidden = true;
  } else {
    ui.banner.textContent = `Play ${view.suggestion}, then enter the pegs`;
    ui.banner.className = 'banner';
    ui.feedbackForm.hidden = false;
    ui.undoButton.hidden = view.history.length <= 1;
  }
}

export function renderStrategyPanel(panel: HTMLElement, strategyId: string): void {
  const blurb = strategyBlurb(strategyId);
  panel.hidden = blurb === undefined;
  panel.textContent = blurb ?? '';
}
