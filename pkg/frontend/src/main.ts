import { AdvisorClient } from './api.js';
import { BoardElements, renderState, renderStrategyPanel } from './board.js';
import { GameStore } from './state.js';
import { STRATEGY_IDS } from './strategyInfo.js';

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function apiBase(): string {
  // same origin by default; ?api=http://host:port overrides for dev servers
  const override = new URLSearchParams(window.location.search).get('api');
  return override ?? '';
}

export function boot(): void {
  const client = new AdvisorClient(apiBase());
  const store = new GameStore(client);

  const strategySelect = byId<HTMLSelectElement>('strategy');
  for (const id of STRATEGY_IDS) {
    const option = document.createElement('option');
    option.value = id;
    option.textContent = id;
    if (id === 'entropy') option.selected = true;
    strategySelect.appendChild(option);
  }

  const ui: BoardElements = {
    board: byId('board'),
    banner: byId('banner'),
    remaining: byId('remaining'),
    suggestion: byId('suggestion'),
    feedbackForm: byId('feedback-form'),
    undoButton: byId<HTMLButtonElement>('undo'),
    retryButton: byId<HTMLButtonElement>('retry'),
    errorBox: byId('error'),
    strategyPanel: byId('strategy-info'),
  };

  const kappaInput = byId<HTMLInputElement>('kappa');
  const ellInput = byId<HTMLInputElement>('ell');
  const blackInput = byId<HTMLInputElement>('black');
  const whiteInput = byId<HTMLInputElement>('white');
  const validationBox = byId('validation');

  const start = () =>
    store.start({
      kappa: Number(kappaInput.value),
      ell: Number(ellInput.value),
      strategy: strategySelect.value,
    });

  byId<HTMLButtonElement>('start').addEventListener('click', start);
  ui.retryButton.addEventListener('click', () => store.retry());
  ui.undoButton.addEventListener('click', () => store.undo());
  strategySelect.addEventListener('change', () =>
    renderStrategyPanel(ui.strategyPanel, strategySelect.value),
  );

  byId<HTMLFormElement>('feedback-form').addEventListener('submit', async (event) => {
    event.preventDefault();
    const problem = await store.submitFeedback(
      Number(blackInput.value),
      Number(whiteInput.value),
    );
    validationBox.textContent = problem ?? '';
    validationBox.hidden = !problem;
    if (!problem) {
      blackInput.value = '0';
      whiteInput.value = '0';
    }
  });

  store.subscribe((state) => renderState(ui, state));
  renderStrategyPanel(ui.strategyPanel, strategySelect.value);
}

boot();
