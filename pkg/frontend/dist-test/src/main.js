import { AdvisorClient } from './api.js';
import { renderState, renderStrategyPanel } from './board.js';
import { GameStore } from './state.js';
import { STRATEGY_IDS } from './strategyInfo.js';
function byId(id) {
    const node = document.getElementById(id);
    if (!node)
        throw new Error(`missing #${id}`);
    return node;
}
function apiBase() {
    // same origin by default; ?api=http://host:port overrides for dev servers
    const override = new URLSearchParams(window.location.search).get('api');
    return override ?? '';
}
export function boot() {
    const client = new AdvisorClient(apiBase());
    const store = new GameStore(client);
    const strategySelect = byId('strategy');
    for (const id of STRATEGY_IDS) {
        const option = document.createElement('option');
        option.value = id;
        option.textContent = id;
        if (id === 'entropy')
            option.selected = true;
        strategySelect.appendChild(option);
    }
    const ui = {
        board: byId('board'),
        banner: byId('banner'),
        remaining: byId('remaining'),
        suggestion: byId('suggestion'),
        feedbackForm: byId('feedback-form'),
        undoButton: byId('undo'),
        retryButton: byId('retry'),
        errorBox: byId('error'),
        strategyPanel: byId('strategy-info'),
    };
    const kappaInput = byId('kappa');
    const ellInput = byId('ell');
    const blackInput = byId('black');
    const whiteInput = byId('white');
    const validationBox = byId('validation');
    const start = () => store.start({
        kappa: Number(kappaInput.value),
        ell: Number(ellInput.value),
        strategy: strategySelect.value,
    });
    byId('start').addEventListener('click', start);
    ui.retryButton.addEventListener('click', () => store.retry());
    ui.undoButton.addEventListener('click', () => store.undo());
    strategySelect.addEventListener('change', () => renderStrategyPanel(ui.strategyPanel, strategySelect.value));
    byId('feedback-form').addEventListener('submit', async (event) => {
        event.preventDefault();
        const problem = await store.submitFeedback(Number(blackInput.value), Number(whiteInput.value));
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
