// One-line explainers for the strategy picker; unknown ids hide the panel.

const BLURBS: Record<string, string> = {
  random: 'Plays any code still consistent with the feedback so far.',
  'min-worst':
    'Minimizes the largest group of candidates a response could leave behind.',
  'expected-size':
    'Minimizes the expected number of candidates remaining after the response.',
  'most-parts':
    'Most Parts: splits the candidates into as many feedback groups as possible.',
  entropy: 'Maximizes the information gained from the next response.',
  plus: 'Plays from the overlap of the entropy and most-parts top scorers (their union when the overlap is empty).',
  plus2: 'Entropy top scorers, refined by the most-parts score.',
  'plus2-swapped': 'Most-parts top scorers, refined by the entropy score.',
};

export function strategyBlurb(id: string): string | undefined {
  return BLURBS[id];
}

export const STRATEGY_IDS = Object.keys(BLURBS);
