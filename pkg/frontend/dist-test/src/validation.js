// The one piece of game knowledge the client keeps: which peg pairs are
// possible at all, so obvious typos never reach the server.
export function feedbackProblem(black, white, ell) {
    if (!Number.isInteger(black) || !Number.isInteger(white)) {
        return 'peg counts must be whole numbers';
    }
    if (black < 0 || white < 0) {
        return 'peg counts cannot be negative';
    }
    if (black + white > ell) {
        return `at most ${ell} pegs fit a code of length ${ell}`;
    }
    if (black === ell - 1 && white === 1) {
        return `${black}-${white} is impossible: one misplaced symbol has nowhere to go`;
    }
    return null;
}
