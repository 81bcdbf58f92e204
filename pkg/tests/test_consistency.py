import random

import pytest

from mastermind_lab.codes import Response, enumerate_space, parse_code, respond, space_for
from mastermind_lab.consistency import (
    PlayedMove,
    filter_consistent,
    initial_set,
    is_consistent,
)

TABLE_GAME = [
    ("AABB", Response(2, 1)),
    ("ABFE", Response(2, 0)),
    ("ABBD", Response(3, 0)),
    ("BBBE", Response(2, 0)),
]


def history(kappa, ell, rows):
    return [PlayedMove(parse_code(g, kappa, ell), r) for g, r in rows]


class TestIsConsistent:
    def test_rejects_candidate_breaking_first_move(self):
        h = history(6, 4, TABLE_GAME[:1])
        assert not is_consistent(parse_code("ABFE", 6, 4), h)

    def test_empty_history_is_vacuous(self):
        assert is_consistent(parse_code("FFFF", 6, 4), [])

    def test_secret_survives_whole_game(self):
        h = history(6, 4, TABLE_GAME)
        assert is_consistent(parse_code("ABBC", 6, 4), h)

    def test_matches_respond_definition(self):
        rng = random.Random(7)
        codes = enumerate_space(3, 3)
        for _ in range(100):
            candidate = rng.choice(codes)
            guess = rng.choice(codes)
            r = respond(rng.choice(codes), guess)
            h = [PlayedMove(guess, r)]
            assert is_consistent(candidate, h) == (respond(candidate, guess) == r)


class TestFilterConsistent:
    def test_tiny_space_brute_force(self):
        full = initial_set(2, 2)
        move = PlayedMove(parse_code("AA", 2, 2), Response(0, 0))
        survivors = filter_consistent(full, move)
        # brute-force oracle over all four codes
        expected = [
            c for c in enumerate_space(2, 2) if respond(c, move.guess) == move.response
        ]
        assert survivors.codes == expected
        assert [str(c) for c in survivors.codes] == ["BB"]

    def test_all_black_keeps_only_the_guess(self):
        full = initial_set(6, 4)
        guess = parse_code("ABCA", 6, 4)
        survivors = filter_consistent(full, PlayedMove(guess, Response(4, 0)))
        assert survivors.codes == [guess]

    def test_no_color_overlap_count(self):
        full = initial_set(6, 4)
        move = PlayedMove(parse_code("ABCA", 6, 4), Response(0, 0))
        survivors = filter_consistent(full, move)
        expected = [
            c for c in enumerate_space(6, 4) if respond(c, move.guess) == move.response
        ]
        assert len(survivors) == len(expected) == 81

    def test_history_extended_and_order_kept(self):
        full = initial_set(6, 4)
        move = PlayedMove(parse_code("AABB", 6, 4), Response(2, 1))
        survivors = filter_consistent(full, move)
        assert survivors.history == (move,)
        indices = survivors.indices
        assert all(indices[i] < indices[i + 1] for i in range(len(indices) - 1))

    def test_empty_result_is_returned_not_raised(self):
        full = initial_set(2, 2)
        step1 = filter_consistent(
            full, PlayedMove(parse_code("AA", 2, 2), Response(0, 0))
        )
        # claiming zero overlap with BB as well contradicts a 2-color space
        step2 = filter_consistent(
            step1, PlayedMove(parse_code("BB", 2, 2), Response(0, 0))
        )
        assert len(step2) == 0
        assert step2.codes == []

    def test_idempotent_for_same_move(self):
        full = initial_set(6, 4)
        move = PlayedMove(parse_code("ABCA", 6, 4), Response(1, 1))
        once = filter_consistent(full, move)
        twice = filter_consistent(once, move)
        assert once.codes == twice.codes


class TestInitialSet:
    def test_sizes(self):
        assert len(initial_set(6, 4)) == 1296
        assert len(initial_set(8, 4)) == 4096
        assert [str(c) for c in initial_set(2, 1)] == ["A", "B"]

    def test_empty_history(self):
        assert initial_set(2, 1).history == ()

    def test_membership(self):
        full = initial_set(6, 4)
        assert parse_code("CFAD", 6, 4) in full


class TestInvariants:
    @pytest.mark.parametrize("kappa,ell", [(2, 3), (3, 2), (4, 2), (6, 2)])
    def test_secret_preserved_and_strictly_shrinking(self, kappa, ell):
        rng = random.Random(kappa * 100 + ell)
        space = space_for(kappa, ell)
        for _ in range(40):
            secret = space.code_at(rng.randrange(space.size))
            current = initial_set(kappa, ell)
            while len(current) > 1:
                guess = current.codes[rng.randrange(len(current))]
                response = respond(guess, secret)
                nxt = filter_consistent(current, PlayedMove(guess, response))
                assert secret in nxt
                if response != Response(ell, 0):
                    assert len(nxt) < len(current)
                else:
                    break
                current = nxt

    def test_monotonicity_for_nonmember_guess(self):
        # guesses outside the set may or may not shrink it, but never grow it
        rng = random.Random(5)
        space = space_for(3, 3)
        current = initial_set(3, 3)
        secret = space.code_at(11)
        guess = space.code_at(4)
        current = filter_consistent(current, PlayedMove(guess, respond(guess, secret)))
        for _ in range(20):
            outside = space.code_at(rng.randrange(space.size))
            move = PlayedMove(outside, respond(outside, secret))
            assert len(filter_consistent(current, move)) <= len(current)
