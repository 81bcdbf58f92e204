import builtins
import json

import pytest

from mastermind_lab.cli import main
from mastermind_lab.codes import parse_code, respond


class TestRun:
    def test_tiny_random_run(self, tmp_path, capsys):
        code = main(
            [
                "run", "--kappa", "2", "--ell", "1", "--strategy", "random",
                "--reps", "1", "--seed", "1", "--out-dir", str(tmp_path),
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "random: mean" in out
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["strategies"]["random"]["max_moves"] <= 2
        assert (tmp_path / "games.jsonl").exists()
        assert (tmp_path / "permove.csv").exists()
        assert (tmp_path / "hist.csv").exists()

    def test_multiple_strategies_print_pair_p(self, tmp_path, capsys):
        code = main(
            [
                "run", "--kappa", "2", "--ell", "2", "--strategy", "entropy",
                "--strategy", "most-parts", "--reps", "2", "--seed", "3",
                "--out-dir", str(tmp_path),
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "entropy vs most-parts: wilcoxon p =" in out

    def test_bad_first_move_length_fails(self, capsys):
        code = main(
            [
                "run", "--kappa", "6", "--ell", "4", "--strategy", "plus",
                "--first-move", "ABCDE", "--reps", "1", "--seed", "1",
            ]
        )
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_unknown_strategy_rejected(self, capsys):
        with pytest.raises(SystemExit):
            main(["run", "--strategy", "psychic"])


class TestGenInstances:
    def test_writes_requested_lines(self, tmp_path, capsys):
        out = tmp_path / "inst.txt"
        code = main(
            [
                "gen-instances", "--kappa", "2", "--ell", "2", "--size", "6",
                "--seed", "4", "--out", str(out),
            ]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("# kappa=2 ell=2 seed=4")
        assert len(lines) == 7

    def test_instances_feed_run(self, tmp_path, capsys):
        inst = tmp_path / "inst.txt"
        main(
            [
                "gen-instances", "--kappa", "2", "--ell", "2", "--size", "5",
                "--seed", "4", "--out", str(inst),
            ]
        )
        code = main(
            [
                "run", "--kappa", "2", "--ell", "2", "--strategy", "entropy",
                "--instances", str(inst), "--seed", "1",
                "--out-dir", str(tmp_path / "results"),
            ]
        )
        assert code == 0
        assert "games 5" in capsys.readouterr().out


class TestCompareAndReplay:
    @pytest.fixture()
    def games_file(self, tmp_path):
        main(
            [
                "run", "--kappa", "3", "--ell", "2", "--strategy", "entropy",
                "--reps", "2", "--seed", "7", "--out-dir", str(tmp_path),
            ]
        )
        return tmp_path / "games.jsonl"

    def test_compare_against_itself(self, games_file, capsys):
        code = main(["compare", str(games_file), str(games_file)])
        assert code == 0
        out = capsys.readouterr().out
        assert "wilcoxon p = 1.0000" in out

    def test_replay_all_records(self, games_file, capsys):
        code = main(["replay", str(games_file)])
        assert code == 0
        assert "0 divergent" in capsys.readouterr().out

    def test_replay_detects_tampering(self, games_file, tmp_path, capsys):
        records = [json.loads(line) for line in games_file.read_text().splitlines()]
        victim = next(r for r in records if r["n_moves"] >= 2)
        victim["moves"][0]["response"]["white"] = (
            victim["moves"][0]["response"]["white"] + 1
        ) % 2
        bad = tmp_path / "tampered.jsonl"
        bad.write_text("\n".join(json.dumps(r) for r in records) + "\n")
        code = main(["replay", str(bad)])
        assert code == 1
        assert "diverges" in capsys.readouterr().out


class FakeTerminal:
    """Drives cmd_play: answers honestly for a fixed secret by reading the
    suggestion lines the command prints."""

    def __init__(self, secret, kappa, ell, monkeypatch, scripted=None):
        self.secret = parse_code(secret, kappa, ell)
        self.kappa = kappa
        self.ell = ell
        self.lines: list[str] = []
        self.scripted = list(scripted or [])
        self.turns = 0
        self.real_print = builtins.print
        monkeypatch.setattr(builtins, "print", self._print)
        monkeypatch.setattr(builtins, "input", self._input)

    def _print(self, *args, **kwargs):
        self.lines.append(" ".join(str(a) for a in args))

    def _input(self, prompt=""):
        if self.scripted:
            return self.scripted.pop(0)
        suggestion_line = next(
            line for line in reversed(self.lines) if "suggestion:" in line
        )
        guess = parse_code(suggestion_line.split("suggestion:")[1].strip(), self.kappa, self.ell)
        r = respond(guess, self.secret)
        self.turns += 1
        if self.turns > 20:
            raise AssertionError("advisor did not converge")
        return f"{r.black} {r.white}"


class TestPlay:
    def test_honest_session_terminates_quickly(self, monkeypatch):
        for strategy in ["entropy", "most-parts", "plus", "plus2", "min-worst"]:
            terminal = FakeTerminal("ABBC", 6, 4, monkeypatch)
            code = main(
                ["play", "--kappa", "6", "--ell", "4", "--strategy", strategy,
                 "--seed", "5"]
            )
            assert code == 0
            assert terminal.turns <= 7
            assert any("solved in" in line for line in terminal.lines)

    def test_lucky_first_suggestion(self, monkeypatch):
        terminal = FakeTerminal("ABCA", 6, 4, monkeypatch)
        code = main(["play", "--seed", "1"])
        assert code == 0
        assert any("solved in 1 moves" in line for line in terminal.lines)

    def test_illegal_pegs_reprompted(self, monkeypatch):
        terminal = FakeTerminal(
            "ABCA", 6, 4, monkeypatch, scripted=["5 0", "3 1", "4 0"]
        )
        code = main(["play", "--seed", "1"])
        assert code == 0
        rejected = [line for line in terminal.lines if "impossible peg pair" in line]
        assert len(rejected) == 2

    def test_contradiction_offers_undo_and_recovers(self, monkeypatch):
        # claiming zero overlap empties a two-color space immediately;
        # undo then answer honestly
        terminal = FakeTerminal("BB", 2, 2, monkeypatch, scripted=["0 0", "y"])
        code = main(["play", "--kappa", "2", "--ell", "2", "--seed", "1"])
        assert code == 0
        assert any("no consistent codes remain" in line for line in terminal.lines)
        assert any("solved in" in line for line in terminal.lines)

    def test_contradiction_declined_exits_nonzero(self, monkeypatch):
        FakeTerminal("BB", 2, 2, monkeypatch, scripted=["0 0", "n"])
        code = main(["play", "--kappa", "2", "--ell", "2", "--seed", "1"])
        assert code == 1

    def test_quit(self, monkeypatch):
        FakeTerminal("ABCA", 6, 4, monkeypatch, scripted=["quit"])
        assert main(["play", "--seed", "1"]) == 0
