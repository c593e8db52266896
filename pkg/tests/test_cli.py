import rosefold as rf
from rosefold.cli import main
from rosefold.oracles import endomorphism_to_text


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestWh:
    def test_commutator_golden(self, capsys):
        code, out, _ = run(capsys, "wh", "abAB")
        assert code == 0
        assert out == (
            "rank 2\n"
            "edges: a-b a-B A-b A-B\n"
            "components: {aAbB}\n"
            "cut vertices: (none)\n"
            "connected; no cut vertex\n"
        )

    def test_single_letter_disconnected(self, capsys):
        code, out, _ = run(capsys, "wh", "a", "--rank", "2")
        assert code == 0
        assert "disconnected (3 components)" in out
        assert "edges: a-A\n" in out

    def test_rank_violation_exits_2(self, capsys):
        code, _, err = run(capsys, "wh", "abc", "--rank", "2")
        assert code == 2
        assert "error" in err

    def test_dot_output(self, capsys):
        code, out, _ = run(capsys, "wh", "abAB", "--dot")
        assert code == 0 and out.startswith("graph wh {")


class TestCutvx:
    def test_path_cuts(self, capsys):
        code, out, _ = run(capsys, "cutvx", "aab")
        assert code == 0 and out == "cut vertices: a A\n"


class TestReduce:
    def test_reduces(self, capsys):
        code, out, _ = run(capsys, "reduce", "abBA")
        assert code == 0 and out == "\n"

    def test_nontrivial(self, capsys):
        code, out, _ = run(capsys, "reduce", "aBba")
        assert code == 0 and out == "aa\n"


class TestTame:
    def test_tame_exits_0(self, capsys):
        code, out, _ = run(capsys, "tame", "aab")
        assert code == 0
        assert "verdict: tame" in out
        assert "relabel 2 -> -2" in out

    def test_not_tame_exits_1(self, capsys):
        code, out, _ = run(capsys, "tame", "abAB")
        assert code == 1
        assert "verdict: not-tame" in out

    def test_disconnected_case(self, capsys):
        code, _, _ = run(capsys, "tame", "ab")
        assert code == 0

    def test_parse_error_exits_2(self, capsys):
        code, _, _ = run(capsys, "tame", "a!b")
        assert code == 2

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "cert.txt"
        code, out, _ = run(capsys, "tame", "aab", "--out", str(target))
        assert code == 0
        assert target.read_text() == out


class TestRoseWh:
    def test_standard_312_golden(self, capsys):
        code, out, _ = run(capsys, "rose-wh", "3", "1", "2")
        assert code == 0
        assert out == (
            "rank 3\n"
            "edges: a-A a-b a-B a-c a-C A-B b-c b-C c-C\n"
            "components: {aAbBcC}\n"
            "cut vertices: a\n"
            "connected; cut vertices: a\n"
        )

    def test_bad_shape_exits_2(self, capsys):
        code, _, _ = run(capsys, "rose-wh", "2", "2", "2")
        assert code == 2


class TestFold:
    def test_basis_recognized(self, capsys):
        code, out, _ = run(capsys, "fold", "--basis", "ab,b")
        assert code == 0
        assert "penultimate: almost-rose k=1 l=2" in out

    def test_duplicate_circle_declined(self, capsys):
        code, out, _ = run(capsys, "fold", "--basis", "ab,ab")
        assert code == 1
        assert "betti-dropping fold at step 2" in out

    def test_graph_file_already_folded(self, capsys, tmp_path):
        path = tmp_path / "rose2.txt"
        path.write_text(rf.graph_to_text(rf.rose(2)))
        code, out, _ = run(capsys, "fold", "--graph", str(path))
        assert code == 0
        assert "already folded; no fold steps" in out

    def test_requires_exactly_one_input(self, capsys):
        code, _, _ = run(capsys, "fold")
        assert code == 2

    def test_witness_mode(self, capsys, tmp_path):
        spec = rf.EndomorphismSpec(
            2,
            (rf.parse_word("ab", 2), rf.parse_word("b", 2)),
            (rf.parse_word("aB", 2), rf.parse_word("b", 2)),
        )
        path = tmp_path / "basis.witness"
        path.write_text(endomorphism_to_text(spec))
        code, out, _ = run(capsys, "fold", "--basis", "ab,b", "--witness", str(path))
        assert code == 0
        assert "witness: verified automorphism" in out
        assert "first word readable in almost-rose: yes" in out

    def test_dot_snapshots(self, capsys):
        code, out, _ = run(capsys, "fold", "--basis", "ab,b", "--dot")
        assert code == 0
        assert "cluster_0" in out and "cluster_1" in out


class TestOrbit:
    def test_small_orbit_contents(self, capsys):
        code, out, _ = run(capsys, "orbit", "2", "2")
        assert code == 0
        lines = out.splitlines()
        assert "ab" in lines and "aB" in lines
        assert "classes: 8" in out
        assert "complete: yes" in out

    def test_zero_length_exits_2(self, capsys):
        code, _, _ = run(capsys, "orbit", "2", "0")
        assert code == 2

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "orbit.txt"
        code, out, _ = run(capsys, "orbit", "2", "2", "--out", str(target))
        assert code == 0
        assert len(target.read_text().splitlines()) == 8


class TestSep:
    def test_summary_and_determinism(self, capsys):
        code1, out1, _ = run(capsys, "sep", "3", "--seed", "7", "--count", "4")
        code2, out2, _ = run(capsys, "sep", "3", "--seed", "7", "--count", "4")
        assert code1 == code2 == 0
        assert out1 == out2
        assert "classes: 4" in out1

    def test_out_files(self, capsys, tmp_path):
        prefix = str(tmp_path / "corpus")
        code, _, _ = run(capsys, "sep", "3", "--seed", "7", "--count", "4", "--out", prefix)
        assert code == 0
        classes = (tmp_path / "corpus.classes").read_text().splitlines()
        assert len(classes) == 4
        witness = (tmp_path / "corpus.witness").read_text()
        assert witness.startswith("separable-witness\n")

    def test_bad_count_exits_2(self, capsys):
        code, _, _ = run(capsys, "sep", "3", "--seed", "1", "--count", "0")
        assert code == 2


class TestCheck:
    def test_selected_criteria(self, capsys):
        code, out, _ = run(
            capsys, "check", "--only", "wh-closed-form-312", "negative-controls"
        )
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 2 and all(line.startswith("PASS") for line in lines)

    def test_unknown_criterion_exits_2(self, capsys):
        code, _, err = run(capsys, "check", "--only", "nope")
        assert code == 2 and "unknown criteria" in err
