import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from stemmodel.cli import (
    EXIT_EVAL,
    EXIT_INFEASIBLE,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_RENDER,
    EXIT_UNKNOWN_MODEL,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestRender:
    @pytest.mark.parametrize("level", ["types", "instances"])
    def test_stdout(self, capsys, level):
        code, out, _ = run(capsys, "render", "functions", "--level", level)
        assert code == EXIT_OK
        ET.fromstring(out)

    def test_file_output_matches_golden(self, capsys, tmp_path, golden):
        target = tmp_path / "rov.svg"
        code, _, _ = run(capsys, "render", "rov", "--level", "wireframe", "-o", str(target))
        assert code == EXIT_OK
        golden("rov_wireframe.svg", target.read_text(encoding="utf-8"))

    def test_wireframe_needs_an_rov(self, capsys):
        code, _, err = run(capsys, "render", "functions", "--level", "wireframe")
        assert code == EXIT_RENDER and err.startswith("error:")

    def test_unknown_model(self, capsys):
        code, _, err = run(capsys, "render", "nope")
        assert code == EXIT_UNKNOWN_MODEL and "nope" in err

    def test_unwritable_output(self, capsys, tmp_path):
        code, _, _ = run(capsys, "render", "functions", "-o", str(tmp_path / "missing" / "x.svg"))
        assert code == EXIT_RENDER

    def test_deterministic(self, capsys):
        _, first, _ = run(capsys, "render", "network", "--level", "instances")
        _, second, _ = run(capsys, "render", "network", "--level", "instances")
        assert first == second


class TestEval:
    def test_table_function(self, capsys):
        assert run(capsys, "eval", "functions", "tf", "eval", "1") == (EXIT_OK, "tf.eval(1) = 10\n", "")

    def test_inverse(self, capsys):
        code, out, _ = run(capsys, "eval", "inverse", "inv", "eval", "15")
        assert code == EXIT_OK and out == "inv.eval(15) = 2\n"

    def test_not_in_domain(self, capsys):
        code, _, err = run(capsys, "eval", "functions", "tf", "eval", "3")
        assert code == EXIT_EVAL and "NotInDomain" in err

    def test_unknown_instance(self, capsys):
        code, _, _ = run(capsys, "eval", "functions", "ghost", "eval", "1")
        assert code == EXIT_EVAL

    def test_arity(self, capsys):
        code, _, _ = run(capsys, "eval", "functions", "tf", "eval", "1", "2")
        assert code == EXIT_EVAL

    def test_non_numeric_argument(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["eval", "functions", "tf", "eval", "one"])
        assert info.value.code == 2


class TestBalance:
    def test_r1(self, capsys):
        code, out, _ = run(capsys, "balance", "NO2 -> NO3 + NO")
        assert code == EXIT_OK and out.startswith("2 NO2 -> 1 NO3 + 1 NO")

    def test_water(self, capsys):
        code, out, _ = run(capsys, "balance", "H2 + O2 -> H2O")
        assert code == EXIT_OK and out.startswith("2 H2 + 1 O2 -> 2 H2O")

    def test_infeasible(self, capsys):
        code, _, err = run(capsys, "balance", "H2 -> O2")
        assert code == EXIT_INFEASIBLE and "Infeasible" in err

    def test_parse_error_points_at_offset(self, capsys):
        code, _, err = run(capsys, "balance", "H2 + -> H2O")
        assert code == EXIT_PARSE
        lines = err.splitlines()
        assert lines[-2].strip() == "H2 + -> H2O"
        assert lines[-1].strip() == "^"

    def test_unknown_element(self, capsys):
        code, _, err = run(capsys, "balance", "Xx2 -> Xx")
        assert code == EXIT_PARSE and "Xx" in err

    def test_custom_element_table(self, capsys, tmp_path):
        table = tmp_path / "elements.txt"
        table.write_text("# symbol mass\nXx 10\nH 1.008\n", encoding="utf-8")
        code, out, _ = run(capsys, "--elements", str(table), "balance", "Xx2 -> Xx")
        assert code == EXIT_OK and out.startswith("1 Xx2 -> 2 Xx")

    def test_malformed_element_table(self, capsys, tmp_path):
        table = tmp_path / "elements.txt"
        table.write_text("H one\n", encoding="utf-8")
        code, _, _ = run(capsys, "--elements", str(table), "balance", "H2 -> H")
        assert code == EXIT_PARSE


class TestPlot:
    def test_directive_defaults(self, capsys):
        code, out, _ = run(capsys, "plot", "ball", "b", "--samples", "20")
        assert code == EXIT_OK
        root = ET.fromstring(out)
        assert root is not None

    def test_explicit_functions_and_range(self, capsys, tmp_path):
        target = tmp_path / "p.svg"
        code, _, _ = run(capsys, "plot", "transforms", "square", "eval", "--range=-2:10", "-o", str(target))
        assert code == EXIT_OK and target.read_text(encoding="utf-8").startswith("<")

    def test_all_points_invalid(self, capsys):
        code, _, err = run(capsys, "plot", "functions", "tf", "eval", "--range", "5:6")
        assert code == EXIT_EVAL and "AllPointsInvalid" in err

    def test_no_directive_and_no_range(self, capsys):
        code, _, _ = run(capsys, "plot", "functions", "tf", "eval")
        assert code == EXIT_EVAL

    def test_unknown_function(self, capsys):
        code, _, _ = run(capsys, "plot", "ball", "b", "nope")
        assert code == EXIT_EVAL

    @pytest.mark.parametrize("bad", ["5:1", "a:b", "3"])
    def test_bad_range(self, bad):
        with pytest.raises(SystemExit) as info:
            main(["plot", "ball", "b", f"--range={bad}"])
        assert info.value.code == 2

    def test_too_few_samples(self):
        with pytest.raises(SystemExit):
            main(["plot", "ball", "b", "--samples", "1"])


class TestAnimate:
    def test_writes_frames(self, capsys, tmp_path):
        code, out, _ = run(capsys, "animate", "ball", "b", "--frames", "4", "-o", str(tmp_path / "f"))
        assert code == EXIT_OK and "wrote 4 frames" in out
        assert sorted(p.name for p in (tmp_path / "f").iterdir()) == [f"frame_000{k}.svg" for k in range(4)]

    def test_missing_directive(self, capsys, tmp_path):
        code, _, _ = run(capsys, "animate", "functions", "tf", "-o", str(tmp_path))
        assert code == EXIT_EVAL

    def test_unwritable_directory(self, capsys, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        code, _, _ = run(capsys, "animate", "ball", "b", "--frames", "2", "-o", str(blocker))
        assert code == EXIT_RENDER

    def test_output_required(self):
        with pytest.raises(SystemExit):
            main(["animate", "ball", "b"])


class TestNarrate:
    def test_network(self, capsys):
        code, out, _ = run(capsys, "narrate", "network")
        assert code == EXIT_OK
        assert out == "2 NO2 react to produce 1 NO3 and 1 NO.\n1 NO3 and 1 CO react to produce 1 NO2 and 1 CO2.\n"

    def test_functions_golden(self, capsys, golden):
        _, out, _ = run(capsys, "narrate", "functions")
        golden("functions_narrative.txt", out)

    def test_unknown_model(self, capsys):
        code, _, _ = run(capsys, "narrate", "nope")
        assert code == EXIT_UNKNOWN_MODEL


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stemmodel.cli", "eval", "functions", "tf", "eval", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "tf.eval(2) = 15\n"
