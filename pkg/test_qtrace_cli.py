"""
量子迹计算系统 - 命令行测试
"""

import io

import pytest

from conftest import SQUARE_TEXT, TORUS_CURVE_TEXT, TORUS_TEXT, TRIANGLE_TEXT
from tools.qtrace import EXIT_INPUT_ERROR, EXIT_OK, attach_sign_values, build_parser, run


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue().splitlines()


@pytest.fixture
def triangle_files(write_file):
    return {
        'surface': write_file("triangle.surf", TRIANGLE_TEXT),
        'link': write_file("corner.link", "arc 1 1 2 0\n"),
        'state': write_file("corner.state", "state e1 1 +\nstate e2 1 +\n"),
    }


class TestTrace:

    def test_single_state(self, triangle_files):
        code, lines = invoke("trace", "-s", triangle_files['surface'], "-l", triangle_files['link'],
                             "-t", triangle_files['state'])
        assert code == EXIT_OK
        assert lines == ["(1*w^0) * [Z1^1 Z2^1]"]

    def test_all_states(self, triangle_files):
        code, lines = invoke("trace", "-s", triangle_files['surface'], "-l", triangle_files['link'],
                             "--all-states")
        assert code == EXIT_OK
        assert lines[0] == "e1.1+ e2.1+: (1*w^0) * [Z1^1 Z2^1]"
        assert lines[2] == "e1.1- e2.1+: 0"
        assert len(lines) == 4

    def test_numeric_evaluation(self, triangle_files):
        code, lines = invoke("trace", "-s", triangle_files['surface'], "-l", triangle_files['link'],
                             "-t", triangle_files['state'], "--eval", "w=1+0i")
        assert code == EXIT_OK
        assert lines[1] == "  [Z1^1 Z2^1] = 1+0i"

    def test_naive_method(self, write_file):
        surface = write_file("torus.surf", TORUS_TEXT)
        link = write_file("curve.link", TORUS_CURVE_TEXT)
        code, lines = invoke("trace", "-s", surface, "-l", link, "--method", "naive")
        assert code == EXIT_OK
        assert lines == ["(1*w^0) * [Z1^-1 Z2^-1] + (1*w^0) * [Z1^1 Z2^-1] + (1*w^0) * [Z1^1 Z2^1]"]

    def test_bad_eval(self, triangle_files):
        code, _ = invoke("trace", "-s", triangle_files['surface'], "-l", triangle_files['link'],
                         "-t", triangle_files['state'], "--eval", "q=1")
        assert code == EXIT_INPUT_ERROR


class TestOtherCommands:

    def test_bracket(self):
        assert invoke("bracket", "-w", "cup 1 cap 1") == (EXIT_OK, ["-1*w^-4 - 1*w^4"])
        assert invoke("bracket", "-w", "cup 1", "--out", "-+", "--method", "resolve") == (EXIT_OK, ["-1*w^-5"])

    def test_bracket_signs_starting_with_minus(self):
        """以 - 开头的符号串两种写法都能用"""
        assert invoke("bracket", "-w", "x+ 1", "--in", "--", "--out", "--") == (EXIT_OK, ["1*w^2"])
        assert invoke("bracket", "-w", "x+ 1", "--in=-+", "--out=+-") == (EXIT_OK, ["1*w^-2"])
        assert invoke("bracket", "-w", "x+ 1", "--in", "-+", "--out", "+-", "--method", "resolve") == (EXIT_OK, ["1*w^-2"])

    def test_attach_sign_values(self):
        assert attach_sign_values(["bracket", "--in", "-+", "--out", "+"]) == ["bracket", "--in=-+", "--out=+"]
        assert attach_sign_values(["bracket", "--in", "--method", "dp"]) == ["bracket", "--in", "--method", "dp"]

    def test_classical(self, write_file):
        surface = write_file("torus.surf", TORUS_TEXT)
        curve = write_file("torus.curve", "step e1 L 0\nstep e2 R 0\n")
        shears = write_file("torus.shear", "shear e1 1\nshear e2 1\nshear e3 1\n")
        code, lines = invoke("classical", "-s", surface, "-c", curve, "-x", shears)
        assert code == EXIT_OK
        assert lines == ["1*[Z1^-1 Z2^-1] + 1*[Z1^1 Z2^-1] + 1*[Z1^1 Z2^1]",
                         "state sum: 3", "holonomy:  3", "MATCH"]

    def test_flip(self, write_file):
        surface = write_file("square.surf", SQUARE_TEXT)
        link = write_file("strand.link", "arc 1 3 2 0\n")
        state = write_file("strand.state", "state e2 1 +\nstate e5 1 -\n")
        code, lines = invoke("flip", "-s", surface, "-e", "e1", "-l", link, "-t", state)
        assert code == EXIT_OK
        assert lines[-1] == "MATCH"
        assert lines[0].startswith("transfer: ")

    def test_check(self, triangle_files):
        code, lines = invoke("check", "-s", triangle_files['surface'], "-l", triangle_files['link'],
                             "--suite", "moves")
        assert code == EXIT_OK
        assert lines[-1] == "moves: 通过 16, 失败 0, 跳过 0"


class TestInputErrors:

    def test_glued_twice(self, write_file):
        surface = write_file("bad.surf", "triangles 1\nedge a 1.1 1.2\nedge b 1.2 1.3\n")
        link = write_file("empty.link", "")
        code, _ = invoke("trace", "-s", surface, "-l", link)
        assert code == EXIT_INPUT_ERROR

    def test_missing_file(self, tmp_path):
        code, _ = invoke("trace", "-s", str(tmp_path / "none.surf"), "-l", str(tmp_path / "none.link"))
        assert code == EXIT_INPUT_ERROR

    def test_missing_state(self, triangle_files):
        code, _ = invoke("trace", "-s", triangle_files['surface'], "-l", triangle_files['link'])
        assert code == EXIT_INPUT_ERROR

    def test_check_suite_cannot_run(self, triangle_files):
        """经典套件需要闭曲线，开弧上整套无法运行"""
        code, lines = invoke("check", "-s", triangle_files['surface'], "-l", triangle_files['link'],
                             "--suite", "classical")
        assert code == EXIT_INPUT_ERROR
        assert lines[0].startswith("[skipped] classical")

    def test_check_partial_skip_is_not_input_error(self, triangle_files):
        code, _ = invoke("check", "-s", triangle_files['surface'], "-l", triangle_files['link'],
                         "--suite", "skein")
        assert code == EXIT_OK

    def test_no_command(self):
        assert invoke()[0] == EXIT_INPUT_ERROR

    def test_parser_choices(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["check", "-s", "a", "-l", "b", "--suite", "nothing"])
