import json
import subprocess
import sys
from fractions import Fraction

import pytest

from classtwo.cli import run_command
from classtwo.errors import Decomposable, GroupFileSyntaxError, NotAlternating
from classtwo.groupfile import (SHIPPED, format_group, parse_group, parse_group_file,
                                shipped_path)
from classtwo.groups import standard_group


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--format", "json", *argv)
    return code, json.loads(out)


@pytest.fixture
def grp(tmp_path):
    def write(text, name="g.grp"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


# ---- file format ----------------------------------------------------------

def test_shipped_files_parse():
    a = parse_group("paper-example.grp")
    assert (a.name, a.dimV, a.dimW) == ("A", 4, 2)
    assert parse_group("n21.grp") == standard_group(2)
    assert parse_group("n41.grp") == standard_group(4)
    p = parse_group("product-2x2.grp")
    assert (p.dimV, p.dimW) == (4, 2)


@pytest.mark.parametrize("name", SHIPPED)
def test_round_trip(name):
    g = parse_group(shipped_path(name))
    again = parse_group("", text=format_group(g))
    assert again == g and again.name == g.name
    f = parse_group_file(shipped_path(name).read_text())
    assert format_group(f.to_group(), list(f.labels)) == format_group(again, list(f.labels))


def test_inline_rows_and_comments():
    g = parse_group("", text="group H # heisenberg\ndimV 2; dimW 1\nbracket z; 0 1; -1 0\n")
    assert g == standard_group(2)
    g = parse_group("", text="group Q\ndimV 2\ndimW 1\nbracket z\n0 2/3\n-2/3 0\n")
    assert g.coords[0].matrix[0, 1] == Fraction(2, 3)


def test_syntax_errors_carry_positions():
    with pytest.raises(GroupFileSyntaxError) as exc:
        parse_group("", text="group A\ndimV 2\ndimW 1\nbracket z\n0 1\n-1 x\n")
    assert (exc.value.line, exc.value.col) == (6, 4)
    with pytest.raises(GroupFileSyntaxError) as exc:
        parse_group("", text="group A\ndimV two\n")
    assert (exc.value.line, exc.value.col) == (2, 6)
    with pytest.raises(GroupFileSyntaxError) as exc:
        parse_group("", text="group A\ndimV 2\ndimW 1\nbracket z\n0 1\n")
    assert exc.value.line == 5
    with pytest.raises(GroupFileSyntaxError) as exc:
        parse_group("", text="group A\ndimV 2\ndimW 1\nbracket z\n0 1 0\n-1 0\n")
    assert (exc.value.line, exc.value.col) == (5, 1)
    with pytest.raises(GroupFileSyntaxError):
        parse_group("", text="group A\ndimV 2\ndimW 1\nbracket z\n0 1\n-1 0\nextra\n")


def test_validation_errors_pass_through():
    with pytest.raises(NotAlternating) as exc:
        parse_group("", text="group S\ndimV 2\ndimW 1\nbracket z\n0 1\n1 0\n")
    assert "line 6, column 1" in str(exc.value)
    with pytest.raises(Decomposable):
        parse_group("", text="group D\ndimV 2\ndimW 2\nbracket a\n0 1\n-1 0\nbracket b\n0 2\n-2 0\n")


# ---- commands --------------------------------------------------------------

def test_check(capsys):
    code, out, _ = run(capsys, "check", "paper-example.grp")
    assert code == 0 and "valid: A" in out
    code, data = run_json(capsys, "check", "paper-example.grp")
    assert code == 0 and data["verdict"]["answer"] == "Yes"


def test_pfaffian(capsys):
    code, out, _ = run(capsys, "pfaffian", "paper-example.grp")
    assert code == 0
    assert "pfaffian: l1^2" in out and "determinant: l1^4" in out
    assert "[0 : 1] ×2" in out
    code, out, _ = run(capsys, "pfaffian", "product-2x2.grp")
    assert "pfaffian: l1*l2" in out
    code, _, err = run(capsys, "pfaffian", "n21.grp")
    assert code == 65 and "input error" in err


def test_standard_subcommands(capsys):
    assert run(capsys, "embed-standard", "paper-example.grp", "--k", "2")[0] == 0
    assert run(capsys, "embed-standard", "paper-example.grp", "--k", "4")[0] == 1
    assert run(capsys, "approx-standard", "paper-example.grp", "--k", "2")[0] == 1
    assert run(capsys, "approx-standard", "product-2x2.grp", "--k", "2")[0] == 0
    code, _, err = run(capsys, "embed-standard", "paper-example.grp", "--k", "3")
    assert code == 65


def test_precedes_and_equiv(capsys):
    assert run(capsys, "precedes", "product-2x2.grp", "n21.grp")[0] == 0
    assert run(capsys, "precedes", "paper-example.grp", "n21.grp")[0] == 1
    code, out, _ = run(capsys, "equiv", "paper-example.grp", "n41.grp")
    assert code == 1 and "full-rank-obstruction" in out
    code, data = run_json(capsys, "equiv", "paper-example.grp", "n41.grp")
    assert code == 1 and "full-rank-obstruction" in data["verdict"]["citations"]
    assert run(capsys, "equiv", "n21.grp", "n41.grp")[0] == 1
    assert run(capsys, "equiv", "n41.grp", "n41.grp")[0] == 0
    assert run(capsys, "equiv", "product-2x2.grp", "n21.grp")[0] == 0


def test_paper_example_command(capsys):
    code, out, _ = run(capsys, "paper-example")
    assert code == 1  # the answer to "is A in some N(k,1) class" is No
    assert "l1^2" in out and "l1^4" in out and "[0 : 1]" in out
    assert "not geometrically equivalent to any N(k,1)" in out


def test_bch(capsys):
    code, out, _ = run(capsys, "bch", "n21.grp", "x1", "x2")
    assert code == 0 and "(1, 1; 1/2)" in out
    code, data = run_json(capsys, "bch", "n21.grp", "x2", "x1")
    assert data["verdict"]["certificate"]["product"] == {"v": ["1", "1"], "w": ["-1/2"]}
    assert run(capsys, "bch", "n21.grp", "x3", "x1")[0] == 65


@pytest.mark.parametrize("argv", [
    ["check", "paper-example.grp"], ["pfaffian", "paper-example.grp"],
    ["embed-standard", "paper-example.grp", "--k", "2"],
    ["approx-standard", "product-2x2.grp", "--k", "2"],
    ["precedes", "paper-example.grp", "paper-example.grp"],
    ["equiv", "paper-example.grp", "product-2x2.grp"], ["paper-example"],
    ["bch", "n41.grp", "x1^(1/2)", "x2*x3"],
])
def test_json_schema(capsys, argv):
    code, data = run_json(capsys, *argv)
    assert data["command"] == argv[0]
    assert {"answer", "certificate", "trace", "citations"} <= set(data["verdict"])
    # format flag accepted after the subcommand too, and output is deterministic
    code2, out2, _ = run(capsys, *argv, "--format", "json")
    assert code2 == code and json.loads(out2) == data


def test_usage_and_input_errors(capsys, grp):
    assert run(capsys)[0] == 64
    assert run(capsys, "frobnicate")[0] == 64
    assert run(capsys, "embed-standard", "paper-example.grp")[0] == 64
    assert run(capsys, "--format", "xml", "check", "n21.grp")[0] == 64
    assert run(capsys, "check", "does-not-exist.grp")[0] == 65
    code, _, err = run(capsys, "check", grp("group S\ndimV 2\ndimW 1\nbracket z\n0 1\n1 0\n"))
    assert code == 65 and "line 6" in err
    code, _, err = run(capsys, "check", grp("group A\ndimV 2\n"))
    assert code == 65 and "line" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "classtwo", "check", "n21.grp"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "valid" in proc.stdout
