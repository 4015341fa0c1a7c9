import io
import json

import pytest

from permnorm.cli import run_cli
from permnorm.fixtures import GroupFileError, fixture, format_group_file, parse_group_file
from permnorm.stabchain import symmetric_group

FIXTURES = ["cyclic-7", "dihedral-5", "sym-5", "alt-6", "alt-subsets-5-2", "wreath-5-1-2",
            "m11", "m12", "elementary-2-3"]


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def grp(tmp_path):
    def write(name_or_text, filename="g.grp"):
        path = tmp_path / filename
        if "\n" in name_or_text:
            path.write_text(name_or_text)
        else:
            path.write_text(format_group_file(fixture(name_or_text)))
        return str(path)
    return write


def test_group_file_parsing():
    g = parse_group_file("# comment\n\n4\n(1 2)\n  (3 4)  \n# tail\n")
    assert g.degree == 4 and g.order() == 4
    for bad in ["", "# only\n", "x\n(1 2)", "0\n", "3\n(1 4)\n", "3\n(1 2\n"]:
        with pytest.raises(GroupFileError):
            parse_group_file(bad)


def test_group_file_roundtrip():
    g = symmetric_group(6)
    assert parse_group_file(format_group_file(g, "S6")).same_group(g)


def test_classify_alt_subsets(grp):
    code, out, _ = run("classify", grp("alt-subsets-5-2"))
    rep = json.loads(out)
    assert code == 0
    assert list(rep) == ["degree", "order", "verdict", "class", "reason", "path",
                         "normaliser_order", "normaliser_generators", "witness"]
    assert (rep["verdict"], rep["class"], rep["normaliser_order"]) == \
        ("Primitive", "almost-simple", "120")


def test_classify_intransitive(grp):
    code, out, _ = run("classify", grp("4\n(1 2)\n"))
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "NotPrimitive" and rep["reason"] == "intransitive"
    assert rep["witness"] == [[1, 2], [3], [4]]


def test_normalizer_in_self(grp):
    path = grp("m11")
    code, out, _ = run("normalizer", path, "--in", path)
    rep = json.loads(out)
    assert code == 0 and rep["normaliser_order"] == "7920" and rep["order"] == "7920"


def test_normalizer_default_and_path(grp):
    code, out, _ = run("normalizer", grp("cyclic-7"))
    rep = json.loads(out)
    assert rep["path"] == "small" and rep["normaliser_order"] == "42"


def test_socle_and_ample(grp):
    code, out, _ = run("socle", grp("sym-4"))
    rep = json.loads(out)
    assert code == 0 and rep["socle"]["order"] == "4"
    code, out, _ = run("ample", grp("wreath-5-1-2"))
    rep = json.loads(out)
    assert rep["ample"] and rep["certificate"]["l"] == 2
    code, out, _ = run("ample", grp("cyclic-5"))
    assert json.loads(out)["ample"] is False


def test_oracle_command(grp):
    h = grp("cyclic-7")
    k = grp("sym-7", "k.grp")
    code, out, _ = run("oracle", "normalizer", h, "--in", k)
    assert code == 0 and json.loads(out)["normaliser_order"] == "42"


def test_degree_mismatch_is_validation_error(grp):
    code, _, err = run("normalizer", grp("cyclic-5"), "--in", grp("cyclic-6", "k.grp"))
    assert code == 1 and "degree mismatch" in err


@pytest.mark.parametrize("name", FIXTURES)
def test_gen_roundtrips_through_classify(name, tmp_path):
    code, out, _ = run("gen", name)
    assert code == 0
    path = tmp_path / f"{name}.grp"
    path.write_text(out)
    assert parse_group_file(out).order() == fixture(name).order()
    code, out, err = run("classify", str(path))
    assert code == 0, err
    assert json.loads(out)["order"] == str(fixture(name).order())


def test_reports_are_deterministic(grp):
    path = grp("alt-subsets-5-2")
    assert run("classify", path)[1] == run("classify", path)[1]


def test_exit_codes(grp, tmp_path):
    assert run("classify", str(tmp_path / "missing.grp"))[0] == 1
    assert run("classify", grp("3\n(1 2 3\n"))[0] == 1
    assert run("gen", "nonsense")[0] == 1
    assert run("frobnicate")[0] == 1
    code, _, err = run("--enum-limit", "5", "socle", grp("sym-5"))
    assert code == 2 and "limit" in err


def test_limit_flag_overrides_environment(grp, monkeypatch):
    path = grp("sym-5")
    monkeypatch.setenv("PERMNORM_ENUM_LIMIT", "5")
    assert run("socle", path)[0] == 2
    assert run("socle", path, "--enum-limit", "1000")[0] == 0
    assert run("--enum-limit", "1000", "socle", path)[0] == 0
    monkeypatch.setenv("PERMNORM_ENUM_LIMIT", "abc")
    assert run("socle", path)[0] == 1


def test_help_exits_cleanly():
    assert run("--help")[0] == 0
