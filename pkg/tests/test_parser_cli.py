import json
import random
from fractions import Fraction

import pytest

from jordan_double.algebra import generator, to_text
from jordan_double.cli import main
from jordan_double.hopf import random_monomial_element
from jordan_double.io import SchemaError, dumps_module, module_from_json, module_to_json, read_module
from jordan_double.modules import build_S, build_T, build_verma2_trunc
from jordan_double.parser import Atom, Num, ParseError, Pow, Product, Sum, parse, parse_element


# -- parser ------------------------------------------------------------------------


def test_parse_examples():
    assert parse("v*y") == Product((Atom("v"), Atom("y")))
    tree = parse("1/2*x^2 + x*y")
    assert isinstance(tree, Sum) and len(tree.terms) == 2
    assert parse(" 3 / 4 ") == Num(Fraction(3, 4))
    assert parse("g^-2") == Pow(Atom("g"), -2)


@pytest.mark.parametrize("text,offset", [("x*(", 3), ("x +", 3), ("x ^ y", 4), ("(x", 2), ("x)", 1), ("w", 0),
                                         ("1/0", 2), ("x^-1", 0), ("xi*u^-2", 3), ("", 0), ("x # y", 2)])
def test_parse_errors(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset


def test_names_and_negative_g_powers():
    assert parse_element("gi") == generator("gi")
    assert parse_element("xi") == generator("xi")
    assert parse_element("g^-1") == generator("gi")
    assert parse_element("gi^-2 * g^-2") == generator("g") ** 0


def test_nf_text_round_trip():
    rng = random.Random(8)
    for _ in range(150):
        a = random_monomial_element(rng, 5) * rng.randint(-3, 3) + random_monomial_element(rng, 3)
        assert parse_element(to_text(a)) == a


# -- io ----------------------------------------------------------------------------------


def test_module_json_round_trip(tmp_path):
    for M in (build_T(1, 1), build_S(2, 3), build_verma2_trunc(1, 2, -3, 2).module):
        data = json.loads(dumps_module(M))
        assert set(data) == {"dim", "labels", "generators", "provenance"}
        assert set(data["generators"]) == {"x", "y", "g", "xi", "u", "v"}
        back = module_from_json(data)
        assert back == M and back.labels == M.labels and back.provenance == M.provenance
        f = tmp_path / "m.json"
        f.write_text(dumps_module(M))
        assert read_module(f) == M


@pytest.mark.parametrize("mutate,field", [
    (lambda d: d.pop("dim"), "dim"),
    (lambda d: d.__setitem__("dim", -1), "dim"),
    (lambda d: d["generators"].pop("xi"), "generators.xi"),
    (lambda d: d["generators"]["u"][1].__setitem__(0, "1/x"), "generators.u[1][0]"),
    (lambda d: d["generators"]["g"].pop(), "generators.g"),
    (lambda d: d["generators"]["y"][0].append("0"), "generators.y[0]"),
    (lambda d: d.__setitem__("labels", ["a"]), "labels"),
    (lambda d: d.__setitem__("provenance", 3), "provenance"),
])
def test_schema_errors_name_the_field(mutate, field):
    data = module_to_json(build_T(0, 1))
    mutate(data)
    with pytest.raises(SchemaError) as info:
        module_from_json(data)
    assert info.value.field == field


# -- cli -----------------------------------------------------------------------------------


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_nf(capsys):
    code, out, _ = run(capsys, "nf", "v*x")
    assert code == 0
    assert parse_element(out.strip()) == parse_element("x*v + 1 - g + x*u")
    code, _, err = run(capsys, "nf", "x*(")
    assert code == 2 and "offset 3" in err


def test_cli_nf_output_reparses(capsys):
    for expr in ["y*x", "v*y", "gi*y", "(u+v)^2*x", "g^-3*v*y*x"]:
        _, out, _ = run(capsys, "nf", expr)
        assert parse_element(out.strip()) == parse_element(expr)


def test_cli_help_mentions_ascii_names(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--help"])
    assert info.value.code == 0
    out = capsys.readouterr().out
    assert "xi" in out and "gi" in out


def test_cli_hopf_check(capsys):
    code, out, _ = run(capsys, "hopf-check", "--degree", "3", "--samples", "20")
    assert code == 0 and json.loads(out)["ok"]


BUILDS = [("L", "3"), ("T", "2", "1"), ("S", "3", "1"), ("S", "2", "1/2"), ("verma", "2", "4"),
          ("verma2", "1", "2", "-3", "3")]


@pytest.mark.parametrize("args", BUILDS)
def test_cli_build_verify_round_trip(capsys, tmp_path, args):
    f = tmp_path / "m.json"
    assert run(capsys, "module", "build", *args, "-o", str(f))[0] == 0
    code, out, _ = run(capsys, "module", "verify", str(f))
    assert code == 0 and json.loads(out)["ok"]


def test_cli_build_T21(capsys, tmp_path):
    _, out, _ = run(capsys, "module", "build", "T", "2", "1")
    f = tmp_path / "t.json"
    f.write_text(out)
    code, out, _ = run(capsys, "module", "verify", str(f))
    assert code == 0 and json.loads(out)["dim"] == 8


def test_cli_dual_and_tensor(capsys, tmp_path):
    a = tmp_path / "a.json"
    run(capsys, "module", "build", "T", "0", "1", "-o", str(a))
    for argv in (("dual", str(a)), ("tensor", str(a), "L1")):
        f = tmp_path / "out.json"
        assert run(capsys, "module", "build", *argv, "-o", str(f))[0] == 0
        assert run(capsys, "module", "verify", str(f))[0] == 0


def test_cli_verify_failure_exit_code(capsys, tmp_path):
    data = module_to_json(build_T(0, 1))
    data["generators"]["x"] = [["1" if i == j else "0" for j in range(4)] for i in range(4)]
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(data))
    code, out, _ = run(capsys, "module", "verify", str(f))
    assert code == 1 and not json.loads(out)["ok"]


def test_cli_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "generators": {}}')
    code, _, err = run(capsys, "module", "verify", str(bad))
    assert code == 3 and "generators.x" in err
    bad.write_text("{not json")
    assert run(capsys, "hw", str(bad))[0] == 3
    assert run(capsys, "weights", str(tmp_path / "missing.json"))[0] == 3
    assert run(capsys, "module", "build", "L", "-1")[0] == 2
    assert run(capsys, "module", "build", "T", "1")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["quiver"])
    assert info.value.code == 2


def test_cli_queries(capsys):
    assert run(capsys, "ext", "L2", "L0")[1].strip() == "1"
    code, out, err = run(capsys, "ext", "L0", "L0")
    assert out.strip() == "0" and "note" in err
    assert json.loads(run(capsys, "weights", "T1,1")[1])["weights"] == {"3": 1, "1": 2, "-1": 2, "-3": 1}
    assert json.loads(run(capsys, "hw", "S3,1")[1]) == {"hw": 3, "hw_rank": 2}
    assert json.loads(run(capsys, "hw-series", "T(1,2)")[1])["length"] == 1
    assert json.loads(run(capsys, "hom", "L2", "T2,1")[1]) == {"dim": 1}
    assert json.loads(run(capsys, "factors", "T1,2")[1]) == {"factors": [1, 3, 5]}
    assert run(capsys, "indec", "S1,1")[1].strip() == "true"
    assert json.loads(run(capsys, "socle", "T2,2")[1])["dim"] == 3


def test_cli_ext_representative(capsys, tmp_path):
    f = tmp_path / "e.json"
    assert run(capsys, "ext", "L4", "L2", "--representative", str(f))[0] == 0
    assert run(capsys, "module", "verify", str(f))[0] == 0
    assert run(capsys, "ext", "L1", "L0", "--representative", str(f))[0] == 2


def test_cli_quiver_and_wildness(capsys, tmp_path):
    dot = tmp_path / "q.dot"
    code, out, _ = run(capsys, "quiver", "--max", "4", "--dot", str(dot))
    rep = json.loads(out)
    assert code == 0 and rep["ext_table"]["(0,0)"] == 0 and rep["ext_table"]["(0,2)"] == 1
    assert dot.read_text().startswith("digraph")
    rep = json.loads(run(capsys, "quiver", "--max", "4", "--forced-loop")[1])
    assert rep["ext_table"]["(0,0)"] == 1
    rep = json.loads(run(capsys, "wildness", "--max", "6", "--subset", "2,4,6")[1])
    assert rep["wild"]
    rep = json.loads(run(capsys, "wildness", "--max", "4", "--subset", "0,2,4", "--forced-loop")[1])
    assert rep["wild"] and rep["variant"] == "forced-loop"
    assert run(capsys, "wildness", "--max", "4", "--subset", "8")[0] == 2
