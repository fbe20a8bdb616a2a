import io
import json
from fractions import Fraction

import pytest

from tightlie.cli import emit_report, load_hom, main, parse_hom, UsageError
from tightlie.hom_catalog import hom_to_json, irreducible_sl2_to_sp


def run(*argv):
    out, err = io.BytesIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    assert code == 0, err
    return json.loads(out)


def test_irrep_report():
    rep = run_json("hom-check", "irrep:sp(8)")
    assert rep["tight"] is True and rep["dc"] == "1"
    assert rep["trace_Z_rhoZ"] == "-2"
    assert rep["seed"] == 0


def test_sym2_report():
    rep = run_json("hom-check", "sym2:su12-su24")
    assert rep["tight"] is False
    assert rep["factors"][0]["dc"] == rep["dc"]
    assert {"raw_trace_ratio", "tube_normalized"} <= set(rep)


@pytest.mark.parametrize("desc,dc", [("iA", "1"), ("iB", "1"), ("iA@B", "0"), ("iB@A", "0"),
                                     ("diag:sp(6)", "1"), ("corner:1,1,1,2", "1"),
                                     ("compose:iA,id:sl(2,R)", "1"),
                                     ("compose:sym2:su12-su24,compose:corner:1,1,1,2,diag:su(1,1)", "1/2")])
def test_descriptors(desc, dc):
    assert run_json("hom-check", desc)["factors"][0]["dc"] == dc


def test_sum_and_hull():
    rep = run_json("hom-hull", "sum:irrep:sp(4)+irrep:sp(2)")
    assert rep["hull_dim"] == 13 and rep["isotypic"] == [2, 1]
    rep = run_json("hom-check", "irrep:sp(4)", "--hull")
    assert rep["hull_dim"] == 10


def test_algebra_info():
    rep = run_json("algebra-info", "su(2,4)")
    assert rep["real_dim"] == 35 and rep["rank"] == 2 and rep["trace_ZZ"] == "-4/3"


def test_cocycle_sup_polydisk():
    rep = run_json("cocycle-sup", "--domain", "polydisk:2", "--restarts", "32", "--seed", "7")
    assert rep["sup"] == pytest.approx(1.0, abs=1e-4)
    assert rep["seed"] == 7


def test_cocycle_eval():
    rep = run_json("cocycle-eval", "--domain", "disk", "--points", "[[1,0],[0,1],[-1,0]]")
    assert rep["beta"] == pytest.approx(0.5, abs=1e-15)


def test_cocycle_eval_non_transverse_is_validation_failure():
    code, _, err = run("cocycle-eval", "--domain", "disk", "--points", "[[1,0],[1,0],[-1,0]]")
    assert code == 2 and "transverse" in err


def test_shilov_scan_csv_and_determinism():
    args = ("shilov-scan", "--domain", "ball:2,2", "--samples", "30", "--seed", "4", "--csv")
    c1, o1, _ = run(*args)
    c2, o2, _ = run(*args)
    assert c1 == c2 == 0 and o1 == o2
    lines = o1.decode().splitlines()
    assert lines[0] == "beta,min_h,lattice_distance" and len(lines) == 31


def test_boundary_trace():
    rep = run_json("boundary-trace", "irrep:sp(4)")
    assert rep["pairs"] == 190 and rep["all_shilov"]
    assert rep["max_shilov_residual"] < 1e-6 and rep["min_pair_h"] > 1e-3


def test_json_determinism():
    a = run("hom-check", "sym2:su12-su24", "--json", "--seed", "3")
    b = run("hom-check", "sym2:su12-su24", "--json", "--seed", "3")
    assert a == b and json.loads(a[1])["seed"] == 3


def test_save_and_load_round_trip(tmp_path):
    path = tmp_path / "h.json"
    code, _, _ = run("hom-check", "irrep:sp(6)", "--save-hom", str(path))
    assert code == 0
    rho = load_hom(str(path))
    assert rho.images == irreducible_sl2_to_sp(3).images
    rep = run_json("hom-check", "--file", str(path))
    assert rep["tight"] is True


def test_non_homomorphism_exit_2(tmp_path):
    data = hom_to_json(irreducible_sl2_to_sp(2))
    # scale one image: still inside sp(4), but brackets break
    data["images"][0] = [[str(2 * Fraction(x)) for x in row] for row in data["images"][0]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, _, err = run("hom-check", "--file", str(path))
    assert code == 2
    assert "pair" in err


def test_matrix_outside_codomain_exit_2(tmp_path):
    data = hom_to_json(irreducible_sl2_to_sp(1))
    data["images"][0] = [["1", "0"], ["0", "1"]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert run("hom-check", "--file", str(path))[0] == 2


@pytest.mark.parametrize("argv", [
    ("hom-check", "bogus"),
    ("hom-check",),
    ("hom-check", "--file", "/nonexistent/x.json"),
    ("frobnicate",),
    ("cocycle-sup", "--domain", "cube"),
    ("cocycle-sup", "--domain", "disk", "--restarts", "x"),
    ("algebra-info", "so(2,3)"),
    ("hom-check", "iA", "--csv", "--json"),
    ("hom-hull", "iA", "--csv"),
    ("boundary-trace", "corner:1,1,1,2"),
])
def test_usage_errors_exit_1(argv):
    assert run(*argv)[0] == 1


def test_malformed_json_file(tmp_path):
    path = tmp_path / "x.json"
    path.write_text("{not json")
    assert run("hom-check", "--file", str(path))[0] == 1


def test_out_path(tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run("algebra-info", "sp(4)", "--out", str(path))
    assert code == 0 and out == b""
    assert json.loads(path.read_text())["real_dim"] == 10


def test_pretty_rationals_are_canonical():
    code, out, _ = run("hom-check", "sym2:su12-su24", "--pretty")
    text = out.decode()
    assert code == 0 and "dc: 1/2" in text and "3/8" in text and "6/16" not in text


def test_emit_report_formats():
    rep = {"a": "1/3", "b": [1, 2]}
    assert json.loads(emit_report(rep, "json")) == rep
    assert emit_report(rep, "csv", (["x"], [[0.5]])) == b"x\n0.5\n"
    with pytest.raises(UsageError):
        emit_report(rep, "csv")


def test_parse_hom_compose_split():
    h = parse_hom("compose:corner:1,1,2,2,diag:su(1,1)")
    assert h.codomain.descriptor == "su(2,2)"
