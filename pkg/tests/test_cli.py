import json

import pytest

from src.main import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "--word", "NE2N", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["offsets"] == [[0, 1], [1, 2], [3, 2], [4, 3]]
    assert payload["odd_differences"] == [[2, 0], [4, 2]]
    assert payload["lattice"] == {"rank": 2, "basis": [[2, 0], [0, 2]], "index": 4}
    assert payload["ancilla_cosets"] == 2
    assert payload["admissible_rectangle"] == [10, 6]


def test_analyze_degenerate_word_text(capsys):
    code, out, _ = run(capsys, "analyze", "--word", "N")
    assert code == 0
    assert "degenerate lattice" in out


def test_analyze_on_torus(capsys):
    code, out, _ = run(capsys, "analyze", "--word", "NE2NE2N", "--lx", "24", "--ly", "12", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["torus"]["offsets_distinct"] is True
    assert [c["ancillas"] for c in payload["torus"]["cosets"]] == [36, 36, 36, 36]


def test_canon(capsys):
    code, out, _ = run(capsys, "canon", "--word", "ESSE", "--no-cyclic", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["canonical"] == "NE2N"
    assert payload["include_cyclic"] is False
    assert payload["closed"] is False


def test_canon_warns_about_open_routes(capsys):
    _, out, _ = run(capsys, "canon", "--word", "NE2N")
    assert "open route" in out


def test_realize(capsys):
    code, out, _ = run(capsys, "realize", "(1,2) (3,2) (5,2)")
    assert code == 1
    assert out == "NOT REALIZABLE: no cardinal first offset\n"
    code, out, _ = run(capsys, "realize", "(0,1)")
    assert (code, out) == (0, "N\n")
    code, out, _ = run(capsys, "realize", "(0,1)", "(1,2)", "(3,2)", "(4,3)", "--ordered")
    assert (code, out) == (0, "NE2N\n")


def test_realize_bad_offsets(capsys):
    code, _, err = run(capsys, "realize", "(0,1) junk")
    assert code == 2
    assert "❌" in err


def test_build_json(capsys):
    code, out, _ = run(capsys, "build", "--word", "NE2N", "--lx", "8", "--ly", "6", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["hx"][0] == [4, 9, 10, 14]
    assert set(payload) == {"word", "lx", "ly", "layout", "hx", "hz"}


def test_params(capsys):
    code, out, _ = run(
        capsys, "params", "--word", "NE2NE2N", "--lx", "12", "--ly", "6", "--wmax", "4", "--format", "json"
    )
    payload = json.loads(out)
    assert code == 0
    assert (payload["n"], payload["k"], payload["dX"], payload["dZ"]) == (36, 4, "2", "2")
    assert payload["commutes"] is True


def test_params_collapsed_torus(capsys):
    code, out, _ = run(capsys, "params", "--word", "NE2NE2N", "--lx", "16", "--ly", "8")
    assert code == 0
    assert "k = 0" in out


def test_params_errors(capsys):
    code, _, err = run(capsys, "params", "--word", "NX", "--lx", "12", "--ly", "6")
    assert code == 2
    assert "illegal character" in err
    code, _, _ = run(capsys, "build", "--word", "NE2N", "--lx", "7", "--ly", "6")
    assert code == 2


@pytest.mark.parametrize(
    "layout, message",
    [("bogus", "unknown layout"), ("coset:0", "expected 2 coset bits"), ("coset:0x2", "bad coset bit pattern")],
)
def test_params_bad_layout_is_a_usage_error(capsys, layout, message):
    code, _, err = run(capsys, "params", "--word", "NE2N", "--lx", "8", "--ly", "6", "--layout", layout)
    assert code == 2
    assert message in err


def test_params_non_commuting_layout(capsys):
    code, out, _ = run(
        capsys, "params", "--word", "NE2N", "--lx", "8", "--ly", "6", "--layout", "coset:01", "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["commutes"] is True
    code, out, _ = run(capsys, "params", "--word", "NE", "--lx", "8", "--ly", "8", "--format", "json")
    assert code == 1
    assert json.loads(out)["commutes"] is False


def test_qc(capsys):
    code, out, _ = run(capsys, "qc", "--word", "NE2NE2N", "--lx", "12", "--ly", "6", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["x_vector"]["h0"] == "u*v + u^2*v + u^3*v^2 + u^4*v^2"
    assert payload["predicted_k"] == 4
    assert payload["cross_check"]["verdict"] == "PASS"
    code, out, _ = run(capsys, "qc", "--word", "NE2NE2N", "--lx", "16", "--ly", "8")
    assert code == 0
    assert "predicted k = 0" in out and "PASS" in out


def test_collapse_csv(capsys):
    code, out, _ = run(capsys, "collapse", "6", "8", "10", "--format", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "d,lx,ly,closed_form_k,qc_k,direct_k,agree"
    assert lines[1] == "6,12,6,4,4,4,True"
    assert lines[2] == "8,16,8,0,0,0,True"


def test_collapse_rejects_odd_d(capsys):
    code, _, _ = run(capsys, "collapse", "7")
    assert code == 2


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "--m", "1")
    assert code == 0
    assert "k >= 4 and d <= 2 certified" in out
    code, _, err = run(capsys, "certify", "--word", "NE2N", "--m", "1")
    assert code == 1
    assert "❌" in err


def test_scan_empty_range_csv(capsys):
    code, out, _ = run(capsys, "scan", "--min-len", "5", "--max-len", "4", "--format", "csv")
    assert code == 0
    assert out == "word,w,n,k,dX,dZ,support\n"


def test_scan_output_is_reproducible(tmp_path, capsys):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["scan", "--min-len", "4", "--max-len", "5", "--lx", "8", "--ly", "8", "--wmax", "2", "--format", "csv"]
    assert main(args + ["--out", str(first)]) == 0
    assert main(args + ["--out", str(second), "--workers", "3"]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert first.read_text().startswith("word,w,n,k,dX,dZ,support\n")


def test_scan_coset_rule_adds_layout_column(capsys):
    code, out, _ = run(
        capsys, "scan", "--min-len", "4", "--max-len", "4", "--lx", "8", "--ly", "8",
        "--wmax", "1", "--layout", "coset", "--format", "csv",
    )
    assert code == 0
    assert out.splitlines()[0] == "word,w,n,k,dX,dZ,support,layout"


def test_scan_json_lines(capsys):
    code, out, _ = run(
        capsys, "scan", "--min-len", "4", "--max-len", "4", "--lx", "8", "--ly", "8", "--wmax", "1", "--format", "json"
    )
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows and set(rows[0]) == {"word", "w", "n", "k", "dX", "dZ", "support"}


def test_scan_bad_config(tmp_path, capsys):
    path = tmp_path / "scan.cfg"
    path.write_text("lx = 16\nbogus = 1\n", encoding="utf-8")
    code, _, err = run(capsys, "scan", "--config", str(path))
    assert code == 2
    assert "line 2" in err


def test_verbose_progress_goes_to_stderr(capsys):
    code, out, err = run(capsys, "params", "--word", "NE2NE2N", "--lx", "12", "--ly", "6", "--format", "json", "-v")
    assert code == 0
    assert "[Builder]" in err
    assert json.loads(out)["log"]


def test_unknown_flag_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["analyze", "--word", "N", "--bogus"])
    assert info.value.code == 2
