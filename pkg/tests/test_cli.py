import json

import numpy as np
import pytest

from qreflect.cli import main, parse_complex
from qreflect.io import deserialize_matrix


def test_parse_complex_forms():
    assert parse_complex("2+0i") == 2.0
    assert parse_complex("-1.5-2i") == -1.5 - 2j
    assert parse_complex("3") == 3.0
    assert abs(parse_complex("0.8@0.3") - 0.8 * np.exp(0.3j)) < 1e-15
    with pytest.raises(ValueError):
        parse_complex("nonsense")


def test_kmatrix_paper_anchor(tmp_path, capsys):
    out = tmp_path / "k.json"
    code = main([
        "kmatrix", "--n", "1", "--q", "2+0i", "--x", "3+0i",
        "--eps", "1+0i,1+0i", "--method", "paper", "--out", str(out),
    ])
    assert code == 0
    doc = deserialize_matrix(out.read_bytes())
    assert np.allclose(doc.matrix, [[1.0, 0.5625], [0.5625, 1.0]], atol=1e-10)
    assert doc.convention == "paper"


def test_kmatrix_methods_agree_projectively(tmp_path):
    outs = {}
    for method in ("paper", "closed-form"):
        out = tmp_path / f"{method}.json"
        assert main([
            "kmatrix", "--n", "2", "--q", "0.8@0.3", "--x", "2.01+0i",
            "--eps", "1+0i,-1+0i,1+0i", "--method", method, "--out", str(out),
        ]) == 0
        outs[method] = deserialize_matrix(out.read_bytes()).matrix
    from qreflect.linalg import projective_compare

    assert projective_compare(outs["paper"], outs["closed-form"], 1e-8)[0]


def test_kmatrix_generic_method_n1_matches_paper(tmp_path):
    # at n = 1 the two conventions coincide, so the outputs agree exactly
    outs = {}
    for method in ("paper", "generic"):
        out = tmp_path / f"{method}.json"
        assert main([
            "kmatrix", "--n", "1", "--q", "0.8@0.3", "--x", "2.01+0i",
            "--eps", "1+0i,-1+0i", "--method", method, "--out", str(out),
        ]) == 0
        doc = deserialize_matrix(out.read_bytes())
        outs[method] = doc
    assert outs["generic"].convention == "antipode-dual"
    assert np.allclose(outs["paper"].matrix, outs["generic"].matrix, atol=1e-10)


def test_kmatrix_generic_method_off_locus_exits_3(tmp_path):
    code = main([
        "kmatrix", "--n", "2", "--q", "0.8@0.3", "--x", "2.01+0i",
        "--eps", "1+0i,1+0i,1+0i", "--method", "generic",
        "--out", str(tmp_path / "k.json"),
    ])
    assert code == 3


def test_kmatrix_no_solution_exits_3(tmp_path, capsys):
    out = tmp_path / "k.json"
    code = main([
        "kmatrix", "--n", "2", "--q", "0.8@0.3", "--x", "2.01+0i",
        "--eps", "2+0i,1+0i,1+0i", "--method", "paper", "--out", str(out),
    ])
    assert code == 3
    assert not out.exists()  # no partial output on failure
    assert "nullspace dimension 0" in capsys.readouterr().err


def test_kmatrix_eps_length_checked(tmp_path):
    code = main([
        "kmatrix", "--n", "2", "--q", "0.8@0.3", "--x", "2+0i",
        "--eps", "1+0i,1+0i", "--method", "paper", "--out", str(tmp_path / "k.json"),
    ])
    assert code == 2


def test_verify_ybe_passes(capsys):
    code = main([
        "verify", "ybe", "--n", "1", "--q", "0.8@0.3",
        "--rapidities", "0.7,0.23,-0.41",
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "deviation" in out
    assert "\x1b[" not in out  # no ANSI color when not a tty


def test_verify_fail_exit_code():
    # an impossibly tight tolerance flips the verdict, exercising exit 1
    code = main([
        "verify", "ybe", "--n", "1", "--q", "0.8@0.3",
        "--rapidities", "0.7,0.23,-0.41", "--tol", "1e-18",
    ])
    assert code == 1


def test_verify_re_and_bcomm_and_sklyanin(capsys):
    for mode, thetas in (("re", "0.7,0.23"), ("b-comm", "0.7,0.23"),
                         ("sklyanin", "0.7,0.23,-0.41")):
        code = main([
            "verify", mode, "--n", "1", "--q", "0.8@0.3",
            "--rapidities", thetas, "--eps", "1+0i,1+0i",
        ])
        assert code == 0, mode


def test_verify_coideal(capsys):
    code = main([
        "verify", "coideal", "--n", "3", "--q", "0.8@0.3",
        "--rapidities", "0.7,0.23", "--eps", "1+0i,0+0i,2+1i,-1+0i",
    ])
    assert code == 0


def test_verify_requires_eps(capsys):
    code = main([
        "verify", "re", "--n", "1", "--q", "0.8@0.3", "--rapidities", "0.7,0.23",
    ])
    assert code == 2


def test_verify_rapidity_count_checked(capsys):
    code = main([
        "verify", "ybe", "--n", "1", "--q", "0.8@0.3", "--rapidities", "0.7,0.23",
    ])
    assert code == 2


def test_repeated_invocations_byte_identical(tmp_path):
    args = [
        "kmatrix", "--n", "2", "--q", "0.8@0.3", "--x", "1.87+0.3i",
        "--eps", "1+0i,1+0i,-1+0i", "--method", "paper",
    ]
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_rep_check(capsys):
    assert main(["rep-check", "--n", "2", "--q", "0.8@0.3", "--x", "2.01+0i"]) == 0
    assert "algebra-relations" in capsys.readouterr().out


def test_smatrix_writes_document(tmp_path):
    out = tmp_path / "s.json"
    code = main([
        "smatrix", "--n", "1", "--q", "0.8@0.3", "--x1", "2.01+0i",
        "--x2", "1.26+0i", "--out", str(out),
    ])
    assert code == 0
    doc = deserialize_matrix(out.read_bytes())
    assert doc.kind == "smatrix"
    assert doc.matrix.shape == (4, 4)


def test_smatrix_dual_channel(tmp_path):
    out = tmp_path / "s.json"
    code = main([
        "smatrix", "--n", "2", "--q", "0.8@0.3", "--x1", "2.01+0i",
        "--x2", "1.26+0i", "--dual-right", "--out", str(out),
    ])
    assert code == 0
    assert deserialize_matrix(out.read_bytes()).matrix.shape == (9, 9)


def test_scan_eps_grid(tmp_path):
    out = tmp_path / "scan.json"
    code = main([
        "scan", "eps", "--n", "1", "--q", "0.8@0.3", "--x", "2.01+0i",
        "--grid", "0,1,-1", "--out", str(out),
    ])
    assert code == 0
    payload = json.loads(out.read_text())
    assert len(payload["grid"]) == 9
    assert set(payload["dims"]) <= {0, 1}


def test_scan_theta_bulk(tmp_path):
    out = tmp_path / "scan.json"
    code = main([
        "scan", "theta", "--kind", "bulk", "--n", "1", "--q", "0.8@0.3",
        "--x", "2.01+0i", "--grid", "0.1:0.5:3", "--out", str(out),
    ])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["dims"] == [1, 1, 1]


def test_scan_bad_grid(tmp_path):
    code = main([
        "scan", "theta", "--kind", "bulk", "--n", "1", "--q", "0.8@0.3",
        "--x", "2.01+0i", "--grid", "junk", "--out", str(tmp_path / "x.json"),
    ])
    assert code == 2


def test_unknown_arguments_exit_2(capsys):
    assert main(["kmatrix", "--bogus"]) == 2
