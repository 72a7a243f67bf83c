import numpy as np
import pytest

import dezakit as dz
from dezakit.cli import main
from dezakit.fileio import (MatrixParseError, export, load_report, read_digraph,
                            read_matrix, to_digraph6, to_dot, write_matrix,
                            write_report)
from dezakit.matrix_core import Digraph

from conftest import DEZA_8_3_3_1_0, NORMALIZED_HADAMARD_4


def decode_digraph6(data: bytes) -> np.ndarray:
    """Independent decoder following the standard byte layout."""
    assert data[:1] == b"&"
    body = data[1:]
    if body[0] == 126:
        n = ((body[1] - 63) << 12) | ((body[2] - 63) << 6) | (body[3] - 63)
        body = body[4:]
    else:
        n = body[0] - 63
        body = body[1:]
    bits = []
    for ch in body:
        v = ch - 63
        bits.extend((v >> (5 - i)) & 1 for i in range(6))
    m = np.zeros((n, n), dtype=np.int64)
    for i in range(n * n):
        m[i // n, i % n] = bits[i]
    return m


def test_matrix_round_trip(tmp_path):
    path = tmp_path / "m.txt"
    write_matrix(DEZA_8_3_3_1_0, path)
    assert np.array_equal(read_matrix(path), DEZA_8_3_3_1_0)
    assert path.read_text().splitlines()[0] == "8 binary"


def test_signed_round_trip(tmp_path):
    h = dz.HadamardMatrix(NORMALIZED_HADAMARD_4)
    pair = dz.twin_deza(h)
    path = tmp_path / "k.txt"
    write_matrix(pair.signed.matrix, path)
    assert path.read_text().splitlines()[0] == "28 signed"
    assert np.array_equal(read_matrix(path), pair.signed.matrix)


def test_read_matrix_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 binary\n0 1\n0\n")
    with pytest.raises(MatrixParseError) as exc:
        read_matrix(path)
    assert exc.value.line == 3
    path.write_text("2 binary\n0 2\n0 0\n")
    with pytest.raises(MatrixParseError) as exc:
        read_matrix(path)
    assert exc.value.line == 2 and exc.value.column == 2
    path.write_text("2 trits\n0 1\n0 0\n")
    with pytest.raises(MatrixParseError):
        read_matrix(path)
    path.write_text("2 binary\n0 x\n0 0\n")
    with pytest.raises(MatrixParseError):
        read_matrix(path)


def test_read_digraph_loops_flag(tmp_path):
    path = tmp_path / "loopy.txt"
    write_matrix(np.eye(3, dtype=np.int64), path)
    d = read_digraph(path)
    assert d.loops_allowed


def test_digraph6_empty_five():
    assert to_digraph6(dz.empty_digraph(5)) == b"&D?????"


@pytest.mark.parametrize("n", [1, 2, 5, 17, 62, 63, 100])
def test_digraph6_round_trip(n):
    rng = np.random.default_rng(n)
    m = (rng.random((n, n)) < 0.3).astype(np.int64)
    np.fill_diagonal(m, 0)
    d = Digraph(m)
    assert np.array_equal(decode_digraph6(to_digraph6(d)), m)


def test_digraph6_rejects_loops_and_large():
    with pytest.raises(ValueError):
        to_digraph6(Digraph(np.eye(2, dtype=np.int64), loops_allowed=True))
    with pytest.raises(ValueError):
        to_digraph6(dz.empty_digraph(300))


def test_dot_output():
    out = to_dot(dz.directed_cycle(3))
    assert out.count("->") == 3
    assert out.startswith("digraph {")


def test_export_matrix01_round_trip(tmp_path):
    d = Digraph(DEZA_8_3_3_1_0)
    payload = export(d, "matrix01")
    path = tmp_path / "m.txt"
    path.write_bytes(payload)
    assert np.array_equal(read_matrix(path), DEZA_8_3_3_1_0)
    with pytest.raises(ValueError):
        export(d, "gml")


def test_report_round_trip(tmp_path):
    doc = {"order": 8, "results": [{"classifier": "deza", "ok": True,
                                    "params": {"n": 8, "k": 3}}]}
    path = tmp_path / "r.json"
    write_report(doc, path)
    assert load_report(path) == doc


def run_cli(*argv):
    return main([str(a) for a in argv])


def test_cli_construct_and_verify(tmp_path):
    out = tmp_path / "m1.txt"
    report = tmp_path / "m1.json"
    assert run_cli("construct", "skew-hadamard", "--u", 1, "--out", out) == 0
    assert run_cli("verify", out, "--as", "deza", "--report", report) == 0
    doc = load_report(report)
    assert doc["results"][0]["params"] == {"n": 8, "k": 3, "b": 3, "a": 1, "t": 0}
    assert doc["results"][0]["alpha"] == 6 and doc["results"][0]["beta"] == 1


def test_cli_verify_all_classifiers(tmp_path):
    out = tmp_path / "drt.txt"
    report = tmp_path / "drt.json"
    assert run_cli("construct", "drt", "--q", 7, "--out", out) == 0
    assert run_cli("verify", out, "--report", report) == 0
    doc = load_report(report)
    by_name = {r["classifier"]: r for r in doc["results"]}
    assert by_name["deza"]["ok"] and by_name["dsrg"]["ok"]
    assert not by_name["deza-graph"]["ok"]


def test_cli_verify_failure_exit_code(tmp_path):
    bad = tmp_path / "bad.txt"
    m = np.zeros((3, 3), dtype=np.int64)
    m[0, 1] = m[0, 2] = m[1, 2] = 1
    write_matrix(m, bad)
    report = tmp_path / "bad.json"
    assert run_cli("verify", bad, "--as", "deza", "--report", report) == 1
    assert load_report(report)["results"][0]["ok"] is False


def test_cli_verify_ddd_with_partition(tmp_path, deza_8_3):
    mfile = tmp_path / "m.txt"
    write_matrix(deza_8_3.adjacency, mfile)
    pfile = tmp_path / "classes.txt"
    pfile.write_text("0 1\n2 3\n4 5\n6 7\n")
    report = tmp_path / "ddd.json"
    assert run_cli("verify", mfile, "--as", "ddd", "--partition", pfile,
                   "--report", report) == 0
    doc = load_report(report)
    assert doc["results"][0]["params"]["lambda2"] == 1


def test_cli_children(tmp_path, deza_8_3):
    mfile = tmp_path / "m.txt"
    write_matrix(deza_8_3.adjacency, mfile)
    out_x, out_y = tmp_path / "x.txt", tmp_path / "y.txt"
    assert run_cli("children", mfile, "--out-x", out_x, "--out-y", out_y) == 0
    x, y = read_matrix(out_x), read_matrix(out_y)
    assert np.array_equal(x + y + np.eye(8, dtype=np.int64), np.ones((8, 8), dtype=np.int64))


def test_cli_verify_children_references(tmp_path, deza_8_3):
    mfile = tmp_path / "m.txt"
    write_matrix(deza_8_3.adjacency, mfile)
    report = tmp_path / "r.json"
    prefix = tmp_path / "kids"
    assert run_cli("verify", mfile, "--as", "deza", "--report", report,
                   "--children-prefix", prefix) == 0
    doc = load_report(report)
    refs = doc["results"][0]["children"]
    x = read_matrix(refs["x"])
    y = read_matrix(refs["y"])
    assert np.array_equal(x + y + np.eye(8, dtype=np.int64), np.ones((8, 8), dtype=np.int64))


def test_cli_twin_family(tmp_path):
    base = tmp_path / "twin"
    assert run_cli("construct", "twin", "--order", 4, "--out", base) == 0
    a = read_matrix(f"{base}_A.txt")
    rep = dz.verify_deza_graph(Digraph(a))
    assert rep.params.as_tuple() == (28, 12, 6, 4)
    ra = read_matrix(f"{base}_RA.txt")
    rep = dz.verify_deza_graph(Digraph(ra, loops_allowed=True), reflexive=True)
    assert rep.params.as_tuple() == (28, 16, 10, 8)
    k = read_matrix(f"{base}_K.txt")
    assert set(np.unique(k)) <= {-1, 0, 1}


def test_cli_decompose(tmp_path):
    design = tmp_path / "fano.txt"
    assert run_cli("construct", "qr-design", "--q", 7, "--out", design) == 0
    lexed = tmp_path / "lexed.txt"
    write_matrix(dz.design_lex_empty(read_matrix(design), 2).adjacency, lexed)
    quotient = tmp_path / "q.txt"
    assert run_cli("decompose", lexed, "--mode", "b-eq-k",
                   "--out-quotient", quotient) == 0
    assert dz.verify_symmetric_design(read_matrix(quotient)).as_tuple() == (7, 3, 1)


def test_cli_decompose_failure(tmp_path, deza_8_3):
    mfile = tmp_path / "m.txt"
    write_matrix(deza_8_3.adjacency, mfile)
    assert run_cli("decompose", mfile, "--mode", "b-eq-t",
                   "--out-quotient", tmp_path / "q.txt") == 1


def test_cli_check_identities():
    assert run_cli("check-identities", "--q", 3) == 0


def test_cli_search_and_feasibility(capsys):
    assert run_cli("search", "--params", "5,1,1,0,0", "--limit", 2) == 0
    captured = capsys.readouterr()
    assert len(captured.out.strip().splitlines()) == 2
    assert run_cli("feasibility", "--params", "8,3,3,1,0") == 0
    assert run_cli("feasibility", "--params", "8,3,3,1,1") == 1


def test_cli_search_canonical_dedup(capsys):
    assert run_cli("search", "--params", "5,1,1,0,0", "--canonical-dedup") == 0
    captured = capsys.readouterr()
    assert len(captured.out.strip().splitlines()) == 1


def test_cli_size_bound_exit():
    assert run_cli("search", "--params", "12,2,1,0,0") == 3


def test_cli_usage_error(tmp_path):
    assert run_cli("construct", "skew-hadamard", "--out", tmp_path / "x.txt") == 2
    with pytest.raises(SystemExit) as exc:
        run_cli("verify")
    assert exc.value.code == 2


def test_cli_field_type2(tmp_path):
    out = tmp_path / "n1.txt"
    assert run_cli("construct", "field-type2", "--q", 3, "--alpha", 1,
                   "--out", out) == 0
    rep = dz.verify_type2(read_digraph(out))
    assert rep.params.as_tuple() == (81, 24, 9, 6)


def test_cli_lex_product(tmp_path):
    a, b, out = tmp_path / "a.txt", tmp_path / "b.txt", tmp_path / "ab.txt"
    assert run_cli("construct", "drt", "--q", 3, "--out", a) == 0
    assert run_cli("construct", "empty", "--n", 2, "--out", b) == 0
    assert run_cli("construct", "lex-product", a, b, "--out", out) == 0
    assert read_matrix(out).shape == (6, 6)


def test_cli_determinism(tmp_path):
    one, two = tmp_path / "one.txt", tmp_path / "two.txt"
    run_cli("construct", "field-type2", "--q", 3, "--alpha", 2, "--out", one)
    run_cli("construct", "field-type2", "--q", 3, "--alpha", 2, "--out", two)
    assert one.read_bytes() == two.read_bytes()


@pytest.mark.parametrize("argv", [
    ("skew-hadamard", "--u", 2),
    ("drt", "--q", 7),
    ("field-type2", "--q", 3, "--alpha", 0),
    ("qr-design", "--q", 7),
    ("paley-graph", "--q", 5),
    ("empty", "--n", 4),
])
def test_cli_every_single_output_family_verifies(tmp_path, argv):
    out = tmp_path / "member.txt"
    assert run_cli("construct", *argv, "--out", out) == 0
    report = tmp_path / "member.json"
    assert run_cli("verify", out, "--report", report) == 0


@pytest.mark.parametrize("family", ["twin", "twin-directed"])
def test_cli_twin_outputs_verify(tmp_path, family):
    base = tmp_path / "t"
    assert run_cli("construct", family, "--order", 4, "--out", base) == 0
    for suffix in ("_A", "_B", "_RA", "_RB"):
        report = tmp_path / f"{suffix}.json"
        assert run_cli("verify", f"{base}{suffix}.txt", "--report", report) == 0


def test_cli_twin_from_paley_order(tmp_path):
    # order 12 = 11 + 1 comes from the normalized Paley matrix
    base = tmp_path / "p"
    assert run_cli("construct", "twin", "--order", 12, "--out", base) == 0
    a = read_matrix(f"{base}_A.txt")
    rep = dz.verify_deza_graph(Digraph(a))
    assert rep.params.as_tuple() == (23 * 12, 11 * 12, 66, 60)
