import pytest

from kantorlab import catalog, cli, corpus
from kantorlab.exact import exact_equal
from kantorlab.fileformat import dumps, load, loads, map_file, to_superalgebra, to_triple, triple_file
from kantorlab.lie import matches_osp12
from kantorlab.triple import MINUS_MINUS, SignPair


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_listing(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "--out", str(tmp_path))
    assert code == 0
    assert "osp12\tgraded-superalgebra\tdim 5" in out
    assert "quat\tinvolutive-algebra\tdim 4" in out
    for item in catalog.catalog():
        assert (tmp_path / f"{item}.json").read_text() == dumps(catalog.get(item))


def test_verify_quat_kantor(capsys):
    code, out, _ = run(capsys, "verify", "quat", "--suite", "kantor")
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize("item", catalog.catalog())
def test_verify_declared_suite(capsys, item):
    assert run(capsys, "verify", item)[0] == 0


def test_verify_wrong_signs_prints_witness(capsys):
    code, out, _ = run(capsys, "verify", "scalar-fkts", "--suite", "fkts:+1,-1")
    assert code == 1
    assert "witness (0, 0, 0, 0)" in out


def test_verify_with_signs_flag(capsys):
    assert run(capsys, "verify", "scalar-fkts", "--suite", "fkts", "--signs", "-1,-1")[0] == 0


@pytest.mark.parametrize("text", ["{broken", '{"format": "kantorlab/1"}'])
def test_corrupted_file_exits_2(capsys, tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and err.startswith("error:")


def test_input_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "verify", "no-such-item")[0] == 2
    assert run(capsys, "verify", "quat", "--suite", "bogus")[0] == 2
    assert run(capsys, "verify", "quat", "--suite", "fkts:2,1")[0] == 2
    assert run(capsys, "convert", "quat", "--to", "twist")[0] == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["convert", "quat", "--to", "nowhere"])
    assert exc.value.code == 2


def test_structurable_roundtrip_through_files(capsys, tmp_path):
    kts, back = tmp_path / "quat-kts.json", tmp_path / "quat-back.json"
    assert run(capsys, "convert", "quat", "--to", "kts", "--out", str(kts))[0] == 0
    assert run(capsys, "convert", str(kts), "--to", "structurable", "--out", str(back))[0] == 0
    assert load(back).same_content(catalog.get("quat"))
    assert load(back).provenance[-2:] == ["convert:kts", "convert:structurable"]


def test_twisted_roundtrip_keeps_automorphism(capsys, tmp_path):
    kts, back = tmp_path / "t.json", tmp_path / "b.json"
    run(capsys, "convert", "split-pair", "--to", "kts", "--out", str(kts))
    run(capsys, "convert", str(kts), "--to", "structurable", "--out", str(back))
    assert load(back).same_content(catalog.get("split-pair"))


def test_mu_normalize_swap(capsys, tmp_path):
    out = tmp_path / "n.json"
    assert run(capsys, "convert", "swap-fkts", "--to", "mu-normalize", "--out", str(out))[0] == 0
    assert exact_equal(to_triple(load(out)).tensor, corpus.componentwise(2).tensor)


def test_double_m21_unit_field(capsys):
    code, out, _ = run(capsys, "convert", "unit-field", "--to", "double-M21")
    assert code == 0
    f = loads(out)
    assert f.dim == 2 and f.data["signs"] == SignPair(1, 1)
    assert run(capsys, "verify", "-", "--suite", "fkts:1,1")[0] == 2   # stdin is not an input


def test_twist_with_map_file(capsys, tmp_path):
    m = tmp_path / "swap.json"
    m.write_text(dumps(map_file(corpus.swap2(), "swap")))
    out = tmp_path / "tw.json"
    code, _, _ = run(capsys, "convert", "swap-fkts", "--to", "twist", "--map", str(m),
                     "--out", str(out))
    assert code == 0 and load(out).data["signs"] == MINUS_MINUS


def test_convert_refuses_output_failing_its_suite(capsys, tmp_path, monkeypatch):
    bad = triple_file(corpus.scalar_fkts(), SignPair(1, -1), None, ["forged"])
    monkeypatch.setattr(cli, "convert", lambda *a, **k: bad)
    out = tmp_path / "never.json"
    code, _, err = run(capsys, "convert", "scalar-fkts", "--to", "kts", "--out", str(out))
    assert code == 1 and "fails its own suite" in err
    assert not out.exists()


def test_build_lie_scalar_matches_osp12(capsys, tmp_path):
    out = tmp_path / "g.json"
    code, msg, _ = run(capsys, "build-lie", "scalar-fkts", "--out", str(out))
    assert code == 0 and "(1, 1, 1, 1, 1)" in msg
    g, phi = to_superalgebra(load(out))
    assert g.dim == 5
    assert matches_osp12(g, phi, g.indices(1)[0]).passed


def test_build_lie_unit_field_minus_one_one(capsys, tmp_path):
    out = tmp_path / "g.json"
    assert run(capsys, "build-lie", "unit-field", "--signs", "-1,1", "--out", str(out))[0] == 0
    assert load(out).dim == 3


def test_build_lie_wrong_signs_fails(capsys):
    assert run(capsys, "build-lie", "scalar-fkts", "--signs", "1,-1")[0] == 1


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "swap-fkts")
    assert code == 0
    assert out.rstrip().endswith("adjoint×2, natural×0, trivial dim 0")
    code, out, _ = run(capsys, "decompose", "osp12")
    assert code == 0 and "adjoint×1, natural×0, trivial dim 0" in out


def test_decompose_rejects_non_minus_minus_input(capsys):
    code, _, err = run(capsys, "decompose", "quat")
    assert code == 1 and "witness" in err


def test_report_is_deterministic_across_job_counts(capsys, tmp_path):
    items = ["scalar-fkts", "swap-fkts", "quat", "osp12", "chevalley-A2"]
    a, b = tmp_path / "a", tmp_path / "b"
    code1, out1, _ = run(capsys, "report", *items, "--out", str(a), "--jobs", "1")
    code2, out2, _ = run(capsys, "report", *items, "--out", str(b), "--jobs", "2")
    assert code1 == code2 == 0
    assert out1 == out2
    assert (a / "report.tsv").read_bytes() == (b / "report.tsv").read_bytes()
    assert "FAIL" not in out1
    assert "quat\tg(U): BC1 root grading\tNOT CHECKED" in out1
    assert (a / "grading_dims.png").exists() and (a / "bracket_quat.png").exists()
