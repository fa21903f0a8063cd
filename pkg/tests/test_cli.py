import json

from dynacurve.cli import main


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_invariants_subcommand(capsys):
    code, out, _ = run(capsys, ["invariants", "--d", "2", "--n", "1", "--p", "4"])
    assert code == 0
    data = json.loads(out)
    assert data["genus"] == 2
    assert data["ends"] == 6
    assert data["galois_order"] == 384
    assert data["census"]["total"] == 26


def test_verify_subcommand_green(capsys):
    code, out, _ = run(capsys, ["verify", "--d", "3", "--n", "2", "--p", "1"])
    assert code == 0
    assert json.loads(out)["all_hold"] is True


def test_poly_respects_cap(capsys):
    code, _, err = run(capsys, ["poly", "--d", "2", "--n", "9", "--p", "9"])
    assert code == 3
    assert "cap" in err


def test_poly_factor_kind(capsys):
    code, out, _ = run(
        capsys,
        ["poly", "--d", "2", "--n", "1", "--p", "1", "--kind", "factor", "--factor", "1"],
    )
    assert code == 0
    data = json.loads(out)
    assert data["deg_z"] == 2
    assert data["factor"] == 1


def test_classify_counts_and_csv(capsys, tmp_path):
    target = tmp_path / "fiber.csv"
    code, out, _ = run(
        capsys,
        ["classify", "--d", "2", "--n", "1", "--p", "2", "--c0", "3",
         "--plot-data", str(target)],
    )
    assert code == 0
    data = json.loads(out)
    assert data["counts"]["C0"] == 2
    lines = target.read_text().strip().splitlines()
    assert lines[0] == "z_re,z_im,condition,preperiod,period,residual"
    assert len(lines) == 3


def test_classify_accepts_comma_pair(capsys):
    code, out, _ = run(
        capsys, ["classify", "--d", "2", "--n", "1", "--p", "2", "--c0", "0.5,0.25"]
    )
    assert code == 0
    assert json.loads(out)["c0"] == [0.5, 0.25]


def test_transversality_sweep(capsys):
    code, out, _ = run(capsys, ["transversality", "--d", "2", "--n", "2", "--p", "1"])
    assert code == 0
    reports = json.loads(out)["reports"]
    assert len(reports) == 1
    assert reports[0]["c0"] == [-2.0, 0.0]
    assert reports[0]["derivative_nonzero"] is True


def test_transversality_rejects_low_preperiod(capsys):
    code, _, err = run(
        capsys, ["transversality", "--d", "2", "--n", "1", "--p", "1", "--c0", "-2"]
    )
    assert code == 1
    assert err


def test_ends_subcommand_with_matching(capsys):
    code, out, _ = run(
        capsys, ["ends", "--d", "2", "--n", "2", "--p", "1", "--c0", "-3"]
    )
    assert code == 0
    data = json.loads(out)
    assert data["ends_per_component"] == 2
    assert data["classes"]["1"] == ["00|1", "01|0"]
    assert data["matches"][0]["complete"] is True


def test_monodromy_subcommand(capsys):
    code, out, _ = run(
        capsys, ["monodromy", "--d", "2", "--n", "1", "--p", "1", "--zero-ray"]
    )
    assert code == 0
    data = json.loads(out)
    assert data["report"]["group_order"] == 2
    assert data["verification"]["all_hold"] is True
    assert data["zero_ray"]["shift"] == 1


def test_output_is_deterministic(capsys):
    _, first, _ = run(capsys, ["invariants", "--d", "3", "--n", "2", "--p", "2"])
    _, second, _ = run(capsys, ["invariants", "--d", "3", "--n", "2", "--p", "2"])
    assert first == second
