"""End-to-end tests of the command-line interface via main(argv)."""

import math

import pytest

from predictu.cli import main
from predictu.fileio import read_json

COUNTS = "genotype_id,n_case,n_control\ng0,5,45\ng1,6,24\ng2,10,10\n"
SUBJECTS = (
    "sample_id,status,snp1\n"
    + "".join(f"c{i},1,0\n" for i in range(5))
    + "".join(f"c{i},1,1\n" for i in range(5, 11))
    + "".join(f"c{i},1,2\n" for i in range(11, 21))
    + "".join(f"u{i},0,0\n" for i in range(45))
    + "".join(f"u{i},0,1\n" for i in range(45, 69))
    + "".join(f"u{i},0,2\n" for i in range(69, 79))
)


@pytest.fixture
def counts_file(tmp_path):
    path = tmp_path / "counts.csv"
    path.write_text(COUNTS)
    return str(path)


@pytest.fixture
def subject_file(tmp_path):
    path = tmp_path / "subjects.csv"
    path.write_text(SUBJECTS)
    return str(path)


def entropy(x):
    return -x * math.log(x) - (1 - x) * math.log(1 - x)


def test_missing_rho_names_the_flag(counts_file, capsys):
    assert main(["summarize", counts_file]) == 2
    assert "--rho" in capsys.readouterr().err


def test_unknown_index_token_rejected(counts_file, capsys):
    assert main(["summarize", counts_file, "--rho", "0.21", "--indices", "zzz"]) == 2
    assert "unknown indices" in capsys.readouterr().err


def test_curve_outputs(counts_file, tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["curve", counts_file, "--rho", "0.21", "--out", str(out)]) == 0
    lines = (out / "curve.csv").read_text().splitlines()
    assert lines[1] == "q,r"
    assert len(lines) == 2 + 3  # one point per genotype
    meta = read_json(out / "curve.json")
    assert meta["rho"] == 0.21
    assert meta["n_genotypes"] == 3
    assert meta["parse"]["dropped"] == 0
    assert "curve: 3 genotypes" in capsys.readouterr().out


def test_curve_accepts_subject_file(subject_file, tmp_path):
    out = tmp_path / "run"
    assert main(["curve", subject_file, "--rho", "0.21", "--out", str(out)]) == 0
    meta = read_json(out / "curve.json")
    assert meta["parse"]["rows"] == 100
    assert meta["n_genotypes"] == 3


def test_curve_warns_on_dropped_rows(tmp_path, capsys):
    path = tmp_path / "subjects.csv"
    path.write_text(SUBJECTS + "oops,1\n")
    out = tmp_path / "run"
    code = main(["curve", str(path), "--rho", "0.21",
                 "--max-bad-rows", "0.5", "--out", str(out)])
    assert code == 0
    assert "warning:" in capsys.readouterr().err
    assert read_json(out / "curve.json")["parse"]["dropped"] == 1


def test_summarize_golden_values(counts_file, tmp_path):
    out = tmp_path / "run"
    code = main([
        "summarize", counts_file, "--rho", "0.21",
        "--indices", "u,ustd,upartial,r,tg,ae", "--band", "0.5:1",
        "--out", str(out),
    ])
    assert code == 0
    got = {b["name"]: b["value"] for b in read_json(out / "indices.json")["indices"]}
    assert got["U"] == pytest.approx(0.146, abs=1e-12)
    assert got["U_std"] == pytest.approx(0.146 / (2 * 0.21 * 0.79), rel=1e-12)
    assert got["U_partial"] == pytest.approx(0.036, abs=1e-12)
    assert got["R"] == pytest.approx(0.0229, abs=1e-12)
    assert got["TG"] == pytest.approx(0.116, abs=1e-12)
    ae = entropy(0.21) - (0.5 * entropy(0.1) + 0.3 * entropy(0.2) + 0.2 * entropy(0.5))
    assert got["AE"] == pytest.approx(ae, rel=1e-12)


def test_summarize_inference_and_determinism(counts_file, tmp_path, capsys):
    args = [
        "summarize", counts_file, "--rho", "0.21",
        "--band", "0.5:1", "--bootstrap", "150", "--permutation", "50",
        "--seed", "3",
    ]
    out1, out2, out3 = (tmp_path / d for d in ("a", "b", "c"))
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    for name in ("indices.json", "inference.json", "curve.csv"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    inference = read_json(out1 / "inference.json")
    assert inference["global"]["method"] == "bootstrap"
    ci = inference["global"]["ci"]
    assert ci["lower"] <= inference["global"]["u_hat"] <= ci["upper"]
    assert "partial" in inference
    assert 0.0 < inference["permutation_p"] <= 1.0
    assert "ci=[" in capsys.readouterr().out

    # a different seed moves the resampled quantities but not the indices
    assert main(args[:-1] + ["4", "--out", str(out3)]) == 0
    assert read_json(out1 / "indices.json")["indices"] == read_json(out3 / "indices.json")["indices"]
    assert read_json(out1 / "inference.json")["global"] != read_json(out3 / "inference.json")["global"]


def test_summarize_asymptotic_when_no_bootstrap(counts_file, tmp_path):
    out = tmp_path / "run"
    assert main(["summarize", counts_file, "--rho", "0.21", "--out", str(out)]) == 0
    doc = read_json(out / "inference.json")
    assert doc["global"]["method"] == "two_sample_asymptotic"


def test_summarize_partial_requires_band(counts_file, tmp_path, capsys):
    code = main(["summarize", counts_file, "--rho", "0.21",
                 "--indices", "upartial", "--out", str(tmp_path)])
    assert code == 2
    assert "--band" in capsys.readouterr().err


def test_degenerate_rho_is_a_numeric_error(counts_file, tmp_path, capsys):
    code = main(["summarize", counts_file, "--rho", "5e-13", "--out", str(tmp_path)])
    assert code == 3
    assert "numeric error:" in capsys.readouterr().err


def test_links_identities_hold(counts_file, tmp_path, capsys):
    out = tmp_path / "run"
    assert main(["links", counts_file, "--rho", "0.21", "--out", str(out)]) == 0
    doc = read_json(out / "links.json")
    assert doc["roc_identity_residual"] < 1e-10
    assert doc["lorenz_identity_residual"] < 1e-10
    assert doc["auc_roc"] == pytest.approx(1194.5 / 1659, rel=1e-12)
    assert doc["auc_lorenz"] == pytest.approx(685.0 / 2100.0, rel=1e-12)
    assert (out / "roc.csv").read_text().splitlines()[1] == "fpr,tpr"
    assert (out / "lorenz.csv").read_text().splitlines()[1] == "q,h"
    assert "AUC" in capsys.readouterr().out


def test_validate_against_itself_reproduces_training(counts_file, tmp_path):
    out = tmp_path / "run"
    code = main([
        "validate", "--train", counts_file, "--test", counts_file,
        "--rho", "0.21", "--isotonic", "--out", str(out),
    ])
    assert code == 0
    doc = read_json(out / "validate.json")
    train = {b["name"]: b["value"] for b in doc["train"]["indices"]}
    test = {b["name"]: b["value"] for b in doc["test"]["indices"]}
    assert test == pytest.approx(train, rel=1e-12)
    assert doc["test"]["monotone"] is True
    assert doc["test"]["unseen"] == []
    refit = {b["name"]: b["value"] for b in doc["refit"]["indices"]}
    assert refit == pytest.approx(test, rel=1e-12)  # monotone already, refit is a no-op


def test_validate_disjoint_genotypes(counts_file, tmp_path, capsys):
    other = tmp_path / "other.csv"
    other.write_text("genotype_id,n_case,n_control\nh0,5,5\nh1,5,5\n")
    code = main([
        "validate", "--train", counts_file, "--test", str(other),
        "--rho", "0.21", "--out", str(tmp_path / "run"),
    ])
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_simulate_unknown_preset(tmp_path, capsys):
    code = main(["simulate", "--preset", "nope", "--out", str(tmp_path)])
    assert code == 2
    assert "smoke" in capsys.readouterr().err


def test_simulate_smoke_replay(tmp_path, capsys):
    args = [
        "simulate", "--preset", "smoke", "--replicates", "20",
        "--n-cases", "200", "--n-controls", "200",
        "--bootstrap", "50", "--seed", "4", "--format", "json",
    ]
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert (out1 / "eval.json").read_bytes() == (out2 / "eval.json").read_bytes()
    doc = read_json(out1 / "eval.json")
    assert [r["index"] for r in doc["reports"]] == ["U", "U_std", "R", "TG", "AE"]
    assert all(r["n_replicates"] == 20 for r in doc["reports"])
    assert "%bias" in capsys.readouterr().out


def test_simulate_from_model_yaml(tmp_path):
    model = tmp_path / "model.yaml"
    model.write_text(
        "target_rho: 0.05\n"
        "snps:\n"
        "  - {maf: 0.3, mode: additive, rr: 1.8}\n"
    )
    out = tmp_path / "run"
    code = main([
        "simulate", "--model", str(model), "--replicates", "5",
        "--n-cases", "100", "--n-controls", "100",
        "--indices", "u", "--bootstrap", "20", "--out", str(out),
    ])
    assert code == 0
    lines = (out / "eval.csv").read_text().splitlines()
    assert lines[1].startswith("model,index,")
    assert lines[2].startswith("model,U,")


def test_report_merges_and_reruns_identically(counts_file, tmp_path):
    idx = tmp_path / "idx"
    sim = tmp_path / "sim"
    assert main(["summarize", counts_file, "--rho", "0.21", "--out", str(idx)]) == 0
    assert main([
        "simulate", "--preset", "smoke", "--replicates", "5",
        "--n-cases", "100", "--n-controls", "100", "--indices", "u",
        "--bootstrap", "20", "--format", "json", "--out", str(sim),
    ]) == 0

    inputs = [str(idx / "indices.json"), str(sim / "eval.json")]
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    assert main(["report", *inputs, "--out", str(out1)]) == 0
    assert main(["report", *inputs, "--out", str(out2)]) == 0
    assert (out1 / "report.csv").read_bytes() == (out2 / "report.csv").read_bytes()

    lines = (out1 / "report.csv").read_text().splitlines()
    assert lines[1].split(",")[:3] == ["source", "model", "index"]
    # 5 summary indices from the first input, then 1 harness row from the second
    assert len(lines) == 2 + 5 + 1
    assert lines[2].startswith("indices.json,")
    assert lines[-1].startswith("eval.json,")

    out3 = tmp_path / "r3"
    assert main(["report", *inputs, "--format", "json", "--out", str(out3)]) == 0
    assert len(read_json(out3 / "report.json")["rows"]) == 6


def test_report_without_inputs(tmp_path, capsys):
    assert main(["report", "--out", str(tmp_path)]) == 2
    assert "at least one" in capsys.readouterr().err


def test_report_rejects_non_json_input(counts_file, tmp_path, capsys):
    assert main(["report", counts_file, "--out", str(tmp_path)]) == 2
    assert "not a readable JSON" in capsys.readouterr().err
