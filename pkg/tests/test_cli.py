"""Command-line behaviour: exit codes, determinism, round trips."""

import json

import pytest

from triquant.cli import main
from triquant.errors import ArtifactFormatError
from triquant.serialize import (
    artifact_from_dict,
    artifact_to_dict,
    dumps_artifact,
    load_artifact,
    render_latex,
    render_text,
    save_artifact,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- compile -----------------------------------------------------------------


def test_compile_text_emit(capsys):
    code, out, err = run_cli(
        capsys,
        "compile", "--set", "even", "--delta", "1", "--expr", "a - 2*h1",
        "--emit", "text",
    )
    assert code == 0
    assert out.count("[digit_window]") == 2  # one per form
    assert out.count("P = ") == 3
    assert "form 2" in out


def test_compile_rejects_constant_expression(capsys):
    code, out, err = run_cli(
        capsys, "compile", "--set", "x", "--delta", "1", "--expr", "5"
    )
    assert code == 2
    assert "degree 0" in err


def test_compile_rejects_bad_syntax(capsys):
    code, out, err = run_cli(
        capsys, "compile", "--set", "x", "--delta", "1", "--expr", "a ++"
    )
    assert code == 2
    assert "error" in err


def test_compile_rejects_unknown_variable(capsys):
    code, out, err = run_cli(
        capsys, "compile", "--set", "x", "--delta", "1", "--expr", "a - 2*h2"
    )
    assert code == 2
    assert "h2" in err


def test_compile_requires_full_inline_spec(capsys):
    code, out, err = run_cli(capsys, "compile", "--set", "x", "--expr", "a - h1")
    assert code == 2


def test_compile_deterministic_and_reloadable(tmp_path, capsys):
    first = tmp_path / "even1.json"
    second = tmp_path / "even2.json"
    code, _, _ = run_cli(
        capsys,
        "compile", "--set", "even", "--delta", "1", "--expr", "a - 2*h1",
        "--form", "both", "--out", str(first),
    )
    assert code == 0
    # recompiling from the artifact's own input block gives identical bytes
    code, _, _ = run_cli(
        capsys, "compile", "--input", str(first), "--out", str(second)
    )
    assert code == 0
    assert first.read_bytes() == second.read_bytes()


def test_compile_single_form(tmp_path, capsys):
    out = tmp_path / "f1.json"
    code, _, _ = run_cli(
        capsys,
        "compile", "--set", "even", "--delta", "1", "--expr", "a - 2*h1",
        "--form", "1", "--out", str(out),
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert "form1" in doc and "form2" not in doc


def test_compile_latex_emit(capsys):
    code, out, _ = run_cli(
        capsys,
        "compile", "--set", "even", "--delta", "1", "--expr", "a - 2*h1",
        "--emit", "latex",
    )
    assert code == 0
    assert "\\exists b" in out
    assert "\\forall f" in out
    assert "\\bigwedge" in out


def test_compile_input_spec_file(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(
        json.dumps({"set_name": "sq", "delta": 1, "expression": "a - h1^2"})
    )
    out = tmp_path / "sq.json"
    code, _, _ = run_cli(
        capsys, "compile", "--input", str(spec), "--out", str(out)
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["input"]["set_name"] == "sq"
    assert doc["constants"]["nu"] == "6"


# -- verify ------------------------------------------------------------------


@pytest.fixture(scope="module")
def even_artifact_file(tmp_path_factory):
    # --expand-w never keeps the file small; verify and report only need
    # the factored product
    path = tmp_path_factory.mktemp("artifacts") / "even.json"
    code = main(
        [
            "compile", "--set", "even", "--delta", "1", "--expr", "a - 2*h1",
            "--expand-w", "never", "--out", str(path),
        ]
    )
    assert code == 0
    return path


def test_verify_passes(even_artifact_file, tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys,
        "verify", "--artifact", str(even_artifact_file),
        "--a-max", "8", "--h-bound", "5", "--bc-samples", "3",
        "--out", str(report_path),
    )
    assert code == 0
    assert "result: PASS" in out
    doc = json.loads(report_path.read_text())
    assert doc["passed"] is True
    assert doc["set_name"] == "even"


def test_verify_flags_corrupted_artifact(even_artifact_file, tmp_path, capsys):
    doc = json.loads(even_artifact_file.read_text())
    # break the divisibility conjunct: accept everything divisible by 1
    conj = doc["form1"]["conjuncts"][1]
    assert conj["provenance"] == "divisibility"
    conj["D"] = "1"
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(doc))
    code, out, _ = run_cli(
        capsys,
        "verify", "--artifact", str(broken),
        "--a-max", "6", "--h-bound", "4", "--bc-samples", "3",
    )
    assert code == 1
    assert "result: FAIL" in out


def test_verify_missing_artifact(tmp_path, capsys):
    code, _, err = run_cli(
        capsys, "verify", "--artifact", str(tmp_path / "nope.json")
    )
    assert code == 2
    assert "error" in err


def test_verify_rejects_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "verify", "--artifact", str(bad))
    assert code == 2


def test_verify_jobs_flag(even_artifact_file, capsys):
    code, out, _ = run_cli(
        capsys,
        "verify", "--artifact", str(even_artifact_file),
        "--a-max", "5", "--h-bound", "4", "--bc-samples", "2", "--jobs", "2",
    )
    assert code == 0


# -- report ------------------------------------------------------------------


def test_report_text_and_csv(even_artifact_file, tmp_path, capsys):
    code, out, _ = run_cli(
        capsys, "report", "--artifact", str(even_artifact_file)
    )
    assert code == 0
    assert "set even" in out

    code, out, _ = run_cli(
        capsys,
        "report", "--artifact", str(even_artifact_file), "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    header = lines[0].split(",")
    assert header[0] == "set"
    row = dict(zip(header, lines[1].split(",")))
    assert row["set"] == "even"
    assert row["w_deg_f"] == "6"
    assert row["epsilon"] == "3"


def test_report_empty_list(capsys):
    code, out, _ = run_cli(capsys, "report", "--format", "csv")
    assert code == 0
    assert out.strip().splitlines()[0].startswith("set,")


def test_report_json(even_artifact_file, capsys):
    code, out, _ = run_cli(
        capsys,
        "report", "--artifact", str(even_artifact_file), "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["sets"][0]["set"] == "even"


# -- serialization round trips --------------------------------------------------


def test_artifact_round_trip_bytes(even):
    text = dumps_artifact(even)
    reloaded = artifact_from_dict(json.loads(text))
    assert dumps_artifact(reloaded) == text


def test_artifact_round_trip_values(tmp_path, composites):
    path = tmp_path / "composites.json"
    save_artifact(composites, str(path))
    back = load_artifact(str(path))
    assert back.constants.nu == 18
    assert back.constants.gamma == composites.constants.gamma
    assert back.form1 == composites.form1
    assert back.form2.triples == composites.form2.triples
    assert back.form2.F == composites.form2.F
    assert back.form2.w_factors == composites.form2.w_factors
    assert back.form2.W is None


def test_artifact_rejects_tampered_constants(even):
    doc = artifact_to_dict(even)
    doc["constants"]["scale"] = "7"
    with pytest.raises(ArtifactFormatError):
        artifact_from_dict(doc)


def test_artifact_rejects_missing_fields(even):
    doc = artifact_to_dict(even)
    del doc["constants"]["V"]
    with pytest.raises(ArtifactFormatError):
        artifact_from_dict(doc)
    with pytest.raises(ArtifactFormatError):
        artifact_from_dict({"format": "something-else"})


def test_render_text_mentions_unexpanded_product(squares):
    text = render_text(squares)
    assert "not expanded" in text
    assert "degree in f = 6" in text


def test_render_latex_handles_both_shapes(even, squares):
    assert "W =" in render_latex(even)
    assert "\\prod" in render_latex(squares)
