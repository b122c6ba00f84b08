import json
import subprocess
import sys

import pytest

from curvedop import cli
from curvedop import structures as st
from curvedop.corpus import corpus, lookup
from curvedop.corpus_io import Claim, Expect, load_bundle, serialize_bundle

import oracles


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--format", "json", *argv)
    return code, json.loads(out), err


@pytest.fixture
def broken_bimodule(tmp_path):
    b = lookup("ex2.3-frame").bundle
    bad = b.with_maps(bilinear={"left": b.bilinear["left"].scale(b.ring(2))},
                      claims=[Claim("bimodule", {"mu": "mu", "left": "left", "right": "right"},
                                    Expect(st.Verdict.HOLDS))])
    path = tmp_path / "broken.bundle"
    path.write_text(serialize_bundle(bad))
    return path


# -- exit code rules -------------------------------------------------------------------------------------


def test_worst_severity_order():
    assert cli.worst() == 0
    assert cli.worst(0, 2) == 2
    assert cli.worst(2, 1) == 1
    assert cli.worst(1, 3, 0) == 3


def test_verify_exported_entry(tmp_path, capsys):
    out = tmp_path / "e1.bundle"
    assert run(capsys, "corpus", "export", "ex2.3/f1/e1", "--out", str(out))[0] == 0
    code, text, _ = run(capsys, "verify", str(out))
    assert code == 0 and "HOLDS" in text


def test_verify_conditional(capsys):
    code, text, _ = run(capsys, "verify", "ex3.10", "--conditional")
    assert code == 2
    assert "= 0" in text


def test_conditional_constraints_match_oracle(capsys):
    code, doc, _ = run_json(capsys, "verify", "ex3.10")
    assert code == 2
    first = doc["claims"][0]
    assert first["verdict"] == "conditional"
    got = {oracles.parse_constraint(c) for c in first["constraints"]}
    assert got == set(oracles.ex310_constraints())


def test_broken_bimodule_fails(broken_bimodule, capsys):
    code, text, _ = run(capsys, "verify", str(broken_bimodule))
    assert code == 1
    line = next(l for l in text.splitlines() if "eq1.2a" in l)
    assert "FAILS" in line
    code, doc, _ = run_json(capsys, "verify", str(broken_bimodule))
    eq = {e["tag"]: e for e in doc["claims"][0]["equations"]}
    assert not eq["eq1.2a"]["holds"] and eq["eq1.2a"]["residuals"]


def test_max_residuals_limits_output(broken_bimodule, capsys):
    _, doc, _ = run_json(capsys, "verify", str(broken_bimodule), "--max-residuals", "1")
    for e in doc["claims"][0]["equations"]:
        assert len(e["residuals"]) <= 1


def test_parse_error_is_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.bundle"
    bad.write_text("{ this is not a bundle")
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 3 and err


def test_missing_file_and_unknown_command(capsys):
    assert run(capsys, "verify", "/nonexistent/x.bundle")[0] == 3
    assert run(capsys, "frobnicate")[0] == 3
    assert run(capsys)[0] == 3


def test_claim_selection(capsys):
    code, doc, _ = run_json(capsys, "verify", "ex3.4a/R1", "--claim", "generalized_rb")
    assert code == 0 and [c["kind"] for c in doc["claims"]] == ["generalized_rb"]
    assert run(capsys, "verify", "ex3.4a/R1", "--claim", "nope")[0] == 3


# -- text and structured output agree --------------------------------------------------------------


@pytest.mark.parametrize("ref", ["ex2.3/f1/e1", "ex3.4a/R5", "ex3.10"])
def test_text_and_json_verdicts_agree(ref, capsys):
    code_t, text, _ = run(capsys, "verify", ref)
    code_j, doc, _ = run_json(capsys, "verify", ref)
    assert code_t == code_j
    headers = [l for l in text.splitlines() if l.startswith("claim ")]
    assert len(headers) == len(doc["claims"])
    for line, c in zip(headers, doc["claims"]):
        assert c["verdict"].upper() in line


def test_json_is_stable(capsys):
    a = run(capsys, "--format", "json", "verify", "ex3.10")[1]
    b = run(capsys, "--format", "json", "verify", "ex3.10")[1]
    assert a == b


def test_jobs_keep_declared_order(capsys):
    _, one, _ = run_json(capsys, "verify", "ex3.4a/R2")
    _, many, _ = run_json(capsys, "--jobs", "3", "verify", "ex3.4a/R2")
    assert one["claims"] == many["claims"]


def test_global_flags_after_subcommand(capsys):
    code, doc, _ = run_json(capsys, "verify", "ex2.3/f3", "--quiet")
    assert code == 0 and doc["claims"][0]["verdict"] == "holds"
    code, out, _ = run(capsys, "verify", "ex2.3/f3", "--format", "json")
    assert json.loads(out)["claims"]


# -- corpus --------------------------------------------------------------------------------------------


def test_corpus_list(capsys):
    code, text, _ = run(capsys, "corpus", "list")
    assert code == 0
    for eid in ("ex2.3/f1/e1", "ex3.4a/R11", "ex3.10"):
        assert eid in text
    assert "ex2.3-frame" not in text
    assert "ex2.3-frame" in run(capsys, "corpus", "list", "--templates")[1]


def test_corpus_export_unknown(capsys):
    assert run(capsys, "corpus", "export", "bogus")[0] == 3


@pytest.mark.parametrize("entry", corpus(), ids=lambda e: e.id)
def test_every_export_verifies_as_expected(entry, tmp_path, capsys):
    path = tmp_path / "entry.bundle"
    assert run(capsys, "corpus", "export", entry.id, "--out", str(path))[0] == 0
    assert load_bundle(path) == entry.bundle
    code, doc, _ = run_json(capsys, "verify", str(path))
    assert all(c["matches_expected"] for c in doc["claims"])
    assert code == (2 if entry.id == "ex3.10" else 0)


# -- derive -------------------------------------------------------------------------------------------


def test_derive_dendriform_round_trip(tmp_path, capsys):
    out = tmp_path / "d.bundle"
    code, _, _ = run(capsys, "--quiet", "derive", "ex2.3/f1/e1", "--construction", "dendriform",
                     "--out", str(out))
    assert code == 0
    b = load_bundle(out)
    assert "dendriform_system" in [c.kind for c in b.claims]
    assert run(capsys, "verify", str(out))[0] == 0


def test_derive_to_stdout(capsys):
    code, text, _ = run(capsys, "--quiet", "derive", "ex2.3/f1/e1", "--construction", "star")
    assert code == 0 and text.strip()


def test_derive_grb_all(capsys):
    code, doc, _ = run_json(capsys, "derive", "ex3.4a/R1", "--construction", "grb_all")
    assert code == 0 and doc["exit"] == 0
    derived = doc["claims"]
    assert [(c["index"], c["kind"]) for c in derived] == [
        (3, "dendriform_algebra"), (4, "pre_lie"), (5, "tridendriform_algebra"), (6, "associativity")]
    assert all(c["verdict"] == "holds" for c in derived)


def test_derive_pseudotwistor_on_zero_system(capsys):
    assert run(capsys, "--quiet", "derive", "dcrbs-frame", "--construction", "pseudotwistor")[0] == 0


@pytest.mark.parametrize("construction", ["tridendriform", "star", "prelie", "diamond", "odot"])
def test_other_constructions_on_first_entry(construction, capsys):
    assert run(capsys, "--quiet", "derive", "ex2.3/f1/e1", "--construction", construction)[0] == 0


def test_star_r_needs_a_bimodule_algebra(capsys):
    # the curvature of this entry is not compatible with both actions, so the construction is refused
    code, _, err = run(capsys, "derive", "ex2.3/f1/e1", "--construction", "star_r")
    assert code == 1 and "bma.c" in err


def test_derive_unknown_construction(capsys):
    assert run(capsys, "derive", "ex2.3/f1/e1", "--construction", "nope")[0] == 3


def test_derive_refuses_unverified_source(broken_bimodule, capsys):
    code = run(capsys, "--quiet", "derive", str(broken_bimodule), "--construction", "dendriform")[0]
    assert code in (1, 3)


# -- search ------------------------------------------------------------------------------------------


def test_search_counts_and_cross_check(capsys):
    code, doc, _ = run_json(capsys, "search", "--field", "2", "--template", "ex2.3-frame",
                            "--unknowns", "R,S,omega", "--structure", "curved_oos", "--cross-check",
                            "--limit", "-1")
    assert code == 0
    assert doc["candidates"] == 32 and doc["count"] == 17
    assert [w["candidate"] for w in doc["witnesses"]] == oracles.curved_oos_witnesses(2)
    assert doc["cross_check"]["agree"]


def test_search_empty_unknowns(capsys):
    code, doc, _ = run_json(capsys, "search", "--field", "3", "--template", "ex2.3-frame", "--unknowns", "", "--structure", "curved_oos")
    assert code == 0 and doc["count"] == 1


def test_search_refusals(capsys):
    base = ["search", "--template", "ex2.3-frame", "--unknowns", "R,S,omega", "--structure", "curved_oos"]
    assert run(capsys, *base, "--field", "4")[0] == 3
    assert run(capsys, "search", "--field", "7", "--template", "regular-frame", "--unknowns", "R,S,omega",
               "--structure", "curved_rbs")[0] == 3


def test_search_writes_witness_files(tmp_path, capsys):
    code, _, _ = run(capsys, "--quiet", "search", "--field", "2", "--template", "ex2.3-frame", "--unknowns",
                     "R,S,omega", "--structure", "curved_oos", "--limit", "3", "--out-dir", str(tmp_path))
    files = sorted(tmp_path.iterdir())
    assert code == 0 and len(files) == 3
    for f in files:
        assert run(capsys, "verify", str(f))[0] == 0


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "curvedop.cli", "corpus", "export", "bogus"],
                          capture_output=True, text=True)
    assert proc.returncode == 3
