import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from diffsets.cli import SurveyConfig, main, run_check, run_survey
from diffsets.report import CertificateRecord, emit_report, parse_jsonl
from diffsets.battery import BatteryConfig


def test_check_429(capsys):
    assert main(["check", "--v", "429", "--k", "108", "--lambda", "27"]) == 0
    out = capsys.readouterr().out
    assert "contraction" in out and "14896" in out and "status: EXCLUDED" in out


def test_check_39_mann(capsys):
    cert = run_check(39, 19, 9, SurveyConfig())
    mann = [r for r in cert.results if r.test_name == "mann"][0]
    assert mann.witness == {"w": 13, "p": 5, "j": 2}


def test_check_fano_exists(capsys):
    cert = run_check(7, 3, 1, SurveyConfig())
    assert cert.excluded_by is None and cert.status.value == "EXISTS"


def test_check_invalid(capsys):
    assert main(["check", "--v", "10", "--k", "4", "--lambda", "1"]) == 1
    assert "counting identity" in capsys.readouterr().err


def test_contract_row(capsys):
    assert main(["contract", "--v", "429", "--k", "108", "--lambda", "27", "--w", "143", "--t", "3"]) == 0
    out = capsys.readouterr().out
    assert "| 429 | 108 | 27 | 81 | 3 | 143 | 14896 | 0 |" in out


def test_survey_empty_range(tmp_path, capsys):
    assert main(["survey", "--kmin", "10", "--kmax", "9", "--out", str(tmp_path / "e")]) == 0
    md = (tmp_path / "e.md").read_text()
    assert md.count("\n") == 2  # header and rule only
    assert (tmp_path / "e.jsonl").read_text() == ""


def test_survey_files_and_schema(tmp_path, capsys):
    out = tmp_path / "s"
    assert main(["survey", "--kmin", "3", "--kmax", "12", "--out", str(out), "--no-timing"]) == 0
    lines = (tmp_path / "s.jsonl").read_text().splitlines()
    for line in lines:
        obj = json.loads(line)
        assert list(obj) == ["schema", "v", "k", "lambda", "n", "status", "tests", "elapsed_ms"]
        assert obj["schema"] == 1
        assert all(set(t) == {"name", "verdict", "witness"} for t in obj["tests"])
    keys = [(json.loads(l)["k"], json.loads(l)["v"]) for l in lines]
    assert keys == sorted(keys)


def test_byte_identical_and_jobs_independent(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["survey", "--kmin", "3", "--kmax", "14", "--out", str(a), "--no-timing"])
    main(["survey", "--kmin", "3", "--kmax", "14", "--out", str(b), "--no-timing", "--jobs", "2"])
    assert (tmp_path / "a.jsonl").read_bytes() == (tmp_path / "b.jsonl").read_bytes()
    assert (tmp_path / "a.md").read_bytes() == (tmp_path / "b.md").read_bytes()


def test_resume_from_journal(tmp_path, capsys):
    out = tmp_path / "r"
    main(["survey", "--kmin", "3", "--kmax", "8", "--out", str(out), "--no-timing"])
    first = (tmp_path / "r.jsonl").read_text()
    # simulate an interrupted longer run: keep half the journal plus a torn line
    journal = tmp_path / "r.journal.jsonl"
    lines = journal.read_text().splitlines()
    journal.write_text("\n".join(lines[: len(lines) // 2]) + "\n" + lines[-1][:10])
    main(["survey", "--kmin", "3", "--kmax", "8", "--out", str(out), "--no-timing"])
    assert (tmp_path / "r.jsonl").read_text() == first
    keys = [(r.k, r.v, r.lam) for r in parse_jsonl(journal.read_text())]
    assert len(keys) == len(set(keys))


def test_hadamard_and_ppc_subcommands(tmp_path, capsys):
    assert main(["hadamard", "--vmax", "100", "--out", str(tmp_path / "h"), "--audit"]) == 0
    md = (tmp_path / "h.md").read_text()
    assert "SURVIVOR" not in md and "KNOWN_FAMILY" in md
    assert main(["ppc", "--nmin", "2", "--nmax", "60", "--out", str(tmp_path / "p"), "--audit"]) == 0
    recs = parse_jsonl((tmp_path / "p.jsonl").read_text())
    assert recs and all(r.status == "EXCLUDED" for r in recs)


def test_soundness_exit_code(monkeypatch, tmp_path, capsys):
    # a deliberately broken test that excludes everything must trip exit code 2
    import diffsets.battery as battery
    from diffsets.results import TestResult, Verdict

    monkeypatch.setitem(battery._SIMPLE_TESTS, "mann", lambda ps: TestResult("mann", Verdict.EXCLUDED, {"w": 1, "p": 1, "j": 1}))
    assert main(["survey", "--kmin", "3", "--kmax", "4", "--no-contraction"]) == 2


def test_survey_contains_table1(tmp_path):
    records, problems = run_survey(108, 108, SurveyConfig())
    by = {r.key: r for r in records}
    assert by[(429, 108, 27)].status == "EXCLUDED"
    assert problems == []


def test_out_into_missing_directory(tmp_path, capsys):
    out = tmp_path / "a" / "b" / "scan"
    assert main(["survey", "--kmin", "3", "--kmax", "4", "--out", str(out)]) == 0
    assert Path(f"{out}.jsonl").exists() and Path(f"{out}.md").exists()


def test_empty_report_header_only():
    assert emit_report([], "markdown", "survey") == "| v | k | λ | n | Status | Test |\n|---|---|---|---|---|---|\n"
    assert emit_report([], "jsonl") == ""


witness = st.dictionaries(st.sampled_from(["w", "p", "j", "F", "count"]), st.integers(0, 10**6), max_size=3)
record = st.builds(
    CertificateRecord,
    v=st.integers(7, 10**5),
    k=st.integers(3, 10**4),
    lam=st.integers(1, 10**3),
    n=st.integers(2, 10**4),
    status=st.sampled_from(["EXCLUDED", "OPEN", "EXISTS"]),
    tests=st.lists(st.tuples(st.sampled_from(["mann", "bcr"]), st.sampled_from(["PASS", "EXCLUDED"]), witness), max_size=3).map(tuple),
    elapsed_ms=st.integers(0, 10**6),
)


@given(st.lists(record, max_size=5))
def test_jsonl_round_trip(records):
    parsed = parse_jsonl(emit_report(records, "jsonl"))
    assert parsed == records
