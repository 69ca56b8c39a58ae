import json
import os

import pytest

from swcasson.cli import ReportCache, cache_key, main, run_batch
from swcasson.corpus import builtin_seifert

CORPUS = ("name,type,payload,strands\n"
          "unknot,seifert,[],\n"
          "trefoil,braid,1 1 1,2\n"
          "figure-8,seifert,\"[[1,1],[0,-1]]\",\n")
OPTIONS = {"h_dirac": 0, "h_half": 0, "r": "1", "chi": 0}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_alex_braid(capsys):
    code, out, _ = run(capsys, "alex", "--braid", "1 1 1", "--strands", "2")
    assert code == 0
    assert json.loads(out) == {"coeffs": {"-1": "1", "0": "-1", "1": "1"}}


def test_alex_empty_seifert(capsys, tmp_path):
    p = tmp_path / "empty.json"
    p.write_text("")
    code, out, _ = run(capsys, "alex", "--seifert", str(p))
    assert code == 0 and json.loads(out) == {"coeffs": {"0": "1"}}


def test_alex_link_is_input_error(capsys):
    code, _, err = run(capsys, "alex", "--braid", "1 1", "--strands", "2")
    assert code == 2 and "closure has 2 components" in err


def test_alex_needs_one_source(capsys, tmp_path):
    code, _, err = run(capsys, "alex")
    assert code == 2
    code, _, _ = run(capsys, "alex", "--braid", "1 1 1")
    assert code == 2
    code, _, err = run(capsys, "alex", "--seifert", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in err


def test_lambda_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "lambda", "--braid", "1 1 1", "--strands", "2")
    assert code == 0 and json.loads(out)["lambda_sw"] == "1"
    p = tmp_path / "u.json"
    p.write_text("[]")
    code, out, _ = run(capsys, "lambda", "--seifert", str(p))
    rep = json.loads(out)
    assert rep["lambda_sw"] == "0" and rep["conjecture_check"]["consistent"]
    p.write_text("[[1,1],[0,-1]]")
    code, out, _ = run(capsys, "lambda", "--seifert", str(p), "--hd", "2")
    rep = json.loads(out)
    assert rep["sw_sum"] == -1 and rep["omega"] == "-1" and rep["lambda_sw"] == "0"


def test_sw_eta_omega(capsys):
    code, out, _ = run(capsys, "sw", "--braid", "1 -2 1 -2", "--strands", "3")
    assert code == 0 and json.loads(out)["sw_sum"] == -1
    code, out, _ = run(capsys, "eta", "--chi", "2", "--r", "1/2")
    assert json.loads(out)["eta_dirac"] == "3/32"
    code, out, _ = run(capsys, "omega", "--chi", "2", "--r", "1/2", "--hd", "2")
    assert json.loads(out)["omega"] == "-1"
    code, _, err = run(capsys, "eta", "--l", "0")
    assert code == 2
    with pytest.raises(SystemExit):
        main(["eta", "--r", "abc"])


@pytest.mark.parametrize("suite,extra,expected", [
    ("sw-identity", ["--corpus", "builtin"], 0),
    ("correction-r-independence", [], 0),
    ("transgression", ["--seed", "7", "--trials", "5"], 0),
    ("eq1-torsion", [], 0),
    ("spectral", [], 0),
    ("dirac-path", [], 1),
    ("dirac-path", ["--deta-reading", "half-interior-sum", "--t-power", "2"], 0),
])
def test_verify_suites(capsys, suite, extra, expected):
    code, out, _ = run(capsys, "verify", suite, *extra)
    assert code == expected
    assert json.loads(out)["suite"] == suite


def test_verify_sw_identity_csv(capsys, tmp_path):
    p = tmp_path / "c.csv"
    p.write_text(CORPUS)
    code, out, _ = run(capsys, "verify", "sw-identity", "--corpus", str(p))
    assert code == 0 and len(json.loads(out)["knots"]) == 3 + 6


def test_verify_spectral_grid_file(capsys, tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"samples": [{"lambda_ir": "1", "lam": "1", "R": "1"}]}))
    code, out, _ = run(capsys, "verify", "spectral", "--grid-file", str(p), "--precision", "40")
    obj = json.loads(out)
    assert code == 0 and obj["precision_digits"] == 40 and len(obj["samples"]) == 1


def test_unknown_suite():
    with pytest.raises(SystemExit):
        main(["verify", "nope"])


def test_batch_cache_and_determinism(capsys, tmp_path):
    src = tmp_path / "c.csv"
    src.write_text(CORPUS)
    cache = tmp_path / "cache"
    outs = []
    for i, extra in enumerate([["--cache", str(cache)], ["--cache", str(cache), "--jobs", "3"], []]):
        out = tmp_path / f"o{i}.jsonl"
        code, summary, _ = run(capsys, "batch", "--input", str(src), "--out", str(out), *extra)
        assert code == 0
        outs.append((out.read_bytes(), json.loads(summary)))
    assert outs[0][0] == outs[1][0] == outs[2][0]
    assert outs[0][1]["computed"] == 3
    assert outs[1][1] == {"rows": 3, "computed": 0, "cache_hits": 3, "error": 0, "recomputed": False}
    rows = [json.loads(line) for line in outs[0][0].decode().splitlines()]
    assert [r["report"]["lambda_sw"] for r in rows] == ["0", "1", "-1"]


def test_batch_env_cache(capsys, tmp_path, monkeypatch):
    src = tmp_path / "c.csv"
    src.write_text(CORPUS)
    monkeypatch.setenv("LAMBDA_SW_CACHE", str(tmp_path / "envcache"))
    run(capsys, "batch", "--input", str(src), "--out", str(tmp_path / "a.jsonl"))
    assert len(os.listdir(tmp_path / "envcache")) == 3


def test_batch_isolation(capsys, tmp_path):
    src = tmp_path / "c.csv"
    src.write_text(CORPUS + "bad,seifert,\"[[1,0],[0,1]]\",\n")
    code, _, _ = run(capsys, "batch", "--input", str(src), "--out", str(tmp_path / "o.jsonl"))
    assert code == 0
    rows = [json.loads(line) for line in (tmp_path / "o.jsonl").read_text().splitlines()]
    assert len(rows) == 4
    assert "error" in rows[3] and all("report" in r for r in rows[:3])
    clean = tmp_path / "clean.jsonl"
    src.write_text(CORPUS)
    main(["batch", "--input", str(src), "--out", str(clean)])
    assert clean.read_text().splitlines() == (tmp_path / "o.jsonl").read_text().splitlines()[:3]


def test_cache_key_ignores_formatting():
    a = cache_key(builtin_seifert("trefoil"), OPTIONS)
    b = cache_key(builtin_seifert("trefoil"), dict(reversed(list(OPTIONS.items()))))
    assert a == b
    assert a != cache_key(builtin_seifert("figure-8"), OPTIONS)


def test_cache_round_trip(tmp_path):
    c = ReportCache(str(tmp_path))
    assert c.get("k") is None
    c.put("k", {"x": 1})
    assert c.get("k") == {"x": 1}
    assert not [f for f in os.listdir(tmp_path) if f.startswith(".tmp")]


def test_run_batch_jobs_equal():
    a, _ = run_batch(CORPUS, OPTIONS, None, 1)
    b, _ = run_batch(CORPUS, OPTIONS, None, 4)
    assert a == b
