import json
import re
import subprocess
import sys

import pytest

from quiverhh import cli
from quiverhh.corpus import corpus_text


@pytest.fixture
def corpus_file(tmp_path):
    def write(name):
        path = tmp_path / (name + ".json")
        path.write_text(corpus_text(name))
        return str(path)
    return write


def run(capsys, *argv):
    status = cli.main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def run_json(capsys, *argv):
    status, out, err = run(capsys, *argv, "--format", "json")
    return status, json.loads(out), out


def test_det_three_vertex(capsys, corpus_file):
    status, report, _ = run_json(capsys, "det", corpus_file("three_vertex"))
    assert status == 0
    assert report["result"] == "1"


def test_chi_both(capsys, corpus_file):
    status, report, _ = run_json(capsys, "chi", corpus_file("truncated_poly2"), "--method", "both", "--m-max", "5")
    assert status == 0
    for side in ("cartan", "homology"):
        assert report["result"][side]["series"].startswith("x + x^3 + x^5")
    assert report["result"]["match"] is True


def test_han_buchweitz(capsys, corpus_file):
    status, report, _ = run_json(capsys, "han", corpus_file("buchweitz_q2"))
    assert status == 0
    assert report["result"]["certified_infinite_hhdim"] is True
    assert report["result"]["det"] == "1 + 2x + x^2"


def test_text_output(capsys):
    status, out, _ = run(capsys, "det", "corpus:buchweitz_q2")
    assert status == 0
    assert "1 + 2x + x^2" in out


FLOAT = re.compile(r"\d\.\d|\de[-+]?\d|\b(nan|inf)\b")


def _string_leaves(node):
    if isinstance(node, dict):
        node = list(node.values())
    if isinstance(node, list):
        for v in node:
            yield from _string_leaves(v)
    elif isinstance(node, str):
        yield node


def _no_bare_numbers(node):
    if isinstance(node, dict):
        return all(_no_bare_numbers(v) for v in node.values())
    if isinstance(node, list):
        return all(_no_bare_numbers(v) for v in node)
    return node is None or isinstance(node, (str, bool))


@pytest.mark.parametrize("command", [
    "basis", "cartan", "det", "logderiv", "inverse", "chi", "hh", "hc", "relhc",
    "ext", "koszul", "wilson", "gldim", "han",
])
def test_every_command_deterministic(capsys, command):
    args = (command, "corpus:two_cycle_radsq", "--order", "12", "--n-max", "3", "--m-max", "3")
    status, report, first = run_json(capsys, *args)
    assert status == 0, report.get("error")
    _, _, second = run_json(capsys, *args)
    assert first == second
    assert _no_bare_numbers(report)
    assert not any(FLOAT.search(leaf) for leaf in _string_leaves(report))


def test_verify_suites(capsys):
    for suite in ("complexes", "igusa", "all"):
        status, report, _ = run_json(capsys, "verify", "corpus:buchweitz_q2", "--suite", suite,
                                     "--n-max", "3", "--m-max", "3", "--order", "20")
        assert status == 0
        assert report["result"]["passed"] is True


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": ["1"], "arrows": [')
    status, report, _ = run_json(capsys, "det", str(bad))
    assert status == 2 and "line" in report["error"]
    invalid = tmp_path / "short.json"
    invalid.write_text(json.dumps({
        "vertices": ["1"], "arrows": [{"name": "a", "from": "1", "to": "1"}],
        "relations": [{"terms": [{"coef": "1", "path": ["a"]}]}], "truncate": 3,
    }))
    assert run_json(capsys, "det", str(invalid))[0] == 2
    assert run_json(capsys, "det", str(tmp_path / "missing.json"))[0] == 1
    assert run_json(capsys, "hh", "corpus:buchweitz_q2", "--n-max", "20")[0] == 3
    assert run_json(capsys, "det", "corpus:nope")[0] == 1
    with pytest.raises(SystemExit) as err:
        cli.main(["frobnicate", "x"])
    assert err.value.code == 1
    with pytest.raises(SystemExit) as err:
        cli.main(["det", "corpus:buchweitz_q2", "--order", "0"])
    assert err.value.code == 1


def test_mismatch_exit_code(capsys, monkeypatch):
    from quiverhh.polyseries import IntPolynomial
    monkeypatch.setattr(cli, "cartan_det", lambda alg: IntPolynomial([1, 1, 1]))
    status, report, _ = run_json(capsys, "chi", "corpus:truncated_poly2", "--m-max", "3")
    assert status == 4
    assert report["result"]["match"] is False


def test_jobs_env_override(capsys, monkeypatch):
    monkeypatch.setenv(cli.JOBS_ENV, "2")
    status, report, _ = run_json(capsys, "hc", "corpus:truncated_poly2", "--m-max", "3")
    assert status == 0
    monkeypatch.setenv(cli.JOBS_ENV, "1")
    _, serial, _ = run_json(capsys, "hc", "corpus:truncated_poly2", "--m-max", "3")
    assert report == serial


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quiverhh", "det", "corpus:truncated_poly3", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"] == "1 + x + x^2"
