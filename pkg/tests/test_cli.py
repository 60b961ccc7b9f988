import json
from io import StringIO

import pytest

from hitchin_count.cache import PolyCache, cache_key
from hitchin_count.cli import main
from hitchin_count.polyalg import LaurentPoly
from hitchin_count.selfcheck import load_fixture

from importlib import resources

DATA = resources.files("hitchin_count").joinpath("data")


def run(*argv, cache=None):
    out = StringIO()
    args = ["--cache-dir", str(cache)] if cache else []
    code = main(args + list(argv), out)
    return code, out.getvalue()


def test_universal_text(tmp_path):
    code, text = run("universal", "0", "1", "3", cache=tmp_path)
    assert code == 0
    assert text.split() == ["H", "z^2"]


def test_universal_json_is_deterministic(tmp_path):
    a = run("--json", "universal", "1", "2", "1", cache=tmp_path / "a")[1]
    b = run("--json", "universal", "1", "2", "1", cache=tmp_path / "b")[1]
    assert a == b
    obj = json.loads(a)
    assert obj["schema"] == "hitchin-count/v1"
    assert list(obj["poly"]) == ["vars", "terms"]


def test_cache_roundtrip(tmp_path):
    code, first = run("--json", "universal", "2", "2", "1", cache=tmp_path)
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    cache = PolyCache(tmp_path)
    hit = cache.get(cache_key("H", 2, 2, 1))
    assert hit == LaurentPoly.from_json_obj(json.loads(first)["poly"])
    code, again = run("--json", "--verify-cache", "universal", "2", "2", "1", cache=tmp_path)
    assert code == 0 and again == first


def test_tampered_cache_is_ignored(tmp_path):
    run("universal", "1", "1", "1", cache=tmp_path)
    (path,) = tmp_path.glob("*.json")
    obj = json.loads(path.read_text())
    obj["value"]["terms"][0]["c"] = "99"
    path.write_text(json.dumps(obj))
    code, text = run("universal", "1", "1", "1", cache=tmp_path)
    assert code == 0 and "99" not in text


def test_cache_env_override(tmp_path, monkeypatch):
    monkeypatch.setenv("HITCHIN_COUNT_CACHE", str(tmp_path))
    assert PolyCache().root == tmp_path


def test_euler_prints_both_paths(tmp_path):
    code, text = run("euler", "2", "2", "2", "1", cache=tmp_path)
    assert code == 0
    assert text.count("-32") == 2


def test_poincare_json(tmp_path):
    code, text = run("--json", "poincare", "1", "2", "1", "1", cache=tmp_path)
    assert json.loads(text)["betti"] == [0, 0, 0, 0, 4, 0, 1]


def test_twisted(tmp_path):
    code, text = run("--json", "twisted", "1", "2", "1", "2", "3", cache=tmp_path)
    obj = json.loads(text)
    assert obj["e_mod_d"] == 1 and obj["poly"]["terms"] == []


def test_counts(tmp_path):
    weil = str(DATA.joinpath("weil_elliptic_q2.json"))
    code, text = run("--json", "count-m", weil, "1", "0", "1", "1", cache=tmp_path)
    assert json.loads(text)["count"] == 6
    weil3 = str(DATA.joinpath("weil_elliptic_q3.json"))
    cover = str(DATA.joinpath("cover_elliptic_q3_n2.json"))
    code, text = run("--json", "count-n", weil3, cover, "2", "1", "2", "1", cache=tmp_path)
    obj = json.loads(text)
    assert obj["fixed_determinant"] == 9 * obj["trace_zero"]
    code, text = run("--json", "--prec-bits", "128", "compare", weil3, cover, "2", "1", "2", "1", cache=tmp_path)
    assert code == 0 and json.loads(text)["ok"]


def test_oracle(tmp_path):
    code, text = run("oracle", "p1", "--q", "2", "--n", "2", "--e", "1", "--degD", "1", cache=tmp_path)
    assert code == 0 and text.splitlines()[0].split() == ["count", "32"]
    code, text = run("--json", "oracle", "p1", "--q", "2", "--n", "1", "--e", "0", "--degD", "1", cache=tmp_path)
    assert json.loads(text)["count"] == 4


def test_validation_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"q": 2, "g": 1, "zeta_numerator": [1, 3, 2]}))
    code, text = run("--json", "count-m", str(bad), "1", "0", "1", "1", cache=tmp_path)
    assert code == 1
    assert json.loads(text)["error"]["type"] == "RootModulusViolated"
    code, text = run("--json", "twisted", "1", "3", "1", "2", "0", cache=tmp_path)
    assert code == 1
    code, _ = run("poincare", "1", "2", "1", "2", cache=tmp_path)
    assert code == 1


def test_invariant_violation_exit_code(tmp_path, monkeypatch):
    import hitchin_count.cli as cli
    from hitchin_count.universal import InvariantViolation

    def boom(*a, **k):
        raise InvariantViolation("forced")

    monkeypatch.setattr(cli, "poincare_polynomial", boom)
    code, text = run("--json", "euler", "1", "2", "1", "1", cache=tmp_path)
    assert code == 2
    assert json.loads(text)["error"]["type"] == "InvariantViolation"


def test_selfcheck_quick(tmp_path):
    code, text = run("selfcheck", "--level", "quick", cache=tmp_path)
    assert code == 0
    assert text.count("PASS") == 10


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run(
        [sys.executable, "-m", "hitchin_count", "universal", "0", "1", "3", "--help"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert "usage" in res.stdout
