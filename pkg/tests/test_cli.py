import io
import json
import logging
import subprocess
import sys

import pytest

from cartanstab import __version__
from cartanstab.cli import Cache, RunConfig, main, run


def run_cfg(**kw):
    buf = io.StringIO()
    code = run(RunConfig(**kw), out=buf)
    return code, buf.getvalue()


def test_classify_json_seven_classes():
    code, out = run_cfg(command="classify", algebra="so-even", rank=4, format="json")
    assert code == 0
    data = json.loads(out)
    assert data["algebra"] == "so-even" and len(data["classes"]) == 7
    assert set(data["classes"][0]) >= {"id", "roots", "vector_part_dim", "span"}


def test_stabilizer_sp3():
    code, out = run_cfg(command="stabilizer", algebra="sp", rank=3, format="json")
    data = json.loads(out)
    assert code == 0 and data["order"] == 2 and data["verdict"] == "MATCH"
    assert {"perm": [1, 2, 3], "signs": [-1, -1, -1]} in data["elements"]
    assert sorted(data["family_used"]) == list(range(1, 7))


def test_stabilizer_superset_exits_zero():
    code, out = run_cfg(command="stabilizer", algebra="so-even", rank=4, format="json")
    assert code == 0 and json.loads(out)["verdict"] == "SUPERSET"


def test_stabilizer_uncatalogued_rank():
    code, out = run_cfg(command="stabilizer", algebra="so-even", rank=3, format="json")
    assert code == 0 and json.loads(out)["verdict"] == "UNCATALOGUED"


def test_verify_sl2():
    code, out = run_cfg(command="verify", algebra="sl", rank=2, format="json")
    data = json.loads(out)
    assert code == 0
    assert len(data["cartans"]) == 2 and all(c["is_cartan"] for c in data["cartans"])
    assert data["k_elements"][1]["matrix"] == [["0", "1"], ["-1", "0"]]
    assert all(k["fixes_all"] for k in data["k_elements"])


def test_verify_text():
    code, out = run_cfg(command="verify", algebra="sp", rank=2)
    assert code == 0 and out.strip().endswith("OK")


def test_table_consistent_with_single_commands():
    code, out = run_cfg(command="table", algebra="so-odd", rank=None, max_rank=4, format="json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["rank"] for r in rows] == [1, 2, 3, 4]
    for r in rows:
        _, c = run_cfg(command="classify", algebra="so-odd", rank=r["rank"], format="json")
        _, s = run_cfg(command="stabilizer", algebra="so-odd", rank=r["rank"], format="json")
        assert r["classes"] == len(json.loads(c)["classes"])
        assert r["stabilizer_order"] == json.loads(s)["order"]
        assert r["verdict"] == json.loads(s)["verdict"]


def test_table_text():
    code, out = run_cfg(command="table", algebra="sp", rank=None, max_rank=3)
    assert code == 0 and "MATCH" in out and len(out.strip().splitlines()) == 5


def test_g2_commands():
    code, out = run_cfg(command="stabilizer", algebra="g2", rank=None, format="json")
    assert code == 0 and json.loads(out)["order"] == 2
    code, _ = run_cfg(command="verify", algebra="g2", rank=None)
    assert code == 2


def test_guard_exit_code(capsys):
    code, _ = run_cfg(command="classify", algebra="sp", rank=12)
    assert code == 2
    assert "enumeration limit" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["classify", "--algebra", "e8", "--rank", "8"],
    ["bogus", "--algebra", "sp", "--rank", "2"],
    ["classify", "--algebra", "sp"],
    ["classify", "--algebra", "sp", "--rank", "two"],
])
def test_bad_flags_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_invalid_rank_exit_2():
    assert main(["classify", "--algebra", "sl", "--rank", "1"]) == 2


def test_threads_env(monkeypatch):
    monkeypatch.setenv("CARTANSTAB_THREADS", "-3")
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--algebra", "sp", "--rank", "2"])
    assert exc.value.code == 2
    monkeypatch.setenv("CARTANSTAB_THREADS", "4")
    assert main(["classify", "--algebra", "sp", "--rank", "2"]) == 0


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "cartanstab", "stabilizer", "--algebra", "so-odd", "--rank", "3", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_cache_round_trip(tmp_path):
    path = tmp_path / "sub" / "cache.jsonl"
    cache = Cache(path)
    assert cache.lookup("k") is None
    payload = json.dumps({"x": [1, "1/2"]}, indent=2)
    cache.store("k", payload, 0)
    assert path.exists()
    again = Cache(path)
    assert again.lookup("k") == (payload, 0)


def test_cache_version_mismatch(tmp_path):
    path = tmp_path / "c.jsonl"
    Cache(path, engine_version="0.0.1").store("k", "old", 0)
    assert Cache(path).lookup("k") is None
    assert Cache(path, engine_version="0.0.1").lookup("k") == ("old", 0)


def test_corrupted_cache_is_ignored(tmp_path, caplog):
    path = tmp_path / "c.jsonl"
    path.write_text("{not json\n" + json.dumps({"version": 1, "key": "k", "engine": __version__,
                                                 "exit_code": 0, "payload": "hi"}) + "\n")
    with caplog.at_level(logging.WARNING, logger="cartanstab"):
        cache = Cache(path)
    assert "corrupted" in caplog.text
    assert cache.lookup("k") == ("hi", 0)


def test_run_uses_and_fills_cache(tmp_path):
    path = tmp_path / "c.jsonl"
    code1, out1 = run_cfg(command="classify", algebra="sp", rank=3, format="json", cache_path=str(path))
    assert len(path.read_text().splitlines()) == 1
    code2, out2 = run_cfg(command="classify", algebra="sp", rank=3, format="json", cache_path=str(path))
    assert (code1, out1) == (code2, out2)
    # a served hit really comes from the file
    entry = json.loads(path.read_text())
    entry["payload"] = "sentinel"
    path.write_text(json.dumps(entry) + "\n")
    _, out3 = run_cfg(command="classify", algebra="sp", rank=3, format="json", cache_path=str(path))
    assert out3 == "sentinel\n"


def test_unwritable_cache_does_not_crash(tmp_path, caplog):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with caplog.at_level(logging.WARNING, logger="cartanstab"):
        code, out = run_cfg(command="classify", algebra="sl", rank=3, cache_path=str(blocker / "c.jsonl"))
    assert code == 0 and "2 classes" in out
    assert "cannot" in caplog.text
