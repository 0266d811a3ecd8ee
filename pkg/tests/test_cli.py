"""Command-line behavior: outputs, exit codes, caching, determinism."""

import json

import pytest

from framelink.braids import parse_braid
from framelink.cli import _cache_key, cache_get, cache_put, main
from framelink.invariants import homflypt


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_jones_empty_braid_is_one(capsys):
    code, out, _ = run(capsys, "jones", "--braid", "")
    assert code == 0
    assert out == "1\n"


def test_trefoil_invariant(capsys):
    code, out, _ = run(capsys, "invariant", "--family", "classical",
                       "--d", "1", "--subset", "0", "--braid", "s1 s1 s1")
    assert code == 0
    expected = homflypt(parse_braid("s1 s1 s1")).value.render()
    assert out.strip() == expected


def test_jones_trefoil_value(capsys):
    code, out, _ = run(capsys, "jones", "--braid", "s1 s1 s1")
    assert code == 0
    assert out.strip() == "-u^4 + u^3 + u"


def test_framed_jones_matches_jones_at_d1(capsys):
    code, out, _ = run(capsys, "framed-jones", "--d", "1", "--subset", "0",
                       "--braid", "s1 s1 s1")
    assert code == 0
    assert out.strip() == "-u^4 + u^3 + u"


def test_esystem_listing(capsys):
    code, out, _ = run(capsys, "esystem", "--d", "2")
    assert code == 0
    assert "3 solution(s)" in out
    assert "D={0,1}  x = (1, 0)" in out

    code, out, _ = run(capsys, "esystem", "--d", "2", "--subset", "0,1", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec == {"d": 2, "solutions": [{"D": [0, 1], "x": ["1", "0"]}]}


def test_invariant_json_record(capsys):
    code, out, _ = run(capsys, "homflypt", "--braid", "s1 s1 s1", "--json")
    assert code == 0
    rec = json.loads(out)
    assert rec["family"] == "classical" and rec["d"] == 1 and rec["D"] == [0]
    assert rec["n"] == 2 and rec["epsilon"] == 3


def test_verify_relations(capsys):
    code, out, _ = run(capsys, "verify", "--what", "relations", "--d", "2")
    assert code == 0
    assert "all checks passed" in out


def test_verify_markov_deterministic(capsys):
    argv = ("verify", "--what", "markov", "--d", "1", "--samples", "2",
            "--seed", "7")
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    assert "all checks passed" in out1


def test_verify_quotients_d1(capsys):
    code, out, _ = run(capsys, "verify", "--what", "quotients", "--d", "1")
    assert code == 0
    assert "all checks passed" in out


def test_verify_skein_small(capsys):
    code, out, _ = run(capsys, "verify", "--what", "skein", "--d", "1",
                       "--samples", "1", "--seed", "5")
    assert code == 0


def test_compare_exit_codes(capsys):
    code, out, _ = run(capsys, "compare", "--braid-a", "s1 s1 s1",
                       "--braid-b", "-s1 s1 s1 s1 s1")
    assert code == 0 and out.strip() == "equal"
    code, out, _ = run(capsys, "compare", "--braid-a", "s1 s1 s1",
                       "--braid-b", "")
    assert code == 1 and out.strip() == "different"


def test_batch_order_and_shape(tmp_path, capsys):
    src = tmp_path / "braids.txt"
    src.write_text("s1 s1 s1\n\ns1 -s2 s1 -s2\n")
    code, out, _ = run(capsys, "batch", "--file", str(src))
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    records = [json.loads(line) for line in lines]
    assert [r["braid"] for r in records] == ["s1 s1 s1", "", "s1 -s2 s1 -s2"]
    assert records[1]["value"] == "1"


def test_cache_roundtrip(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    key = _cache_key("invariant", "classical", 1, (0,), "s1 s1 s1")
    assert cache_get(path, key) is None
    cache_put(path, key, {"value": "v"})
    assert cache_get(path, key) == {"value": "v"}
    bumped = dict(key, tool="9.9.9")
    assert cache_get(path, bumped) is None


def test_cache_hit_renders_identically(tmp_path, capsys):
    path = str(tmp_path / "cache.jsonl")
    argv = ("homflypt", "--braid", "s1 s1 s1", "--cache", path)
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    # the second run was a hit: no second record was appended
    assert sum(1 for _ in open(path)) == 1


def test_cache_write_failure_is_not_fatal(tmp_path, capsys):
    code, out, err = run(capsys, "jones", "--braid", "s1 s1 s1",
                         "--cache", str(tmp_path))
    assert code == 0
    assert out.strip() == "-u^4 + u^3 + u"
    assert "cache" in err


def test_usage_errors(capsys):
    code, _, err = run(capsys, "invariant", "--family", "classical",
                       "--d", "1", "--braid", "q9")
    assert code == 2 and "q9" in err
    code, _, err = run(capsys, "invariant", "--family", "classical",
                       "--d", "1", "--subset", "", "--braid", "s1")
    assert code == 2
    code, _, err = run(capsys, "esystem", "--d", "2", "--subset", "0,0")
    assert code == 2
    # singular letters are not classical links
    code, _, err = run(capsys, "homflypt", "--braid", "x1")
    assert code == 2


def test_missing_argument_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["jones"])
    assert exc.value.code == 2
