import io
import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from brouwer import bars, cantor, nbhd, trees
from brouwer.canonical import dumps
from brouwer.cli import DEFAULT_BRANCHING, DEFAULT_DEPTH, DEFAULT_FUEL, VERBS, build_parser, run

HERE = Path(__file__).parent
CASES = json.loads((HERE / "golden" / "cases.json").read_text())
BROKEN = {"truncated.json", "noncanonical-tree.json"}
CANONICAL_FIXTURES = sorted(p.name for p in (HERE / "fixtures").glob("*.json") if p.name not in BROKEN)


def invoke(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


@pytest.fixture(autouse=True)
def in_tests_dir(monkeypatch):
    monkeypatch.chdir(HERE)


def expected_exit(body: str) -> int:
    err = json.loads(body).get("error") if body.startswith("{") else None
    return 0 if err is None else 2 if err["kind"] == "MalformedInput" else 1


@pytest.mark.parametrize("case", CASES, ids=[c["name"] for c in CASES])
def test_golden(case):
    want = (HERE / "golden" / f"{case['name']}.out").read_text()
    code, got = invoke(case["argv"])
    assert got == want
    assert code == expected_exit(want)


def test_golden_cases_cover_every_verb():
    assert {c["argv"][0] for c in CASES} == set(VERBS)
    assert len(CASES) == 12


@pytest.mark.parametrize("name", CANONICAL_FIXTURES)
def test_roundtrip_is_identity_on_canonical_files(name):
    code, out = invoke(["roundtrip", f"fixtures/{name}"])
    assert code == 0
    assert out == (HERE / "fixtures" / name).read_text()


def test_roundtrip_canonicalizes(tmp_path):
    code, out = invoke(["roundtrip", "fixtures/noncanonical-tree.json"])
    assert code == 0
    assert out == (HERE / "fixtures" / "t1.json").read_text()
    again = tmp_path / "again.json"
    again.write_text(out)
    assert invoke(["roundtrip", str(again)]) == (0, out)


def test_truncated_json_reports_position():
    code, out = invoke(["roundtrip", "fixtures/truncated.json"])
    assert code == 2
    err = json.loads(out)["error"]
    assert err["kind"] == "MalformedInput"
    assert (err["line"], err["column"], err["pos"]) == (1, 36, 35)


def test_cli_examples_inline():
    stream = '{"prefix":[],"period":[0]}'
    assert invoke(["eval", "--tree", "fixtures/t1.json", "--stream", stream]) == (0, '{"consumed":1,"value":7}\n')
    assert invoke(["fan", "--pred", '{"rule":"contains1-or-len4"}', "--depth", "10"]) == (0, '{"bound":4}\n')
    code, out = invoke(["demo-llpo", "--alpha", "[0,0,0,0]", "--beta", "[0,0,0,1]"])
    assert out == '{"bar":true,"disjunct":"Left","horizon":4,"inductive":true,"subset":true}\n'


def test_domain_errors_exit_one():
    code, out = invoke(["synthesize", "--delta", '{"table":{},"default":{"kind":"affine","slope":1,"intercept":0}}',
                        "--branching", "2", "--fuel", "5"])
    assert code == 1
    assert json.loads(out)["error"]["kind"] == "FuelExhausted"
    code, out = invoke(["demo-llpo", "--alpha", "[1]", "--beta", "[1]"])
    assert code == 1 and json.loads(out)["error"]["kind"] == "PremiseViolated"


@pytest.mark.parametrize("argv", [
    ["eval", "--tree", '{"leaf":-1}', "--stream", "fixtures/zeros.json"],
    ["eval", "--tree", "fixtures/t1.json", "--stream", '{"prefix":[],"period":[]}'],
    ["eval", "--tree", "no-such-file.json", "--stream", "fixtures/zeros.json"],
    ["convert", "--table", '{"arity":1,"outputs":{"0":1}}'],
    ["fan", "--pred", '{"rule":"len"}'],
    ["check-k0", "--gamma", '{"table":{"x":1},"default":{"kind":"const","value":0}}'],
    ["eval-k1", "--delta", '{"fn":"nope"}', "--stream", "fixtures/zeros.json"],
    ["demo-llpo", "--alpha", "[0,0]", "--beta", "[0]"],
    ["trim", "--tree", '{"node":{"children":{"01":{"leaf":1}},"default":{"leaf":0}}}'],
    ["roundtrip", "fixtures"],
    ["eval", "--tree", '{"leaf":99999999999999999999}', "--stream", "fixtures/zeros.json"],
])
def test_malformed_input_exits_two(argv):
    code, out = invoke(argv)
    assert code == 2
    assert json.loads(out)["error"]["kind"] == "MalformedInput"


@settings(max_examples=200)
@given(st.text(max_size=40))
def test_never_panics_on_garbage(text):
    for argv in (["roundtrip", "[" + text], ["eval", "--tree", "{" + text, "--stream", "fixtures/zeros.json"]):
        code, out = invoke(argv)
        assert code in (0, 1, 2)
        assert out.endswith("\n")
        assert ("error" in json.loads(out)) == (code != 0)


@settings(max_examples=100)
@given(st.recursive(
    st.none() | st.booleans() | st.integers() | st.text(max_size=5),
    lambda inner: st.lists(inner, max_size=3) | st.dictionaries(st.text(max_size=4), inner, max_size=3),
    max_leaves=10,
))
def test_never_panics_on_arbitrary_json(obj):
    code, out = invoke(["roundtrip", json.dumps(obj) if isinstance(obj, (list, dict)) else "[" + json.dumps(obj) + "]"])
    assert code in (0, 2)
    json.loads(out)


def test_determinism():
    for case in CASES:
        assert invoke(case["argv"]) == invoke(case["argv"])


def test_each_verb_maps_to_one_operation():
    ops = [op for _, op in VERBS.values()]
    assert len(set(ops)) == len(ops)
    modules = (trees, nbhd, cantor, bars)
    for op in ops:
        assert any(getattr(m, op.__name__, None) is op for m in modules)


def test_documented_defaults():
    assert (DEFAULT_FUEL, DEFAULT_DEPTH, DEFAULT_BRANCHING) == (32, 6, 4)
    args = build_parser().parse_args(["synthesize", "--delta", "x"])
    assert (args.fuel, args.depth, args.branching) == (32, 6, 4)


def test_canonical_key_order():
    assert dumps({"b": 1, "a": [1, {"10": 0, "2": 1}]}) == '{"a":[1,{"2":1,"10":0}],"b":1}\n'
    assert dumps({"1,0": 1, "": 0, "0,5": 2, "0": 3}) == '{"":0,"0":3,"0,5":2,"1,0":1}\n'


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "brouwer", "fan", "--pred", '{"rule":"len3"}', "--depth", "5"],
        capture_output=True, text=True, check=False,
    )
    assert (proc.returncode, proc.stdout) == (0, '{"bound":3}\n')
