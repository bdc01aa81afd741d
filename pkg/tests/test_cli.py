import json

import pytest
from click.testing import CliRunner

from hyperlift.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_classify_count():
    r = run("classify", "--case", "anti", "--count")
    assert r.exit_code == 0 and r.output.strip() == "221"
    assert run("classify", "--case", "sym", "--count").output.strip() == "17"
    assert run("classify", "--case", "sym", "--hyperbolizable", "--count").output.strip() == "12"


def test_paramodular():
    r = run("paramodular", "--a", "1,1,1,1,1,1")
    assert r.exit_code == 0
    out = json.loads(r.output)
    assert out["N"] == 122 and out["q_order"] == "5" and out["nonzero"]


def test_delta():
    r = run("delta", "D12(2)")
    assert r.exit_code == 0 and r.output.strip() == "6"


def test_embed_exit_codes():
    assert run("embed", "4A1", "D4").exit_code == 0
    assert run("embed", "A1", "A1(2)").exit_code == 1


def test_usage_errors():
    assert run("classify", "--case", "both").exit_code == 2
    assert run("suite", "nope").exit_code == 2
    assert run("delta", "Q7").exit_code == 2
    assert run("paramodular").exit_code == 2


def test_deterministic_output():
    a = run("theta-block", "A2,9", "--q-order", "2").output
    b = run("theta-block", "A2,9", "--q-order", "2").output
    assert a == b and json.loads(a)["q_order"] == "2"


def test_char_identity():
    r = run("char-identity", "th72-a116")
    assert r.exit_code == 0 and json.loads(r.output)["ok"]


def test_reflect():
    r = run("reflect", "A2,9")
    assert r.exit_code == 0 and json.loads(r.output)["valid"]


def test_lift_embeds_orders():
    r = run("lift", "A1,16", "--xi-order", "1", "--q-order", "2")
    assert r.exit_code == 0
    out = json.loads(r.output)
    assert out["agree"] and out["xi_order"] == 1 and out["q_order"] == "2"


def test_phi():
    r = run("phi", "A1,16", "--q-order", "1")
    assert r.exit_code == 0 and json.loads(r.output)["series"]["order"] == "1"


@pytest.mark.parametrize("name", ["classification", "table8", "identities"])
def test_suites(name):
    r = run("suite", name)
    assert r.exit_code == 0 and json.loads(r.output)["pass"]


def test_fixture_env(monkeypatch, tmp_path):
    monkeypatch.setenv("HYPERLIFT_FIXTURES", str(tmp_path))
    r = run("suite", "table8")
    assert r.exit_code == 2 and "missing fixture" in r.output
