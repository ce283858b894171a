import gzip
import io
import json
import subprocess
import sys

import pytest

from germcq.cli import main
from germcq.cq_generic import catalog_descriptors
from germcq.germ import ConstraintGerm, NormalFormDescriptor

WRIGHT = {"n": 2, "g": ["(x1 - 1/3)^2 + x2^2 - 1/9", "(x1 - 2/3)^2 + x2^2 - 4/9"]}
T3_MIXED = {"table": "T3", "type": "(4)", "n": 4, "eps": {"3": 1, "4": -1}, "delta": {"1": 1, "2": 1}, "alpha": {"1,2": 0}}
T1_CUSP = {"table": "T1", "type": "(1,3)", "n": 2, "eps": {"2": 1}}


def run(capsys, monkeypatch, argv, payload=None):
    if payload is not None:
        text = payload if isinstance(payload, str) else json.dumps(payload)
        monkeypatch.setattr(sys, "stdin", io.StringIO(text))
    code = main(argv)
    out = capsys.readouterr().out
    docs = [json.loads(line) for line in out.splitlines()]
    assert all(doc["v"] == 1 for doc in docs)
    return code, docs


def test_check_wright(capsys, monkeypatch):
    code, [doc] = run(capsys, monkeypatch, ["check"], WRIGHT)
    assert code == 0
    assert (doc["licq"], doc["mfcq"], doc["witness"]) == (False, True, [1, 0])
    assert doc["acq"].startswith("not decidable directly")


def test_check_descriptor(capsys, monkeypatch):
    code, [doc] = run(capsys, monkeypatch, ["check"], T3_MIXED)
    assert code == 0 and doc["gcq"] is True and doc["acq"] is False and doc["branch"].startswith("T3(4)")
    assert doc["direct"] == {"licq": False, "mfcq": False}


def test_check_wrapped_descriptor(capsys, monkeypatch):
    code, [doc] = run(capsys, monkeypatch, ["check"], {"descriptor": T3_MIXED})
    assert code == 0 and doc["gcq"] is True


def test_check_infeasible(capsys, monkeypatch):
    code, [doc] = run(capsys, monkeypatch, ["check"], {"n": 1, "g": ["x1 + 1"]})
    assert code == 0 and doc["verdict"] == "infeasible"


def test_check_from_file(capsys, tmp_path):
    path = tmp_path / "germ.json"
    path.write_text(json.dumps({"n": 1, "g": ["x1", "2*x1"]}))
    assert main(["check", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["witness"] == [-1]


@pytest.mark.parametrize(
    "payload,field",
    [
        ('{"n": 2, "g": [', None),
        ({"n": 2, "g": ["x1 +* 2"]}, "g[0]"),
        ({"g": ["x1"]}, "n"),
        ({"n": 2, "g": "x1"}, "g"),
        ({"n": 1, "h": ["x1 + 1"]}, None),
        ({"table": "T1", "type": "(1,6)", "n": 2, "eps": {"2": 1}}, None),
        ({"n": 1, "g": ["x1"], "table": "T1"}, None),
        ({"germ": {"n": 1}, "descriptor": {}}, None),
        ([1, 2], None),
    ],
)
def test_input_errors(capsys, monkeypatch, payload, field):
    code, [doc] = run(capsys, monkeypatch, ["check"], payload)
    assert code == 1 and "message" in doc["error"]
    if field is not None:
        assert doc["error"]["field"] == field


def test_json_error_has_position(capsys, monkeypatch):
    _, [doc] = run(capsys, monkeypatch, ["check"], '{\n  "n": 2,\n  "g": [x1]\n}')
    assert doc["error"]["line"] == 3 and doc["error"]["column"] > 1


def test_catalog_t1(capsys, monkeypatch):
    code, docs = run(capsys, monkeypatch, ["catalog", "--bounds", "n=2,q=2", "--table", "T1"])
    assert code == 0
    assert {d["descriptor"]["type"] for d in docs} == {"(1,k)"}
    k2 = [d for d in docs if d["descriptor"].get("k") == 2]
    assert len(k2) == 2


def test_catalog_hierarchy_and_order(capsys, monkeypatch):
    code, docs = run(capsys, monkeypatch, ["catalog", "--bounds", "n=3"])
    assert code == 0 and len(docs) == len(catalog_descriptors(3, 4))
    for d in docs:
        assert (not d["licq"] or d["mfcq"]) and (not d["mfcq"] or d["acq"]) and (not d["acq"] or d["gcq"])
    parsed = [NormalFormDescriptor.from_json(d["descriptor"]) for d in docs]
    assert parsed == sorted(parsed)


def test_catalog_gzip(capsys, tmp_path):
    path = tmp_path / "cat.jsonl.gz"
    assert main(["catalog", "--bounds", "n=2,q=1", "--output", str(path)]) == 0
    with gzip.open(path, "rt") as fh:
        lines = [json.loads(l) for l in fh]
    assert lines and capsys.readouterr().out == ""


@pytest.mark.parametrize("bounds", ["q=2", "n=x", "m=3", "n=9"])
def test_catalog_bad_bounds(capsys, bounds):
    assert main(["catalog", "--bounds", bounds]) == 1


def test_oracle_agreement(capsys, monkeypatch):
    code, [doc] = run(capsys, monkeypatch, ["oracle", "--seed", "0", "--budget", "1500"], T1_CUSP)
    assert code == 0 and doc["report"]["agree"] and doc["candidate"] == "tangent"


def test_oracle_germ_against_linearized_cone(capsys, monkeypatch):
    code, [doc] = run(capsys, monkeypatch, ["oracle", "--seed", "1", "--budget", "1500"], {"n": 2, "h": ["x1^3 + x2^2"]})
    assert code == 2 and doc["candidate"] == "linearized"
    code, _ = run(capsys, monkeypatch, ["oracle", "--seed", "1", "--budget", "1500"], {"n": 2, "g": ["-x1", "-x1^2 - x2^2"]})
    assert code == 0


def test_oracle_requires_seed(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(T1_CUSP)))
    with pytest.raises(SystemExit) as exc:
        main(["oracle"])
    assert exc.value.code == 1


def test_codim(capsys, monkeypatch):
    code, [doc] = run(capsys, monkeypatch, ["codim"], {"n": 1, "g": ["x1", "2*x1"]})
    assert code == 0 and doc["value"] == 1
    code, [doc] = run(capsys, monkeypatch, ["codim", "--kmax", "4"], {"n": 2, "g": ["x1^2*x2^2"]})
    assert code == 0 and doc["verdict"] == "GROWING"


def test_codim_undetermined(capsys, monkeypatch):
    # x1^4 settles at order 2, so kmax = 3 sees 2, 3, 3
    code, [doc] = run(capsys, monkeypatch, ["codim", "--kmax", "3"], {"n": 1, "g": ["x1^4"]})
    assert code == 3 and doc["verdict"] == "UNDETERMINED"


def test_cones_descriptor(capsys, monkeypatch):
    code, [doc] = run(capsys, monkeypatch, ["cones"], T1_CUSP)
    assert code == 0
    assert doc["tangent_polyhedral"]["rays"] == [[-1, 0]]
    assert doc["tangent_polar"]["le"] == [[-1, 0]]
    assert doc["linearized"]["lineality"] == [[1, 0], [0, 1]]
    assert doc["acq_from_cones"] is False


def test_cones_germ(capsys, monkeypatch):
    code, [doc] = run(capsys, monkeypatch, ["cones"], {"n": 2, "g": ["x1", "x2"]})
    assert code == 0 and sorted(doc["linearized"]["rays"]) == [[-1, 0], [0, -1]]
    assert isinstance(doc["tangent"], str)


def test_reports_round_trip(capsys, monkeypatch):
    _, [doc] = run(capsys, monkeypatch, ["check"], T3_MIXED)
    assert NormalFormDescriptor.from_json(doc["descriptor"]) == NormalFormDescriptor.from_json(T3_MIXED)
    _, [doc] = run(capsys, monkeypatch, ["check"], WRIGHT)
    assert ConstraintGerm.from_json(doc["germ"]) == ConstraintGerm.from_json(WRIGHT)


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "germcq", "codim", "--kmax", "3"],
        input=json.dumps({"n": 1, "g": ["x1"]}), capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == 0
