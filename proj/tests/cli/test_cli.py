import json
import os
import pathlib
import subprocess

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

ROOT = pathlib.Path(__file__).resolve().parents[2]
FOMC = os.environ.get("FOMC", str(ROOT / "build" / "tools" / "fomc"))
DATA = ROOT / "data"
SCHEMAS = ROOT / "schemas"


def _registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources)


REGISTRY = _registry()


def validate(doc, schema):
    root = json.loads((SCHEMAS / schema).read_text())
    Draft202012Validator(root, registry=REGISTRY).validate(doc)


def run(*args, stdin=None):
    return subprocess.run([FOMC, *map(str, args)], input=stdin, capture_output=True, text=True, timeout=120)


def run_json(*args):
    r = run(*args, "--json")
    return r.returncode, json.loads(r.stdout)


def test_eval_true():
    r = run("eval", "--structure", DATA / "k2.fms", "--sentence", DATA / "phi.fml")
    assert r.returncode == 0
    assert r.stdout == "true\n"


def test_eval_false_exit_one():
    r = run("eval", "--structure", DATA / "k2uk1.fms", "--sentence", DATA / "phi.fml")
    assert r.returncode == 1
    assert r.stdout == "false\n"


def test_eval_stdin():
    r = run("eval", "--structure", DATA / "k2.fms", "--sentence", "-", stdin=(DATA / "phi.fml").read_text())
    assert r.returncode == 0


def test_eval_json_with_trace():
    code, doc = run_json("eval", "--structure", DATA / "k2uk1.fms", "--sentence", DATA / "phi.fml", "--trace")
    assert code == 1
    validate(doc, "eval.schema.json")
    assert doc["value"] is False
    assert "trace" in doc


def test_eval_relativized():
    r = run("eval", "--structure", DATA / "k2uk1.fms", "--sentence", DATA / "phi.fml",
            "--relativize", "U={0,1}", "X={0,1}")
    assert r.returncode == 0


def test_check_relativisation_needs_seed():
    r = run("eval", "--structure", DATA / "k2uk1.fms", "--check-relativisation", "{2}", "{0,1,2}")
    assert r.returncode == 2
    assert "seed" in r.stderr


def test_check_relativisation_clean_for_ux_pair():
    code, doc = run_json("eval", "--structure", DATA / "k2uk1.fms",
                         "--check-relativisation", "{2}", "{0,1,2}", "--seed", "11")
    assert code == 0
    validate(doc, "relativisation.schema.json")
    assert doc["samples"] == 500
    assert doc["failures"] == []


def test_classify_text():
    r = run("classify", "--structure", DATA / "k2uk1.fms", "--fragment", "pos-eqfree")
    assert r.returncode == 0
    assert r.stdout.splitlines()[0] == "NP-complete"
    assert "a-shop: 0->{0};1->{1};2->{0,1,2}" in r.stdout


@pytest.mark.parametrize("fragment", ["pp", "pp-eq", "pp-neq", "pp-disj", "pp-disj-eq", "pp-disj-neq", "qcsp",
                                      "qcsp-eq", "qcsp-neq", "pos-eqfree", "pos-fo-eq", "pos-fo-neq", "eqfree-neg",
                                      "fo", "dual:qcsp", "dual:pos-eqfree"])
def test_classify_json_every_key(fragment):
    code, doc = run_json("classify", "--structure", DATA / "k2uk1.fms", "--fragment", fragment)
    assert code == 0
    validate(doc, "verdict.schema.json")


def test_classify_bad_key():
    r = run("classify", "--structure", DATA / "k2.fms", "--fragment", "nonsense")
    assert r.returncode == 2


@pytest.mark.parametrize("kind", ["ux", "classical", "eqfree"])
def test_core_json(kind):
    code, doc = run_json("core", "--structure", DATA / "k2uk1.fms", "--kind", kind)
    assert code == 0
    validate(doc, "core.schema.json")


def test_core_ux_sets():
    code, doc = run_json("core", "--structure", DATA / "k2uk1.fms")
    assert (doc["u"], doc["x"]) == ([2], [0, 1])


def test_shops_json():
    code, doc = run_json("shops", "--structure", DATA / "k2.fms")
    assert code == 0
    validate(doc, "shops.schema.json")
    assert doc["shops"] == ["0->{0};1->{1}", "0->{1};1->{0}"]
    assert doc["tag"] == "Pspace-complete"


def test_census_n2():
    r = run("dsm-census", "--n", "2")
    assert r.returncode == 0
    assert r.stdout == "5\n"


def test_census_json():
    code, doc = run_json("dsm-census", "--n", "2")
    validate(doc, "census.schema.json")
    assert doc["count"] == 5
    assert len(doc["covers"]) == 6


def test_census_export():
    r = run("dsm-census", "--n", "2", "--export")
    lines = r.stdout.splitlines()
    assert sum(1 for l in lines if l.startswith("node ")) == 5
    assert sum(1 for l in lines if " covers " in l) == 6


def test_census_limit_exit_three():
    r = run("dsm-census", "--n", "4")
    assert r.returncode == 3


@pytest.mark.parametrize("name,params", [("Kn", "3"), ("KnReflexive", "2"), ("KompleteBipartite", "2,3"),
                                         ("BNAE", ""), ("OneElement", ""), ("G", "2,2,1,3"), ("Dhat", "2,2"),
                                         ("GV", "1")])
def test_gadget_json(name, params):
    args = ["gadget", "--name", name]
    if params:
        args += ["--params", params]
    code, doc = run_json(*args)
    assert code == 0
    validate(doc, "structure.schema.json")


def test_gadget_sg_reads_graph():
    code, doc = run_json("gadget", "--name", "SG", "--structure", DATA / "k2.fms")
    assert code == 0
    validate(doc, "structure.schema.json")


def test_gadget_text_round_trips_through_eval():
    g = run("gadget", "--name", "Kn", "--params", "2")
    r = run("eval", "--structure", "-", "--sentence", DATA / "phi.fml", stdin=g.stdout)
    assert r.returncode == 0


def test_gadget_bad_params():
    assert run("gadget", "--name", "G", "--params", "2,2").returncode == 2


@pytest.mark.parametrize("target", ["K2", "G", "Dhat"])
def test_reduce_json(target, tmp_path):
    nae = tmp_path / "nae.fml"
    nae.write_text("forall x. exists y. exists z. NAE(x,y,z)\n")
    code, doc = run_json("reduce", "--sentence", nae, "--name", target)
    assert code == 0
    validate(doc, "reduce.schema.json")


def test_reduce_rejects_non_nae():
    assert run("reduce", "--sentence", DATA / "phi.fml").returncode == 2


@pytest.mark.parametrize("fragment", ["pp", "pp-neq", "eqfree-neg", "pos-eqfree"])
def test_canonical_json(fragment):
    code, doc = run_json("canonical", "--structure", DATA / "k2.fms", "--fragment", fragment)
    assert code == 0
    validate(doc, "canonical.schema.json")


def test_canonical_budget_exit_three():
    r = run("canonical", "--structure", DATA / "k2.fms", "--fragment", "pos-eqfree", "--budget", "5")
    assert r.returncode == 3


def test_missing_file_exit_two():
    r = run("eval", "--structure", DATA / "absent.fms", "--sentence", DATA / "phi.fml")
    assert r.returncode == 2
    assert r.stderr


def test_no_subcommand_exit_two():
    assert run().returncode == 2


def test_output_is_deterministic():
    args = ("dsm-census", "--n", "2", "--json")
    assert run(*args).stdout == run(*args).stdout
