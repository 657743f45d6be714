import json
import os
import subprocess
import sys

import pytest

from g2braid import __version__
from g2braid.cli import main, parse_qspec
from g2braid.qarith import CycloContext, FloatContext, FormalContext


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fuse_at_level_three(capsys):
    code, out, _ = run(capsys, "fuse", "1,0", "1,0", "--level", "3")
    assert code == 0
    assert json.loads(out) == {"[0,0]": 1, "[1,0]": 1}


def test_fuse_outside_alcove_is_a_usage_error(capsys):
    code, out, err = run(capsys, "fuse", "9,9", "1,0", "--level", "1")
    assert code == 2 and out == "" and "alcove" in err


def test_bad_label_and_level(capsys):
    assert run(capsys, "fuse", "1,2", "1,0")[0] == 2
    assert run(capsys, "fuse", "1,0", "1,0", "--level", "-5")[0] == 2
    assert run(capsys, "nosuchcommand")[0] == 2


def test_synth_generic_float(capsys):
    code, out, _ = run(capsys, "synth", "--mu", "2,1", "--n", "4", "--q", "float:1.1,0", "--mode", "float")
    assert code == 0
    data = json.loads(out)
    assert data["pass"] is True
    assert {v["check"] for v in data["verdicts"]} >= {"braid_relations", "fulltwist", "burnside"}


def test_synth_at_level_one(capsys):
    code, out, _ = run(capsys, "synth", "--mu", "1,0", "--n", "3", "--q", "root:26:1", "--level", "1")
    assert code == 0 and json.loads(out)["pass"]


def test_synth_guards(capsys):
    assert run(capsys, "synth", "--mu", "1,0", "--n", "3", "--q", "generic")[0] == 2
    assert run(capsys, "synth", "--mu", "1,0", "--n", "9")[0] == 2
    assert run(capsys, "synth", "--mu", "1,0", "--n", "3", "--q", "root:26:2")[0] == 2
    assert run(capsys, "synth", "--mu", "1,0", "--n", "3", "--q", "root:28:1", "--level", "1")[0] == 2


def test_synth_conditions_violated_exits_three(capsys):
    code, _, err = run(capsys, "synth", "--mu", "1,0", "--n", "3", "--level", "2")
    assert code == 3 and "x_distinct" in err


def test_bratteli_formats(capsys):
    code, out, _ = run(capsys, "bratteli", "4", "--format", "dot")
    assert code == 0 and out.startswith("digraph bratteli")
    code, out, _ = run(capsys, "bratteli", "2", "--format", "json")
    assert json.loads(out)["rule"] == "generic"
    code, out, _ = run(capsys, "bratteli", "2", "--format", "text")
    assert out.splitlines()[2] == "2: [0,0]x1 [1,0]x1 [1,1]x1 [2,0]x1"


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "1,0", "--q", "generic")
    data = json.loads(out)
    assert code == 0 and data["classical"] == 7
    assert data["qdim"] == "q^10 + q^8 + q^2 + 1 + q^-2 + q^-8 + q^-10"
    code, out, _ = run(capsys, "dims", "1,0", "--q", "root:26:1")
    assert abs(json.loads(out)["qdim"]["complex"][1]) < 1e-12


def test_verify_targets(capsys):
    assert run(capsys, "verify", "lemma459", "--ell", "5")[0] == 0
    assert run(capsys, "verify", "lemma459")[0] == 2
    assert run(capsys, "verify", "tl-obstruction", "--ell", "4")[0] == 4
    assert run(capsys, "verify", "recent", "--level", "9")[0] == 0
    assert run(capsys, "verify", "recent", "--level", "2")[0] == 4
    assert run(capsys, "verify", "distinctness", "--level", "1")[0] == 0
    assert run(capsys, "verify", "distinctness")[0] == 2
    assert run(capsys, "verify", "homomorphism", "--level", "1")[0] == 0
    assert run(capsys, "verify", "rep", "--mu", "1,1", "--n", "3", "--level", "1")[0] == 0
    code, out, _ = run(capsys, "verify", "admissible", "--level", "1")
    assert json.loads(out)["m"] == 26


def test_catalog_commands(capsys):
    code, out, _ = run(capsys, "catalog", "check")
    assert code == 0 and json.loads(out)["failures"] == []
    code, out, _ = run(capsys, "catalog", "classify", "--q", "root:30:1")
    assert json.loads(out)["result"]["case"] == 2
    code, out, _ = run(capsys, "catalog", "classify", "--q", "float:1.1")
    assert json.loads(out)["result"] == "irreducible"
    code, out, _ = run(capsys, "catalog", "table")
    assert len(json.loads(out)["generic"]) == 24


def test_output_is_deterministic(capsys):
    first = run(capsys, "synth", "--mu", "2,0", "--n", "3", "--no-burnside")[1]
    second = run(capsys, "synth", "--mu", "2,0", "--n", "3", "--no-burnside")[1]
    assert first == second


def test_fusion_cache_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "fuse", "2,0", "1,1", "--cache", str(tmp_path))
    cache_file = tmp_path / f"fusion-{__version__}.json"
    assert code == 0 and cache_file.exists()
    stored = json.loads(cache_file.read_text())
    assert stored == {"generic|[2,0]|[1,1]": json.loads(out)}
    # a corrupted cache file is ignored and rewritten
    cache_file.write_text("{not json")
    assert run(capsys, "fuse", "2,0", "1,1", "--cache", str(tmp_path))[1] == out
    assert json.loads(cache_file.read_text())
    assert not [p for p in os.listdir(tmp_path) if p.endswith(".tmp")]


@pytest.mark.parametrize("text, kind", [("generic", FormalContext), ("root:26:1", CycloContext),
                                        ("float:1.1,0.2", FloatContext), ("float:1.1", FloatContext)])
def test_parse_qspec(text, kind):
    assert isinstance(parse_qspec(text), kind)


@pytest.mark.parametrize("text", ["root:26", "root:26:13", "float:a,b", "float:0,0", "zeta:5"])
def test_parse_qspec_rejects(text):
    with pytest.raises(ValueError):
        parse_qspec(text)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "g2braid", "fuse", "1,0", "1,0", "--level", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"[0,0]": 1, "[1,0]": 1}
