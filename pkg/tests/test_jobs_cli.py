"""Job documents, CLI exit codes, caching, and report determinism."""

import json
import os
import subprocess
import sys

import pytest

from wallcoh import jobs
from wallcoh.errors import ConfigError

CONFIG_DIR = os.path.join(os.path.dirname(__file__), "..", "configs")


def config_path(name):
    return os.path.join(CONFIG_DIR, name)


def write_doc(tmp_path, doc, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


BASE_DOC = {
    "schema": "wallcoh-job/1",
    "variables": ["x", "y", "u", "v"],
    "fine_degrees": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    "lambda": [1, 1, -1, -1],
    "relations": [],
    "box": {"weight_min": -4, "weight_max": 4, "fine_bound": 6},
    "tasks": ["analyze"],
}


def test_schema_violations_report_field_paths(tmp_path):
    bad = dict(BASE_DOC)
    bad["box"] = {"weight_min": 3, "weight_max": 3, "fine_bound": 6}
    with pytest.raises(ConfigError) as err:
        jobs.load_config(write_doc(tmp_path, bad))
    assert "box.weight_min" in str(err.value)

    bad = dict(BASE_DOC)
    bad["tasks"] = []
    with pytest.raises(ConfigError) as err:
        jobs.load_config(write_doc(tmp_path, bad))
    assert "tasks" in str(err.value)

    bad = dict(BASE_DOC)
    bad["tasks"] = ["analyze", "frobnicate"]
    with pytest.raises(ConfigError):
        jobs.load_config(write_doc(tmp_path, bad))

    bad = dict(BASE_DOC)
    bad["fine_degrees"] = [[1, 0], [0, 1]]
    with pytest.raises(ConfigError) as err:
        jobs.load_config(write_doc(tmp_path, bad))
    assert "fine_degrees" in str(err.value)


def test_run_reports_input_error_for_bad_ring(tmp_path):
    bad = dict(BASE_DOC)
    bad["relations"] = ["x*u - y"]
    config = jobs.load_config(write_doc(tmp_path, bad))
    report, code = jobs.run(config)
    assert code == jobs.EXIT_INPUT
    assert "InhomogeneousRelation" in report["error"]


def test_full_conifold_job_passes():
    config = jobs.load_config(config_path("conifold_flop.json"))
    report, code = jobs.run(config)
    assert code == 0
    assert report["tasks"]["analyze"]["kind"] == "flop"
    assert report["tasks"]["duality"]["overall"] == "pass"
    assert report["tasks"]["windows"]["swap"]["passed"]


def test_antiflip_duality_job_fails_with_witness():
    config = jobs.load_config(config_path("antiflip_control.json"))
    report, code = jobs.run(config)
    assert code == 1
    duality = report["tasks"]["duality"]
    assert duality["overall"] == "fail"
    assert duality["witness"] is not None
    cell = next(c for c in duality["cells"]
                if c["i"] == -4 and c["j"] == 1)
    assert (cell["lhs"], cell["rhs"]) == (1, 6)


def test_cli_exit_codes(tmp_path):
    env = dict(os.environ)
    out = subprocess.run(
        [sys.executable, "-m", "wallcoh.cli", "duality",
         config_path("antiflip_control.json")],
        capture_output=True, text=True, env=env)
    assert out.returncode == 1
    out = subprocess.run(
        [sys.executable, "-m", "wallcoh.cli", "gorenstein",
         config_path("twisted_cubic.json")],
        capture_output=True, text=True, env=env)
    assert out.returncode == 0
    assert "not_gorenstein" in out.stdout
    bad = write_doc(tmp_path, {**BASE_DOC, "tasks": []})
    out = subprocess.run(
        [sys.executable, "-m", "wallcoh.cli", "analyze", bad],
        capture_output=True, text=True, env=env)
    # the command overrides the task list, so the empty list is replaced;
    # force a schema error instead
    broken = write_doc(tmp_path, {**BASE_DOC, "lambda": "nope"}, "bad.json")
    out = subprocess.run(
        [sys.executable, "-m", "wallcoh.cli", "analyze", broken],
        capture_output=True, text=True, env=env)
    assert out.returncode == 3
    assert "lambda" in out.stderr


def test_cache_roundtrip_and_corruption(tmp_path):
    doc = dict(BASE_DOC)
    doc["tasks"] = ["analyze", "duality"]
    doc["cache_dir"] = str(tmp_path / "cache")
    path = write_doc(tmp_path, doc)
    config = jobs.load_config(path)
    report1, code1 = jobs.run(config)
    cache_files = list((tmp_path / "cache").glob("*.json"))
    assert len(cache_files) == 1
    report2, code2 = jobs.run(jobs.load_config(path))
    assert code1 == code2 == 0
    r1 = {k: v for k, v in report1.items() if k != "timing"}
    r2 = {k: v for k, v in report2.items() if k != "timing"}
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)
    # truncate the entry: the run must evict, recompute, and agree
    cache_files[0].write_text(cache_files[0].read_text()[:40])
    report3, code3 = jobs.run(jobs.load_config(path))
    assert code3 == 0
    r3 = {k: v for k, v in report3.items()
          if k not in ("timing", "warnings")}
    r1_core = {k: v for k, v in r1.items() if k != "warnings"}
    assert json.dumps(r1_core, sort_keys=True) == \
        json.dumps(r3, sort_keys=True)
    assert any("checksum" in w or "cache read failed" in w
               for w in report3["warnings"])


def test_inconclusive_task_exits_2(tmp_path):
    doc = {
        "schema": "wallcoh-job/1",
        "variables": ["x", "y", "u", "v", "w"],
        "fine_degrees": [[1, 0], [1, 0], [0, 1], [0, 1], [1, 1]],
        "lambda": [1, -1],
        "relations": ["x*u - y*v + w", "w^2 - x*y*u*v"],
        "box": {"weight_min": -3, "weight_max": 3, "fine_bound": 4},
        "tasks": ["gorenstein"],
    }
    config = jobs.load_config(write_doc(tmp_path, doc))
    report, code = jobs.run(config)
    assert code == jobs.EXIT_INCONCLUSIVE
    assert report["tasks"]["gorenstein"]["verdict"] == "unknown"


def test_cold_and_warm_runs_agree_for_table_summaries(tmp_path):
    doc = dict(BASE_DOC)
    doc["tasks"] = ["localcoh", "cech"]
    doc["cache_dir"] = str(tmp_path / "cache")
    path = write_doc(tmp_path, doc)
    cold, code1 = jobs.run(jobs.load_config(path))
    warm, code2 = jobs.run(jobs.load_config(path))
    assert code1 == code2 == 0
    for rep in (cold, warm):
        rep.pop("timing")
    assert json.dumps(cold, sort_keys=True) == json.dumps(warm, sort_keys=True)


def test_cache_key_distinguishes_boxes(tmp_path):
    doc = dict(BASE_DOC)
    doc["cache_dir"] = str(tmp_path / "cache")
    config_a = jobs.load_config(write_doc(tmp_path, doc, "a.json"))
    doc_b = dict(doc)
    doc_b["box"] = {"weight_min": -5, "weight_max": 5, "fine_bound": 6}
    config_b = jobs.load_config(write_doc(tmp_path, doc_b, "b.json"))
    jobs.run(config_a)
    jobs.run(config_b)
    assert len(list((tmp_path / "cache").glob("*.json"))) == 2


def test_crosscheck_task_on_relation_free_ring(tmp_path):
    doc = dict(BASE_DOC)
    doc["tasks"] = ["crosscheck"]
    report, code = jobs.run(jobs.load_config(write_doc(tmp_path, doc)))
    assert code == 0
    assert report["tasks"]["crosscheck"]["mismatches"] == []
    assert report["tasks"]["crosscheck"]["checked"] > 100


def test_generator_override_through_config(tmp_path):
    doc = {
        "schema": "wallcoh-job/1",
        "variables": ["x", "y", "u", "v"],
        "fine_degrees": [[1, 0], [1, 0], [0, 1], [0, 1]],
        "lambda": [1, -1],
        "relations": [],
        "box": {"weight_min": -3, "weight_max": 3, "fine_bound": 4},
        "tasks": ["analyze"],
        "cech_generators": {"plus": ["x", "y", "x + y"]},
    }
    report, code = jobs.run(jobs.load_config(write_doc(tmp_path, doc)))
    assert code == 0
    assert report["tasks"]["analyze"]["bounds"] == {
        "c_plus": -1, "c_minus": 1, "observed_within_box": True}


def test_prime_field_screen_through_schema(tmp_path):
    doc = dict(BASE_DOC)
    doc["field"] = {"kind": "prime-field", "characteristic": 2147483629}
    doc["tasks"] = ["analyze", "duality"]
    report, code = jobs.run(jobs.load_config(write_doc(tmp_path, doc)))
    assert code == 0
    assert report["field"]["characteristic"] == 2147483629
    assert report["tasks"]["duality"]["overall"] == "pass"
    bad = dict(BASE_DOC)
    bad["field"] = {"kind": "prime-field", "characteristic": 10}
    with pytest.raises(ConfigError) as err:
        jobs.load_config(write_doc(tmp_path, bad, "bad_field.json"))
    assert "field" in str(err.value)


def test_structured_report_is_deterministic(tmp_path):
    cache = str(tmp_path / "cache")
    env = dict(os.environ, WALLCOH_CACHE_DIR=cache)
    cmd = [sys.executable, "-m", "wallcoh.cli", "analyze",
           config_path("conifold_flop.json"), "--structured"]
    out1 = subprocess.run(cmd, capture_output=True, text=True, env=env)
    out2 = subprocess.run(cmd, capture_output=True, text=True, env=env)
    assert out1.returncode == out2.returncode == 0
    doc1 = json.loads(out1.stdout)
    doc2 = json.loads(out2.stdout)
    doc1.pop("timing")
    doc2.pop("timing")
    assert json.dumps(doc1, sort_keys=True) == json.dumps(doc2, sort_keys=True)


def test_cli_box_override(tmp_path):
    env = dict(os.environ)
    out = subprocess.run(
        [sys.executable, "-m", "wallcoh.cli", "analyze",
         config_path("conifold_flop.json"), "--box=-4:4",
         "--fine-bound", "6", "--structured"],
        capture_output=True, text=True, env=env)
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["box"]["weight_min"] == -4
    assert doc["box"]["fine_bound"] == 6
