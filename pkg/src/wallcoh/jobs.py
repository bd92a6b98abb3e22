"""Job configuration, orchestration, and report assembly.

A job document carries the ring presentation, the probe box, and a task
list. Tasks run in dependency order (pieces, tables, analyzer, windows) and
the structured report is byte-deterministic apart from the timing block.

Exit codes: 0 all verdicts pass, 1 a claim verdict failed (with witness),
2 inconclusive (box or truncation), 3 input error.
"""

from __future__ import annotations

import json
import time

from . import __version__
from . import toric, wallcross, windows as windows_mod
from .cache import cache_key, cache_lookup, cache_store
from .cech import Box, CohomologyTable
from .errors import BoxTooSmall, ConfigError, EngineError, NotStabilized
from .gradedring import (
    DEFAULT_DEGREE_LIMIT,
    FieldSpec,
    GradedRingSpec,
    ValidatedRing,
    validate_ring,
)

TASKS = ("analyze", "cech", "localcoh", "duality", "windows", "gorenstein",
         "crosscheck")

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


class JobConfig:
    def __init__(self, doc: dict):
        if not isinstance(doc, dict):
            raise ConfigError("$", "job document must be an object")
        self.schema = doc.get("schema", "wallcoh-job/1")
        if self.schema != "wallcoh-job/1":
            raise ConfigError("schema", f"unsupported schema {self.schema!r}")
        self.variables = self._strings(doc, "variables", required=True)
        self.fine_degrees = self._degree_rows(doc)
        lam = doc.get("lambda")
        if not isinstance(lam, list) or not all(isinstance(x, int) for x in lam):
            raise ConfigError("lambda", "must be a list of integers")
        self.lam = [int(x) for x in lam]
        self.relations = self._strings(doc, "relations", required=False) or []
        self.field = self._field(doc.get("field"))
        self.box = self._box(doc.get("box"))
        self.tasks = self._tasks(doc)
        self.duality = self._duality(doc.get("duality"))
        self.windows = self._windows(doc.get("windows"))
        self.cech_generators = self._generators(doc.get("cech_generators"))
        self.assert_ci = bool(doc.get("assert_complete_intersection", False))
        self.degree_limit = doc.get("degree_limit", DEFAULT_DEGREE_LIMIT)
        if not isinstance(self.degree_limit, int) or self.degree_limit < 1:
            raise ConfigError("degree_limit", "must be a positive integer")
        self.gorenstein_box = doc.get("gorenstein_box", 8)
        if not isinstance(self.gorenstein_box, int) or self.gorenstein_box < 1:
            raise ConfigError("gorenstein_box", "must be a positive integer")
        self.cache_dir = doc.get("cache_dir")
        if self.cache_dir is not None and not isinstance(self.cache_dir, str):
            raise ConfigError("cache_dir", "must be a string path")

    # -- field validators ---------------------------------------------------

    @staticmethod
    def _strings(doc, key, required):
        val = doc.get(key)
        if val is None:
            if required:
                raise ConfigError(key, "missing required field")
            return None
        if not isinstance(val, list) or not all(isinstance(x, str) for x in val):
            raise ConfigError(key, "must be a list of strings")
        return list(val)

    def _degree_rows(self, doc):
        val = doc.get("fine_degrees")
        if not isinstance(val, list) or len(val) != len(self.variables):
            raise ConfigError("fine_degrees",
                              "need one degree vector per variable")
        out = []
        for k, row in enumerate(val):
            if not isinstance(row, list) or \
                    not all(isinstance(x, int) for x in row):
                raise ConfigError(f"fine_degrees[{k}]",
                                  "must be a list of integers")
            out.append([int(x) for x in row])
        return out

    @staticmethod
    def _field(val):
        if val is None:
            return FieldSpec()
        if not isinstance(val, dict):
            raise ConfigError("field", "must be an object")
        kind = val.get("kind", "rationals")
        try:
            return FieldSpec(kind=kind,
                             characteristic=val.get("characteristic", 0))
        except ValueError as exc:
            raise ConfigError("field", str(exc))

    @staticmethod
    def _box(val):
        if not isinstance(val, dict):
            raise ConfigError("box", "missing required object")
        for key in ("weight_min", "weight_max", "fine_bound"):
            if not isinstance(val.get(key), int):
                raise ConfigError(f"box.{key}", "must be an integer")
        if val["weight_min"] >= val["weight_max"]:
            raise ConfigError("box.weight_min",
                              "must be strictly below box.weight_max")
        if val["fine_bound"] < 1:
            raise ConfigError("box.fine_bound", "must be >= 1")
        k_start = val.get("k_start", 4)
        k_max = val.get("k_max", 32)
        if not isinstance(k_max, int) or k_max < 2:
            raise ConfigError("box.k_max", "must be an integer >= 2")
        if not isinstance(k_start, int) or k_start < 2:
            raise ConfigError("box.k_start", "must be an integer >= 2")
        return Box(val["weight_min"], val["weight_max"], val["fine_bound"],
                   k_start, k_max)

    @staticmethod
    def _tasks(doc):
        val = doc.get("tasks")
        if not isinstance(val, list) or not val:
            raise ConfigError("tasks", "must be a nonempty list")
        for t in val:
            if t not in TASKS:
                raise ConfigError("tasks", f"unknown task {t!r}")
        return list(dict.fromkeys(val))

    @staticmethod
    def _duality(val):
        if val is None:
            return {"a": None, "mode": "weight"}
        if not isinstance(val, dict):
            raise ConfigError("duality", "must be an object")
        a = val.get("a")
        if a is not None and not isinstance(a, int):
            raise ConfigError("duality.a", "must be an integer or null")
        mode = val.get("mode", "weight")
        if mode not in ("weight", "fine"):
            raise ConfigError("duality.mode", "must be 'weight' or 'fine'")
        return {"a": a, "mode": mode}

    @staticmethod
    def _windows(val):
        if val is None:
            return {"sets": [], "strong": True, "swap_window": None}
        if not isinstance(val, dict):
            raise ConfigError("windows", "must be an object")
        sets = val.get("sets", [])
        if not isinstance(sets, list):
            raise ConfigError("windows.sets", "must be a list of windows")
        for k, w in enumerate(sets):
            if not isinstance(w, list) or not all(isinstance(j, int) for j in w):
                raise ConfigError(f"windows.sets[{k}]",
                                  "must be a list of integers")
        swap = val.get("swap_window")
        if swap is not None:
            if (not isinstance(swap, list) or len(swap) != 2
                    or not all(isinstance(x, int) for x in swap)):
                raise ConfigError("windows.swap_window",
                                  "must be [lo, hi] or null")
        return {"sets": [list(w) for w in sets],
                "strong": bool(val.get("strong", True)),
                "swap_window": swap}

    @staticmethod
    def _generators(val):
        if val is None:
            return {}
        if not isinstance(val, dict):
            raise ConfigError("cech_generators", "must be an object")
        out = {}
        for side in val:
            if side not in ("plus", "minus"):
                raise ConfigError(f"cech_generators.{side}", "unknown side")
            gens = val[side]
            if not isinstance(gens, list) or \
                    not all(isinstance(g, str) for g in gens):
                raise ConfigError(f"cech_generators.{side}",
                                  "must be a list of polynomial strings")
            out[side] = list(gens)
        return out

    # -- canonical forms ------------------------------------------------------

    def ring_payload(self) -> dict:
        return {
            "variables": self.variables,
            "fine_degrees": self.fine_degrees,
            "lambda": self.lam,
            "relations": self.relations,
            "field": {"kind": self.field.kind,
                      "characteristic": self.field.characteristic},
            "cech_generators": {k: self.cech_generators[k]
                                for k in sorted(self.cech_generators)},
        }

    def input_hash(self) -> str:
        return cache_key({
            "ring": self.ring_payload(),
            "box": list(self.box.key()),
            "tasks": self.tasks,
            "duality": self.duality,
            "windows": self.windows,
            "assert_ci": self.assert_ci,
        })

    def build_ring(self) -> ValidatedRing:
        spec = GradedRingSpec.from_strings(
            self.variables, self.fine_degrees, self.lam, self.relations,
            field_spec=self.field, degree_limit=self.degree_limit,
        )
        return validate_ring(spec)


def load_config(path: str, overrides: dict | None = None) -> JobConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError("$", f"cannot read config: {exc}")
    except ValueError as exc:
        raise ConfigError("$", f"config is not valid JSON: {exc}")
    if overrides:
        doc = _apply_overrides(doc, overrides)
    return JobConfig(doc)


def _apply_overrides(doc: dict, overrides: dict) -> dict:
    doc = dict(doc)
    box = dict(doc.get("box", {}))
    for key in ("weight_min", "weight_max", "fine_bound", "k_max"):
        if overrides.get(key) is not None:
            box[key] = overrides[key]
    doc["box"] = box
    if overrides.get("mode") is not None or overrides.get("a") is not None:
        dual = dict(doc.get("duality", {}))
        if overrides.get("mode") is not None:
            dual["mode"] = overrides["mode"]
        if overrides.get("a") is not None:
            dual["a"] = overrides["a"]
        doc["duality"] = dual
    if overrides.get("cache_dir") is not None:
        doc["cache_dir"] = overrides["cache_dir"]
    if overrides.get("tasks") is not None:
        doc["tasks"] = overrides["tasks"]
    return doc


# ---------------------------------------------------------------------------
# task execution


def _tables(config: JobConfig, ring: ValidatedRing, warnings: list,
            cache_dir: str | None) -> tuple[CohomologyTable, bool]:
    key = cache_key({
        "kind": "cohomology-table",
        "ring": config.ring_payload(),
        "box": list(config.box.key()),
        "version": __version__,
    })
    payload = cache_lookup(cache_dir, key, warnings)
    if payload is not None:
        return CohomologyTable.from_payload(ring, config.box, payload), True
    table = CohomologyTable.compute(ring, config.box,
                                    config.cech_generators or None)
    cache_store(cache_dir, key, table.to_payload(), warnings)
    return table, False


def _side_summary(table: CohomologyTable, side: str) -> dict:
    weight = table.weight_table(side)
    return {
        "generators": table.r(side),
        "nonzero_fine_entries": len(table.sides[side]["local"]),
        "weight_table": [
            [j, i, dim, finite]
            for (j, i), (dim, finite) in sorted(weight.items())
        ],
        "euler_violations": [list(m)
                             for m in table.sides[side]["euler_violations"]],
    }


def run(config: JobConfig) -> tuple[dict, int]:
    """Execute the configured tasks; returns (report document, exit code)."""
    warnings: list[str] = []
    timing: dict[str, float] = {}
    tasks_out: dict[str, dict] = {}
    statuses: list[str] = []

    try:
        ring = config.build_ring()
    except (EngineError, ValueError) as exc:
        report = {
            "schema": "wallcoh-report/1",
            "engine_version": __version__,
            "input_hash": config.input_hash(),
            "error": f"{type(exc).__name__}: {exc}",
            "tasks": {},
            "warnings": warnings,
            "timing": timing,
            "exit_code": EXIT_INPUT,
        }
        return report, EXIT_INPUT

    cache_dir = config.cache_dir
    table = None
    need_table = bool(set(config.tasks) &
                      {"analyze", "cech", "localcoh", "duality", "windows",
                       "crosscheck"})
    if need_table:
        t0 = time.perf_counter()
        try:
            table, _ = _tables(config, ring, warnings, cache_dir)
        except NotStabilized as exc:
            report = _finish_report(config, tasks_out, warnings, timing,
                                    EXIT_INCONCLUSIVE,
                                    error=f"NotStabilized: {exc}")
            return report, EXIT_INCONCLUSIVE
        timing["tables"] = time.perf_counter() - t0

    a_default = -ring.sigma

    for task in config.tasks:
        t0 = time.perf_counter()
        out: dict = {}
        status = "pass"
        try:
            if task == "analyze":
                rep = wallcross.classify(ring, table)
                out = rep.to_payload()
                cv = out.get("canonical_vanishing")
                if cv is not None and not cv["passed"]:
                    status = "fail"
                    out["witness"] = {
                        "plus_failures": cv["plus_failures"],
                        "minus_failures": cv["minus_failures"],
                    }
            elif task in ("cech", "localcoh"):
                # cache provenance stays out of the payload: reports must be
                # byte-identical between cold and warm runs
                out = {
                    "plus": _side_summary(table, "plus"),
                    "minus": _side_summary(table, "minus"),
                }
                if any(out[s]["euler_violations"] for s in ("plus", "minus")):
                    status = "fail"
                    out["witness"] = {"euler_violations": True}
            elif task == "duality":
                a = config.duality["a"]
                a = a_default if a is None else a
                verdict = wallcross.duality_check(table, a,
                                                  config.duality["mode"])
                out = verdict.to_payload()
                out["diagnostic_a"] = config.duality["a"] is not None and \
                    config.duality["a"] != a_default
                if verdict.overall == "fail":
                    status = "fail"
                elif verdict.overall == "inconclusive":
                    status = "inconclusive"
            elif task == "windows":
                out = {"inventory": windows_mod.max_windows(table),
                       "checks": []}
                for w in config.windows["sets"]:
                    for side in ("plus", "minus"):
                        v = windows_mod.slice_check(table, w, side)
                        out["checks"].append(v.to_payload())
                        if config.windows["strong"]:
                            sv = windows_mod.strong_slice_check(table, w, side)
                            out["checks"].append(sv.to_payload())
                swap = config.windows["swap_window"]
                if swap is not None:
                    dv = wallcross.duality_check(table, 0, "weight")
                    rep = windows_mod.rhom_swap_check(
                        table, list(range(swap[0], swap[1] + 1)), dv)
                    out["swap"] = rep
                    if not rep["passed"]:
                        status = "fail"
                        out["witness"] = rep["violations"][0]
            elif task == "gorenstein":
                out = toric.gorenstein_check(ring, config.gorenstein_box,
                                             config.assert_ci)
                if out["verdict"] == "unknown":
                    status = "inconclusive"
            elif task == "crosscheck":
                out = _crosscheck(ring, table, config)
                if out["mismatches"]:
                    status = "fail"
                    out["witness"] = out["mismatches"][0]
        except (BoxTooSmall, NotStabilized) as exc:
            status = "inconclusive"
            out = {"reason": str(exc)}
        except EngineError as exc:
            status = "inconclusive"
            out = {"reason": f"{type(exc).__name__}: {exc}"}
        out["status"] = status
        tasks_out[task] = out
        statuses.append(status)
        timing[task] = time.perf_counter() - t0

    if "fail" in statuses:
        code = EXIT_FAIL
    elif "inconclusive" in statuses:
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_PASS
    report = _finish_report(config, tasks_out, warnings, timing, code)
    return report, code


def _finish_report(config, tasks_out, warnings, timing, code, error=None):
    report = {
        "schema": "wallcoh-report/1",
        "engine_version": __version__,
        "input_hash": config.input_hash(),
        "box": {
            "weight_min": config.box.weight_min,
            "weight_max": config.box.weight_max,
            "fine_bound": config.box.fine_bound,
            "k_start": config.box.k_start,
            "k_max": config.box.k_max,
        },
        "field": {"kind": config.field.kind,
                  "characteristic": config.field.characteristic},
        "tasks": tasks_out,
        "warnings": warnings,
        "timing": timing,
        "exit_code": code,
    }
    if error is not None:
        report["error"] = error
    return report


def _crosscheck(ring: ValidatedRing, table: CohomologyTable,
                config: JobConfig) -> dict:
    """Linear algebra against enumeration: closed-form local cohomology for
    relation-free rings, class counts and series expansion otherwise."""
    mismatches = []
    checked = 0
    if not ring.relations:
        cf = toric.ClosedForm(ring)
        from .cech import box_degrees

        for side in ("plus", "minus"):
            if not ring.side_indices(side):
                continue
            top = cf.top_degree(side)
            for mu in box_degrees(ring.dim_grading, config.box.fine_bound):
                expect = cf.local_dims_fine(side, mu)
                for j in range(table.r(side) + 1):
                    got = table.local_dim(side, j, mu)
                    want = expect.get(j, 0)
                    checked += 1
                    if got != want:
                        mismatches.append({
                            "side": side, "j": j, "mu": list(mu),
                            "cech": got, "closed_form": want,
                        })
            agg = table.weight_table(side)
            for i in table.box.weights():
                want = cf.weight_dim(side, i)
                got = agg.get((top, i), [0, True])[0]
                checked += 1
                if got != want:
                    mismatches.append({
                        "side": side, "j": top, "weight": i,
                        "cech": got, "closed_form": want,
                    })
    else:
        lattice = toric.binomial_lattice(ring)
        if lattice is not None:
            from .cech import box_degrees

            degrees = box_degrees(ring.dim_grading, config.box.fine_bound)
            for mu in degrees:
                want = toric.semigroup_class_count(lattice, mu)
                got = ring.piece_dim(mu)
                checked += 1
                if got != want:
                    mismatches.append({
                        "mu": list(mu), "linear_algebra": got,
                        "enumeration": want,
                    })
            for side in ("plus", "minus"):
                if not ring.side_indices(side):
                    continue
                r = table.r(side)
                for mu in degrees:
                    oracle = toric.semigroup_local_dims_fiber(ring, side, mu)
                    got_local = tuple(table.local_dim(side, j, mu)
                                      for j in range(r + 1))
                    checked += 1
                    if got_local != oracle["local"]:
                        mismatches.append({
                            "side": side, "mu": list(mu),
                            "cech": list(got_local),
                            "enumeration": list(oracle["local"]),
                        })
        try:
            toric.hilbert_series(ring,
                                 check_bound=min(config.box.fine_bound, 6),
                                 assert_ci=config.assert_ci)
        except EngineError as exc:
            mismatches.append({"series": str(exc)})
    return {"checked": checked, "mismatches": mismatches}


def render_text(report: dict) -> str:
    lines = [
        f"wallcoh {report['engine_version']}  input {report['input_hash'][:12]}",
    ]
    if "error" in report:
        lines.append(f"error: {report['error']}")
    for task, out in sorted(report.get("tasks", {}).items()):
        lines.append(f"[{out['status'].upper():12s}] {task}")
        if task == "analyze" and "kind" in out:
            lines.append(
                f"    kind={out['kind']} a={out['a_parameter']} "
                f"sigma={out['sigma']} base_dim={out['base_dim']}"
            )
            if out.get("bounds"):
                lines.append(
                    f"    bounds: c_plus={out['bounds']['c_plus']} "
                    f"c_minus={out['bounds']['c_minus']} (observed in box)"
                )
            for side in ("plus", "minus"):
                s = out["smallness"][side]
                lines.append(
                    f"    smallness[{side}]: codim={s['codim']} "
                    f"small={s['small']} verified={s['verified']}"
                )
        if task == "duality" and "overall" in out:
            lines.append(
                f"    mode={out['mode']} a={out['a']} n={out['n']} "
                f"cells={len(out['cells'])} overall={out['overall']}"
            )
            if out.get("witness"):
                lines.append(f"    witness: {out['witness']}")
        if task == "windows" and "inventory" in out:
            inv = out["inventory"]
            lines.append(
                "    widths: positive={} negative={} simultaneous={}".format(
                    inv["positive"]["width"], inv["negative"]["width"],
                    inv["simultaneous"]["width"])
            )
        if task == "gorenstein" and "verdict" in out:
            lines.append(f"    verdict={out['verdict']} route={out['route']}")
        if task == "crosscheck" and "checked" in out:
            lines.append(
                f"    checked={out['checked']} "
                f"mismatches={len(out['mismatches'])}"
            )
    for w in report.get("warnings", []):
        lines.append(f"warning: {w}")
    lines.append(f"exit: {report['exit_code']}")
    return "\n".join(lines)


def render_structured(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=1)
