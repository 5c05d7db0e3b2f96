"""Batch experiment driver: ``currents-lab run | validate | show``.

A config is a JSON object::

    {
      "rank": 2,
      "seed": 0,
      "automorphisms": {"fib": {"images": ["ab", "a"], "inverse_images": ["b", "Ba"]},
                        "fib2": {"power": "fib", "k": 2}},
      "seeds": {"eta_a": "a", "mix": {"terms": [{"word": "ab", "coeff": "1/2"}]}},
      "trees": {"rose": {"vertices": 1, "edges": [...], "marking": {...}}},
      "experiments": [{"name": "fib-orbit", "kind": "orbit", "automorphism": "fib",
                       "seed": "eta_a", "n": 25, "L": 3, "tol": 0.001}]
    }

See ``docs/config.md`` for every experiment kind and the report layouts.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from . import catalog, dynamics, sampling
from .currents import RationalCurrent, act, counting_current
from .free_group import Automorphism, Word, compose, conjugacy_class, format_letters, power
from .trees import MarkedMetricGraph, intersection, rose, tree_act
from .whitehead import is_primitive, minimal_set_obstruction, whitehead_graph, whitehead_reduce

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2

KINDS = ("orbit", "dilatation", "boundary", "periodic", "hyperbolic-search", "whitehead",
         "primitive", "intersection", "fixed-points", "exceptional")

_CATALOG: dict[str, Callable[[], Automorphism]] = {
    "fibonacci": catalog.fibonacci,
    "phi3": catalog.phi3,
    "surface_genus1": lambda: catalog.surface_automorphism(1),
    "surface_genus2": lambda: catalog.surface_automorphism(2),
}


class ConfigError(ValueError):
    """Carries every diagnostic found while validating a config."""

    def __init__(self, problems: list[str]):
        super().__init__("\n".join(problems))
        self.problems = problems


# -- canonical output ---------------------------------------------------------------

def _canon(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return str(obj)
        return float(format(obj, ".12g"))
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    if hasattr(obj, "tolist"):
        return _canon(obj.tolist())
    return str(obj)


def dumps(obj: Any) -> str:
    """Sorted keys, floats rounded to 12 significant digits, trailing newline."""
    return json.dumps(_canon(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- config ----------------------------------------------------------------------------

@dataclass
class Experiment:
    index: int
    name: str
    kind: str
    params: dict


@dataclass
class ExperimentConfig:
    rank: int
    seed: int
    automorphisms: dict[str, Automorphism] = field(default_factory=dict)
    seeds: dict[str, RationalCurrent] = field(default_factory=dict)
    trees: dict[str, MarkedMetricGraph] = field(default_factory=dict)
    experiments: list[Experiment] = field(default_factory=list)


def _bundled(name: str) -> Path | None:
    ref = resources.files("currents_lab") / "configs" / (name if name.endswith(".json") else name + ".json")
    return Path(str(ref)) if ref.is_file() else None


def resolve_config_path(text: str) -> Path:
    """A filesystem path, or the name of a bundled config (``fibonacci``, ``acceptance``)."""
    path = Path(text)
    if path.exists():
        return path
    bundled = _bundled(text)
    if bundled is None:
        raise ConfigError([f"{text}: no such file or bundled config"])
    return bundled


def read_config(path: Path) -> dict:
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError([f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}"]) from None
    if not isinstance(data, dict):
        raise ConfigError([f"{path}: top level must be a JSON object"])
    return data


def _seed_stream(seed: int, name: str):
    return sampling.stream(seed, zlib.crc32(name.encode()))


class _Builder:
    def __init__(self, data: dict, seed: int | None):
        self.data = data
        self.problems: list[str] = []
        rank = data.get("rank", 2)
        if not isinstance(rank, int) or not 2 <= rank <= 26:
            self.problems.append(f"rank: expected an integer in 2..26, got {rank!r}")
            rank = 2
        self.rank = rank
        cfg_seed = data.get("seed", 0)
        if not isinstance(cfg_seed, int) or cfg_seed < 0:
            self.problems.append(f"seed: expected a nonnegative integer, got {cfg_seed!r}")
            cfg_seed = 0
        self.seed = cfg_seed if seed is None else seed
        self.auts: dict[str, Automorphism] = {}
        self._resolving: set[str] = set()

    def section(self, key: str) -> dict:
        sec = self.data.get(key, {})
        if not isinstance(sec, dict):
            self.problems.append(f"{key}: expected an object of named entries")
            return {}
        return sec

    # automorphisms may refer to each other through power/compose
    def automorphism(self, name: str, where: str) -> Automorphism | None:
        if name in self.auts:
            return self.auts[name]
        entries = self.section("automorphisms")
        if name not in entries:
            if name in _CATALOG:
                return _CATALOG[name]()
            self.problems.append(f"{where}: undefined automorphism {name!r}")
            return None
        if name in self._resolving:
            self.problems.append(f"automorphisms.{name}: circular definition")
            return None
        self._resolving.add(name)
        try:
            phi = self._build_automorphism(name, entries[name], f"automorphisms.{name}")
        finally:
            self._resolving.discard(name)
        if phi is not None:
            phi.name = name
            self.auts[name] = phi
        return phi

    def _build_automorphism(self, name: str, entry: Any, where: str) -> Automorphism | None:
        if not isinstance(entry, dict):
            self.problems.append(f"{where}: expected an object")
            return None
        try:
            if "catalog" in entry:
                if entry["catalog"] not in _CATALOG:
                    self.problems.append(f"{where}.catalog: unknown catalog entry {entry['catalog']!r}")
                    return None
                return _CATALOG[entry["catalog"]]()
            if "power" in entry:
                base = self.automorphism(entry["power"], f"{where}.power")
                k = entry.get("k", 1)
                if not isinstance(k, int):
                    self.problems.append(f"{where}.k: expected an integer")
                    return None
                return None if base is None else power(base, k)
            if "compose" in entry:
                parts = [self.automorphism(p, f"{where}.compose[{i}]") for i, p in enumerate(entry["compose"])]
                if any(p is None for p in parts) or not parts:
                    if not parts:
                        self.problems.append(f"{where}.compose: empty list")
                    return None
                out = parts[0]
                for p in parts[1:]:
                    out = compose(out, p)
                return out
            rank = entry.get("rank", self.rank)
            images, inverse = entry.get("images"), entry.get("inverse_images")
            if images is None or inverse is None:
                self.problems.append(f"{where}: need images and inverse_images (or catalog/power/compose)")
                return None
            return Automorphism.from_dict({"rank": rank, "images": images, "inverse_images": inverse})
        except (ValueError, TypeError, KeyError) as exc:
            self.problems.append(f"{where}: {exc}")
            return None

    def current(self, name: str, entry: Any, where: str) -> RationalCurrent | None:
        try:
            if isinstance(entry, str):
                return counting_current(Word.parse(entry, self.rank))
            if not isinstance(entry, dict):
                self.problems.append(f"{where}: expected a word or an object")
                return None
            rank = entry.get("rank", self.rank)
            if "random" in entry:
                rng = _seed_stream(self.seed, name)
                kind = entry["random"]
                if kind == "primitive":
                    g = sampling.random_primitive(rng, rank, int(entry.get("moves", 6)),
                                                  int(entry.get("min_length", 2)))
                    return counting_current(g)
                if kind == "current":
                    return sampling.random_current(rng, rank, int(entry.get("terms", 3)),
                                                   int(entry.get("max_length", 6)))
                self.problems.append(f"{where}.random: expected 'primitive' or 'current', got {kind!r}")
                return None
            if "word" in entry:
                nu = counting_current(Word.parse(entry["word"], rank))
                return Fraction(str(entry.get("coeff", 1))) * nu
            return RationalCurrent.from_dict({"rank": rank, "terms": entry.get("terms", [])})
        except (ValueError, TypeError, KeyError) as exc:
            self.problems.append(f"{where}: {exc}")
            return None

    def tree(self, entry: Any, where: str) -> MarkedMetricGraph | None:
        try:
            if isinstance(entry, dict) and "rose" in entry:
                return rose(int(entry.get("rank", self.rank)), entry["rose"])
            return MarkedMetricGraph.from_dict(entry)
        except (ValueError, TypeError, KeyError) as exc:
            self.problems.append(f"{where}: {exc}")
            return None


# parameter name -> (type, required, default)
_INT, _FLOAT, _STR, _LIST = int, float, str, list
_PARAMS: dict[str, dict[str, tuple]] = {
    "orbit": {"automorphism": (_STR, True, None), "seed": (_STR, True, None), "n": (_INT, True, None),
              "L": (_INT, False, 3), "tol": (_FLOAT, False, 1e-3), "budget": (_INT, False, None),
              "csv": (bool, False, False), "backward": (bool, False, False)},
    "dilatation": {"automorphism": (_STR, True, None), "seed": (_STR, True, None), "n": (_INT, True, None),
                   "burn_in": (_INT, False, 5), "L": (_INT, False, 1), "budget": (_INT, False, None)},
    "boundary": {"automorphism": (_STR, True, None), "word": (_STR, True, None)},
    "periodic": {"automorphism": (_STR, True, None), "Lmax": (_INT, True, None), "p": (_INT, True, None),
                 "budget": (_INT, False, None), "max_classes": (_INT, False, dynamics.MAX_CLASSES)},
    "hyperbolic-search": {"phi": (_STR, True, None), "psi": (_STR, True, None), "boundary": (_STR, True, None),
                          "m_max": (_INT, True, None), "Lmax": (_INT, True, None), "p": (_INT, True, None),
                          "budget": (_INT, False, 10 ** 6)},
    "whitehead": {"words": (_LIST, True, None), "rank": (_INT, False, None)},
    "primitive": {"words": (_LIST, False, []), "random": (_INT, False, 0), "moves": (_INT, False, 4),
                  "rank": (_INT, False, None)},
    "intersection": {"tree": (_STR, True, None), "seeds": (_LIST, True, None),
                     "automorphism": (_STR, False, None)},
    "fixed-points": {"automorphism": (_STR, True, None), "candidates": (_LIST, True, None),
                     "L": (_INT, False, 3)},
    "exceptional": {"automorphism": (_STR, True, None), "boundary": (_STR, True, None),
                    "generic": (_STR, True, None), "boundary_words": (_LIST, True, None),
                    "n": (_INT, True, None), "L": (_INT, False, 3),
                    "threshold": (_FLOAT, False, dynamics.DEFAULT_SEPARATION), "tol": (_FLOAT, False, 1e-3)},
}


def _check_params(exp: dict, where: str, problems: list[str]) -> dict | None:
    kind = exp.get("kind")
    if kind not in _PARAMS:
        problems.append(f"{where}.kind: expected one of {', '.join(KINDS)}, got {kind!r}")
        return None
    entry = _PARAMS[kind]
    out = {}
    for key in exp:
        if key not in entry and key not in ("kind", "name"):
            problems.append(f"{where}.{key}: unknown parameter for kind {kind!r}")
    for key, (typ, required, default) in entry.items():
        if key not in exp:
            if required:
                problems.append(f"{where}.{key}: required for kind {kind!r}")
            out[key] = default
            continue
        value = exp[key]
        ok = isinstance(value, typ) and not (typ is int and isinstance(value, bool))
        if typ is float and isinstance(value, int) and not isinstance(value, bool):
            value, ok = float(value), True
        if not ok:
            problems.append(f"{where}.{key}: expected {typ.__name__}, got {value!r}")
        out[key] = value
    for key in ("n", "Lmax", "p", "m_max", "L"):
        if isinstance(out.get(key), int) and out[key] < 1:
            problems.append(f"{where}.{key}: must be positive")
    return out


def load_config(path: Path | str, seed: int | None = None) -> ExperimentConfig:
    """Parse and validate; raises :class:`ConfigError` listing every problem."""
    data = read_config(Path(path))
    b = _Builder(data, seed)
    for key in data:
        if key not in ("rank", "seed", "automorphisms", "seeds", "trees", "experiments", "description"):
            b.problems.append(f"{key}: unknown top-level field")
    for name in b.section("automorphisms"):
        b.automorphism(name, f"automorphisms.{name}")
    seeds = {}
    for name, entry in b.section("seeds").items():
        nu = b.current(name, entry, f"seeds.{name}")
        if nu is not None:
            seeds[name] = nu
    trees = {}
    for name, entry in b.section("trees").items():
        t = b.tree(entry, f"trees.{name}")
        if t is not None:
            trees[name] = t

    raw = data.get("experiments", [])
    if not isinstance(raw, list):
        b.problems.append("experiments: expected a list")
        raw = []
    experiments, names = [], set()
    for i, exp in enumerate(raw):
        where = f"experiments[{i}]"
        if not isinstance(exp, dict):
            b.problems.append(f"{where}: expected an object")
            continue
        name = exp.get("name", f"{i:02d}-{exp.get('kind', 'unknown')}")
        if not isinstance(name, str) or not name or any(ch in name for ch in "/\\"):
            b.problems.append(f"{where}.name: expected a plain file-safe string")
            continue
        if name in names:
            b.problems.append(f"{where}.name: duplicate experiment name {name!r}")
        names.add(name)
        params = _check_params(exp, where, b.problems)
        if params is None:
            continue
        _check_refs(b, params, seeds, trees, where)
        experiments.append(Experiment(i, name, exp["kind"], params))
    if b.problems:
        raise ConfigError(b.problems)
    return ExperimentConfig(b.rank, b.seed, dict(b.auts), seeds, trees, experiments)


def _check_refs(b: _Builder, params: dict, seeds: dict, trees: dict, where: str) -> None:
    for key in ("automorphism", "phi", "psi"):
        if isinstance(params.get(key), str):
            b.automorphism(params[key], f"{where}.{key}")
    for key in ("seed", "generic"):
        if isinstance(params.get(key), str) and params[key] not in seeds:
            b.problems.append(f"{where}.{key}: undefined seed {params[key]!r}")
    if isinstance(params.get("boundary"), str) and "boundary_words" in params and params["boundary"] not in seeds:
        b.problems.append(f"{where}.boundary: undefined seed {params['boundary']!r}")
    for key in ("seeds", "candidates"):
        for j, s in enumerate(params.get(key) or []):
            if s not in seeds:
                b.problems.append(f"{where}.{key}[{j}]: undefined seed {s!r}")
    if isinstance(params.get("tree"), str) and params["tree"] not in trees:
        b.problems.append(f"{where}.tree: undefined tree {params['tree']!r}")


# -- experiments ------------------------------------------------------------------------

def _word(text: str, rank: int) -> Word:
    return Word.parse(text, rank)


def _orbit_report(cfg, p, inner_workers):
    phi = cfg.automorphisms[p["automorphism"]]
    if p["backward"]:
        phi = phi.inverse()
        phi.name = p["automorphism"] + "^-1"
    r = dynamics.orbit(phi, cfg.seeds[p["seed"]], p["n"], p["L"], seed_id=p["seed"], max_length=p["budget"])
    conv, limit = dynamics.detect_convergence(r, p["tol"])
    body = r.to_dict()
    body["convergence"] = {"tol": p["tol"], "converged_at": conv,
                           "limit": dict(zip(body["profile_words"], limit.values))}
    extra = {"csv": r.to_csv()} if p["csv"] else {}
    return body, extra


def _dilatation_report(cfg, p, inner_workers):
    phi = cfg.automorphisms[p["automorphism"]]
    r = dynamics.orbit(phi, cfg.seeds[p["seed"]], p["n"], p["L"], seed_id=p["seed"], max_length=p["budget"])
    est = dynamics.estimate_dilatation(r, p["burn_in"])
    m = dynamics.transition_matrix(phi)
    pf = dynamics.pf_eigenvalue(m)
    return {"automorphism": p["automorphism"], "seed": p["seed"], "steps": p["n"], "burn_in": p["burn_in"],
            "weights": [str(w) for w in r.weights], "estimate": est,
            "transition_matrix": m.tolist(), "pf_eigenvalue": pf.eigenvalue,
            "pf_primitive": pf.primitive, "abs_difference": abs(est - pf.eigenvalue)}, {}


def _boundary_report(cfg, p, inner_workers):
    phi = cfg.automorphisms[p["automorphism"]]
    g = _word(p["word"], phi.rank)
    status = dynamics.boundary_class_test(phi, g)
    return {"automorphism": p["automorphism"], "word": str(g), "class": str(conjugacy_class(g)),
            "image_class": str(conjugacy_class(phi(g))), "status": str(status)}, {}


def _periodic_report(cfg, p, inner_workers):
    phi = cfg.automorphisms[p["automorphism"]]
    cert = dynamics.periodic_class_search(phi, p["Lmax"], p["p"], workers=inner_workers,
                                          max_classes=p["max_classes"], budget=p["budget"])
    return {**cert.to_dict(), "empty": cert.empty}, {}


def _hyperbolic_report(cfg, p, inner_workers):
    phi, psi = cfg.automorphisms[p["phi"]], cfg.automorphisms[p["psi"]]
    rep = dynamics.hyperbolic_candidate_search(phi, psi, _word(p["boundary"], phi.rank), p["m_max"],
                                               p["Lmax"], p["p"], budget=p["budget"], workers=inner_workers)
    return rep.to_dict(), {}


def _whitehead_report(cfg, p, inner_workers):
    rank = p["rank"] or cfg.rank
    rows = []
    for text in p["words"]:
        c = conjugacy_class(_word(text, rank))
        g = whitehead_graph(c)
        length, witness = whitehead_reduce(c)
        rows.append({
            "word": text, "class": str(c),
            "edges": [[format_letters((u,)), format_letters((v,)), m] for (u, v), m in g.edges],
            "obstruction": minimal_set_obstruction(g),
            "minimal_length": length, "witness": [str(w) for w in witness],
            "dot": g.to_dot(),
        })
    return {"rank": rank, "words": rows}, {}


def _primitive_report(cfg, p, inner_workers, seed):
    rank = p["rank"] or cfg.rank
    words = [_word(t, rank) for t in p["words"]]
    rng = sampling.stream(seed, zlib.crc32(b"primitive"))
    words += [sampling.random_primitive(rng, rank, p["moves"]) for _ in range(p["random"])]
    return {"rank": rank, "results": [{"word": str(w), "primitive": is_primitive(w)} for w in words]}, {}


def _intersection_report(cfg, p, inner_workers):
    T = cfg.trees[p["tree"]]
    rows = []
    phi = cfg.automorphisms[p["automorphism"]] if p["automorphism"] else None
    for name in p["seeds"]:
        nu = cfg.seeds[name]
        row = {"seed": name, "value": intersection(T, nu)}
        if phi is not None:
            row["tree_acted"] = intersection(tree_act(T, phi), nu)
            row["current_acted"] = intersection(T, act(phi, nu))
        rows.append(row)
    return {"tree": p["tree"], "automorphism": p["automorphism"], "results": rows}, {}


def _fixed_report(cfg, p, inner_workers):
    phi = cfg.automorphisms[p["automorphism"]]
    statuses = dynamics.fixed_point_check(phi, [cfg.seeds[c] for c in p["candidates"]], p["L"])
    return {"automorphism": p["automorphism"], "level": p["L"],
            "results": [{"candidate": c, "status": str(s)} for c, s in zip(p["candidates"], statuses)]}, {}


def _exceptional_report(cfg, p, inner_workers):
    phi = cfg.automorphisms[p["automorphism"]]
    words = [_word(t, phi.rank) for t in p["boundary_words"]]
    rep = dynamics.exceptional_orbit_check(phi, cfg.seeds[p["boundary"]], cfg.seeds[p["generic"]], p["n"],
                                           p["L"], words, threshold=p["threshold"], tol=p["tol"])
    return {"automorphism": p["automorphism"], "boundary": p["boundary"], "generic": p["generic"],
            "steps": p["n"], "level": p["L"], **rep.to_dict()}, {}


_RUNNERS = {
    "orbit": _orbit_report, "dilatation": _dilatation_report, "boundary": _boundary_report,
    "periodic": _periodic_report, "hyperbolic-search": _hyperbolic_report, "whitehead": _whitehead_report,
    "intersection": _intersection_report, "fixed-points": _fixed_report, "exceptional": _exceptional_report,
}


def run_experiment(cfg: ExperimentConfig, exp: Experiment, inner_workers: int = 1) -> dict:
    """Outputs of one experiment as ``{filename: text}`` plus status fields."""
    try:
        if exp.kind == "primitive":
            body, extra = _primitive_report(cfg, exp.params, inner_workers, cfg.seed)
        else:
            body, extra = _RUNNERS[exp.kind](cfg, exp.params, inner_workers)
    except (dynamics.BudgetError, dynamics.TooManyClassesError, dynamics.PreconditionError,
            ValueError, ArithmeticError) as exc:
        return {"status": "error", "error": {"type": type(exc).__name__, "message": str(exc)}, "files": {}}
    files = {f"{exp.name}.json": dumps({"name": exp.name, "kind": exp.kind, "report": body})}
    if "csv" in extra:
        files[f"{exp.name}.csv"] = extra["csv"]
    return {"status": "ok", "files": files}


def _job(args):
    cfg, exp = args
    return run_experiment(cfg, exp)


def run(config: Path | str, out: Path | str, workers: int = 1, seed: int | None = None) -> int:
    """Run every experiment and write reports plus ``manifest.json`` into ``out``."""
    cfg_path = resolve_config_path(str(config))
    cfg = load_config(cfg_path, seed)
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    exps = cfg.experiments
    if workers > 1 and len(exps) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_job, [(cfg, e) for e in exps]))
    else:
        # a lone experiment may still shard its own search across workers
        results = [run_experiment(cfg, e, inner_workers=workers) for e in exps]
    entries = []
    for exp, res in zip(exps, results):
        files = []
        for fname, text in res["files"].items():
            (out / fname).write_text(text)
            files.append({"path": fname, "sha256": hashlib.sha256(text.encode()).hexdigest()})
        entry = {"name": exp.name, "kind": exp.kind, "status": res["status"], "files": files}
        if "error" in res:
            entry["error"] = res["error"]
        entries.append(entry)
    manifest = {"config": cfg_path.name,
                "config_sha256": hashlib.sha256(cfg_path.read_bytes()).hexdigest(),
                "seed": cfg.seed, "experiments": entries}
    (out / "manifest.json").write_text(dumps(manifest))
    return EXIT_OK if all(e["status"] == "ok" for e in entries) else EXIT_FAILED


def verify_manifest(out: Path | str) -> list[str]:
    """Files whose content no longer matches the manifest hash."""
    out = Path(out)
    manifest = json.loads((out / "manifest.json").read_text())
    bad = []
    for entry in manifest["experiments"]:
        for f in entry["files"]:
            path = out / f["path"]
            if not path.exists() or hashlib.sha256(path.read_bytes()).hexdigest() != f["sha256"]:
                bad.append(f["path"])
    return bad


# -- show --------------------------------------------------------------------------------

def _show_orbit(r: dict) -> list[str]:
    lines = [f"orbit of {r['seed']} under {r['automorphism']} at level {r['level']}",
             f"{'step':>4}  {'weight':>14}  {'ratio':>10}  {'distance':>10}"]
    for rec in r["records"]:
        ratio = "" if rec["ratio"] is None else f"{rec['ratio']:.6f}"
        dist = "" if rec["distance"] is None else f"{rec['distance']:.3e}"
        lines.append(f"{rec['step']:>4}  {rec['weight']:>14}  {ratio:>10}  {dist:>10}")
    conv = r.get("convergence")
    if conv:
        lines.append(f"converged_at={conv['converged_at']} (tol {conv['tol']})")
    return lines


def show(path: Path | str) -> str:
    data = json.loads(Path(path).read_text())
    if "experiments" in data and "config" in data:
        lines = [f"manifest for {data['config']} (seed {data['seed']})"]
        for e in data["experiments"]:
            extra = f"  {e['error']['type']}: {e['error']['message']}" if "error" in e else ""
            lines.append(f"  {e['status']:<5} {e['kind']:<17} {e['name']}{extra}")
        return "\n".join(lines) + "\n"
    kind, report = data.get("kind"), data.get("report", data)
    lines = [f"[{kind}] {data.get('name', '')}"]
    if kind == "orbit":
        lines += _show_orbit(report)
    else:
        for key in sorted(report):
            value = report[key]
            if key == "dot":
                continue
            if isinstance(value, list) and value and isinstance(value[0], dict):
                lines.append(f"{key}:")
                for row in value:
                    lines.append("  " + ", ".join(f"{k}={v}" for k, v in sorted(row.items()) if k != "dot"))
            else:
                lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


# -- entry point ---------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="currents-lab", description="Rational-current orbit experiments.")
    sub = ap.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run every experiment in a config")
    p_run.add_argument("--config", required=True, help="config file or bundled config name")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.add_argument("--workers", type=int, default=1)
    p_run.add_argument("--seed", type=int, default=None, help="overrides the config seed")
    p_val = sub.add_parser("validate", help="parse and check a config without running it")
    p_val.add_argument("--config", required=True)
    p_show = sub.add_parser("show", help="pretty-print a report or manifest")
    p_show.add_argument("report")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "validate":
            cfg = load_config(resolve_config_path(args.config))
            print(f"ok: {len(cfg.experiments)} experiments, {len(cfg.automorphisms)} automorphisms, "
                  f"{len(cfg.seeds)} seeds, {len(cfg.trees)} trees")
            return EXIT_OK
        if args.command == "show":
            sys.stdout.write(show(args.report))
            return EXIT_OK
        if args.workers < 1:
            print("error: --workers must be at least 1", file=sys.stderr)
            return EXIT_INVALID
        status = run(args.config, args.out, args.workers, args.seed)
        if status != EXIT_OK:
            print(f"some experiments failed; see {Path(args.out) / 'manifest.json'}", file=sys.stderr)
        return status
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"error: {problem}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
