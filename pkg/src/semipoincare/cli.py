"""Command line front end.

    semipoincare verify --input corpus/two_three.json --out reports/

Exit codes: 0 ok, 1 bad input/config, 2 hypothesis not met, 3 consistency
failure, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .colored import ColorSet, dbar_decomposition, graph_series, indicator_over_E, key_set
from .errors import (
    BudgetError,
    ConsistencyError,
    HypothesisError,
    SemigroupError,
)
from .keysets import apery_single, compute_key_sets
from .poincare import corollary_identity, special_case_numerator, verify_rational_form
from .resolution import betti_table, depth_report, structure_report, syzygy_series
from .semigroup import DEFAULT_ENUM_CAP, DEFAULT_MEMO_CAP, realize_complex, validate

try:  # python >= 3.11
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

COMMANDS = ("validate", "poincare", "keysets", "colored", "betti", "depth", "structure", "realize", "verify")

EXIT_OK, EXIT_CONFIG, EXIT_HYPOTHESIS, EXIT_CONSISTENCY, EXIT_BUDGET = 0, 1, 2, 3, 4


class ConfigError(Exception):
    pass


@dataclass
class JobConfig:
    command: str
    input: str
    E: list | None = None
    A: list | None = None
    bound: int | None = None
    characteristics: list = field(default_factory=lambda: [0, 2])
    format: str = "json"
    jobs: int = 1
    budget: int | None = None
    out: str | None = None


def _parse_list(text, what):
    if text is None or isinstance(text, list):
        return text
    try:
        val = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{what} must be a JSON list: {exc}") from None
    if not isinstance(val, list) or not val:
        raise ConfigError(f"{what} must be a nonempty JSON list")
    return val


def load_config(path) -> dict:
    p = Path(path)
    try:
        if p.suffix == ".toml":
            with open(p, "rb") as fh:
                return tomllib.load(fh)
        return io.read_json(p)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None


def build_config(args) -> JobConfig:
    base = load_config(args.config) if args.config else {}
    unknown = set(base) - {"input", "set", "colors", "bound", "char", "format", "jobs", "budget", "out"}
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")

    def pick(name, key=None):
        v = getattr(args, name)
        return v if v is not None else base.get(key or name)

    inp = pick("input")
    if not inp:
        raise ConfigError("--input is required")
    chars = pick("char")
    cfg = JobConfig(
        command=args.command,
        input=inp,
        E=_parse_list(pick("set"), "--set"),
        A=_parse_list(pick("colors"), "--colors"),
        bound=pick("bound"),
        characteristics=list(chars) if chars is not None else [0, 2],
        format=pick("format") or "json",
        jobs=int(pick("jobs") or 1),
        budget=pick("budget"),
        out=pick("out"),
    )
    if cfg.format not in ("json", "text"):
        raise ConfigError("--format must be json or text")
    if cfg.jobs < 1:
        raise ConfigError("--jobs must be positive")
    if cfg.bound is not None and int(cfg.bound) < 0:
        raise ConfigError("--bound must be nonnegative")
    return cfg


def _load_semigroup(cfg: JobConfig):
    try:
        pres, grading = io.read_presentation(cfg.input)
    except (OSError, ValueError, TypeError) as exc:
        raise ConfigError(f"cannot read presentation {cfg.input}: {exc}") from None
    memo = int(cfg.budget) if cfg.budget else DEFAULT_MEMO_CAP
    enum = 2 * int(cfg.budget) if cfg.budget else DEFAULT_ENUM_CAP
    return validate(pres, grading, memo_cap=memo, enum_cap=enum)


def _elements(S, items, what):
    """Indices into the generators (plain ints) or explicit exponent lists."""
    out = []
    for x in items:
        if isinstance(x, int):
            if not 0 <= x < len(S.generators):
                raise ConfigError(f"{what}: generator index {x} out of range")
            out.append(S.generators[x])
        elif isinstance(x, list):
            if len(x) != S.ambient.width:
                raise ConfigError(f"{what}: exponent {x} has the wrong length")
            out.append(S.ambient.element(x))
        else:
            raise ConfigError(f"{what}: entries must be indices or exponent lists")
    return out


def _choice(S, cfg):
    elems = S.generators if cfg.E is None else _elements(S, cfg.E, "--set")
    try:
        return S.choice_set(elems)
    except (ValueError, SemigroupError) as exc:
        raise ConfigError(f"--set: {exc}") from None


def _colors(S, E, cfg):
    if cfg.A is None:
        return None
    try:
        return ColorSet(S, E, _elements(S, cfg.A, "--colors"))
    except (ValueError, SemigroupError) as exc:
        raise ConfigError(f"--colors: {exc}") from None


def default_bound(S, E) -> int:
    return 5 * max(S.degree(e) for e in E) * len(E)


# -- commands -------------------------------------------------------------------


def cmd_validate(S, E, cfg, N):
    return {
        "validate.json": {
            "positive": True,
            "ambient": {"free_rank": S.ambient.free_rank, "torsion": list(S.ambient.torsion_orders)},
            "generators": [list(g) for g in S.generators],
            "grading": list(S.grading),
            "grading_values": list(S.grading_values),
            "dimension": S.dimension,
            "E": [list(e) for e in E],
            "E_generates_cone": E.generates_cone,
            "E_generates_semigroup": E.generates_semigroup,
        }
    }


def cmd_poincare(S, E, cfg, N):
    rep = verify_rational_form(S, E, N, jobs=cfg.jobs).to_json()
    rep["corollary"] = corollary_identity(S, E, N).to_json() if N >= S.degree(E.total) else None
    return {"poincare.json": rep}


def cmd_keysets(S, E, cfg, N):
    ks = compute_key_sets(S, E, N, cfg.jobs)
    rep = ks.to_json()
    rep["apery_single"] = apery_single(S, E, N).to_json() if N >= S.degree(E.total) else None
    if len(E) <= 3:
        rep["special_case_numerator"] = special_case_numerator(S, ks).to_json(S.sort_key)
    return {"keysets.json": rep}


def cmd_colored(S, E, cfg, N):
    A = _colors(S, E, cfg)
    if A is None:
        raise ConfigError("colored needs --colors")
    rep = dbar_decomposition(S, E, A, N, cfg.jobs).to_json()
    ks = compute_key_sets(S, E, N, cfg.jobs)
    graphs = {}
    for which in ["Q"] + ks.nonempty_subsets():
        B = key_set(ks, which)
        G = graph_series(S, B, A, E, N, cfg.jobs)
        graphs[B.name] = {"series": G.to_json(), "equals_indicator_over_q": G.agrees(indicator_over_E(S, B, E, N))}
    rep["graph_series"] = graphs
    return {"colored.json": rep}


def cmd_betti(S, E, cfg, N):
    tables = [betti_table(S, E, c, N, cfg.jobs) for c in cfg.characteristics]
    csv = ["characteristic,j,exp,value"]
    for t in tables:
        csv += [f"{t.characteristic},{line}" for line in t.to_csv().splitlines()[1:]]
    return {"betti.json": {"tables": [t.to_json() for t in tables]}, "betti.csv": "\n".join(csv) + "\n"}


def cmd_depth(S, E, cfg, N):
    return {"depth.json": {"reports": [depth_report(S, E, c, N, cfg.jobs).to_json() for c in cfg.characteristics]}}


def cmd_structure(S, E, cfg, N):
    reps = []
    for c in cfg.characteristics:
        st = structure_report(S, E, c, N, cfg.jobs).to_json()
        ph = syzygy_series(S, E, c, N, cfg.jobs)
        st["syzygy_series"] = ph.to_json(S.sort_key)
        st["syzygy_series_at_minus_one_equals_numerator"] = ph.evaluate_v(-1).to_json(S.sort_key) == st["numerator"]
        reps.append(st)
    return {"structure.json": {"reports": reps}}


def cmd_verify(S, E, cfg, N):
    out = {}
    out.update(cmd_validate(S, E, cfg, N))
    out.update(cmd_poincare(S, E, cfg, N))
    out.update(cmd_keysets(S, E, cfg, N))
    ks = out["keysets.json"]
    if "special_case_numerator" in ks:
        if ks["special_case_numerator"] != out["poincare.json"]["numerator"]:
            raise ConsistencyError("special-case numerator differs from the general one")
    if cfg.A is not None:
        out.update(cmd_colored(S, E, cfg, N))
    if E.generates_semigroup:
        out.update(cmd_betti(S, E, cfg, N))
        out.update(cmd_depth(S, E, cfg, N))
        out.update(cmd_structure(S, E, cfg, N))
    summary = {name: "ok" for name in sorted(out)}
    out["verify.json"] = {"bound": N, "checks": summary, "E_generates_semigroup": E.generates_semigroup}
    return out


HANDLERS = {
    "validate": cmd_validate,
    "poincare": cmd_poincare,
    "keysets": cmd_keysets,
    "colored": cmd_colored,
    "betti": cmd_betti,
    "depth": cmd_depth,
    "structure": cmd_structure,
    "verify": cmd_verify,
}


def run_realize(cfg):
    try:
        T = io.read_complex(cfg.input)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"cannot read complex {cfg.input}: {exc}") from None
    S, m, E = realize_complex(T)
    pres = io.presentation_to_json(S.presentation, S.grading)
    pres["m"] = list(m)
    pres["E"] = list(range(len(E)))
    return {"presentation.json": pres}


def run(cfg: JobConfig) -> tuple:
    """(files, warnings) for a job; raises the package errors on failure."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if cfg.command == "realize":
            files = run_realize(cfg)
        else:
            S = _load_semigroup(cfg)
            E = _choice(S, cfg)
            N = int(cfg.bound) if cfg.bound is not None else default_bound(S, E)
            for c in cfg.characteristics:
                if not isinstance(c, int) or c < 0:
                    raise ConfigError(f"bad characteristic {c!r}")
            files = HANDLERS[cfg.command](S, E, cfg, N)
    # threads may interleave warnings, so report them sorted and deduplicated
    notes = sorted({str(w.message) for w in caught})
    for name, body in files.items():
        if isinstance(body, dict) and name != "presentation.json":
            body["warnings"] = notes
    return files, notes


def _flags(body) -> str:
    flags = {k: v for k, v in body.items() if isinstance(v, (bool, int)) or (k == "totals")}
    return ", ".join(f"{k}={v}" for k, v in sorted(flags.items()))


def _text_summary(files) -> str:
    lines = []
    for name in sorted(files):
        body = files[name]
        if not isinstance(body, dict):
            continue
        lines.append(f"{name}: {_flags(body)}")
        for sub in body.get("reports", []) + body.get("tables", []):
            lines.append(f"  char {sub['characteristic']}: {_flags(sub)}")
        if isinstance(body.get("numerator"), list):
            terms = " ".join(f"{t['coeff']:+d}*t^{t['exp']}" for t in body["numerator"])
            lines.append(f"  numerator: {terms}")
        for w in body.get("warnings", []) if name == "verify.json" else []:
            lines.append(f"  warning: {w}")
    return "\n".join(lines) + "\n"


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="semipoincare", description="Poincare series and syzygies of semigroup rings")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", help="presentation JSON (complex JSON for realize)")
    ap.add_argument("--set", help="E as a JSON list of generator indices or exponent lists")
    ap.add_argument("--colors", help="colors A as a JSON list of indices or exponent lists")
    ap.add_argument("--bound", type=int, help="lambda-degree bound N (default 5 * max lambda(e) * #E)")
    ap.add_argument("--char", type=int, nargs="+", help="field characteristics (default 0 2)")
    ap.add_argument("--format", choices=("json", "text"))
    ap.add_argument("--jobs", type=int)
    ap.add_argument("--budget", type=int, help="cap on memoized membership queries")
    ap.add_argument("--out", help="directory for report files")
    ap.add_argument("--config", help="TOML or JSON file with the same keys as the flags")
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        files, _ = run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except HypothesisError as exc:
        print(f"hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except SemigroupError as exc:  # positivity, membership, bad complex: all input problems
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    rendered = {name: body if isinstance(body, str) else io.dumps(body) for name, body in files.items()}
    if cfg.out:
        for name, text in rendered.items():
            io.write_text(Path(cfg.out) / name, text)
    if cfg.format == "json":
        sys.stdout.write(io.dumps({name: body for name, body in files.items() if isinstance(body, dict)}))
    else:
        sys.stdout.write(_text_summary(files))
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
