"""Command line for building, discretizing and comparing polarization distributions.

Subcommands: qdist (pixel table for one state), compare (two-state verdict plus
Lorenz columns), chain (verdict matrix and majorization chain over a state set),
reproduce (built-in figure datasets fig3..fig8 with a doubled-grid stability
check), measures (Renyi/confidence tables).

State designators: coherent:n=4 | phase:n=4 | squeezed:n=5 | noon:n=6 | hs:n=4 |
random:n=4,seed=7 | glauber:nbar=10 | thermal:nbar=10 | tmsv:nbar=10.

Exit codes: 0 success, 2 unparseable input, 3 non-finite Q on the grid, 1 failed
doubled-grid stability in reproduce.  Verdict lines go to stdout, diagnostics to
stderr; files are UTF-8.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .majorize import (DEFAULT_TOL, GLYPHS_ASCII, GLYPHS_UNICODE, Relation, Verdict,
                       compare, lorenz, partial_order, render_chain)
from .measures import ALPHA_SWEEP, RENYI_Q_SWEEP, confidence_interval, renyi
from .sphere_grid import EvaluationError, GridSpec, discretize_state, grid_directions
from .states import (make_analytic, make_coherent, make_hs_extremal, make_noon,
                     make_phase, make_squeezed, random_pure)


class StateSpecError(ValueError):
    """A state designator or run configuration could not be parsed."""


@dataclass
class RunConfig:
    n_theta: int = 400
    n_phi: int = 400
    tol: float = DEFAULT_TOL
    fmt: str = "csv"
    out: Optional[str] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if self.tol <= 0:
            raise StateSpecError(f"tol must be > 0, got {self.tol!r}")
        if self.fmt not in ("csv", "json"):
            raise StateSpecError(f"format must be csv or json, got {self.fmt!r}")

    @property
    def grid(self) -> GridSpec:
        try:
            return GridSpec(self.n_theta, self.n_phi)
        except ValueError as exc:
            raise StateSpecError(str(exc)) from exc


@dataclass(frozen=True)
class ParsedState:
    text: str
    family: str
    params: str
    letter: str
    obj: object


_LETTERS = {"coherent": "C", "phase": "P", "squeezed": "S", "noon": "N", "hs": "H",
            "random": "R", "glauber": "C", "thermal": "T", "tmsv": "S"}
_INT_FAMILIES = {"coherent": make_coherent, "phase": make_phase,
                 "squeezed": make_squeezed, "noon": make_noon, "hs": make_hs_extremal}


def _parse_kwargs(argstr: str) -> dict[str, str]:
    out: dict[str, str] = {}
    if not argstr:
        return out
    for piece in argstr.split(","):
        key, sep, val = piece.partition("=")
        if not sep or not key or not val:
            raise StateSpecError(f"malformed argument {piece!r}; expected key=value")
        if key in out:
            raise StateSpecError(f"duplicate argument {key!r}")
        out[key] = val
    return out


def _take_int(kwargs: dict[str, str], key: str, spec: str) -> int:
    if key not in kwargs:
        raise StateSpecError(f"{spec!r} needs {key}=<int>")
    try:
        return int(kwargs.pop(key))
    except ValueError as exc:
        raise StateSpecError(f"{spec!r}: {key} must be an integer") from exc


def _take_float(kwargs: dict[str, str], key: str, spec: str) -> float:
    if key not in kwargs:
        raise StateSpecError(f"{spec!r} needs {key}=<number>")
    try:
        return float(kwargs.pop(key))
    except ValueError as exc:
        raise StateSpecError(f"{spec!r}: {key} must be a number") from exc


def parse_state_spec(text: str, default_seed: Optional[int] = None) -> ParsedState:
    """Turn a designator string into a state object (see module docstring grammar)."""
    family, _, argstr = text.partition(":")
    family = family.strip()
    kwargs = _parse_kwargs(argstr.strip())
    try:
        if family in _INT_FAMILIES:
            n = _take_int(kwargs, "n", text)
            obj = _INT_FAMILIES[family](n)
            params = f"n={n}"
        elif family == "random":
            n = _take_int(kwargs, "n", text)
            seed = _take_int(kwargs, "seed", text) if "seed" in kwargs else (
                default_seed if default_seed is not None else 0)
            obj = random_pure(n, seed)
            params = f"n={n},seed={seed}"
        elif family in ("glauber", "thermal", "tmsv"):
            nbar = _take_float(kwargs, "nbar", text)
            obj = make_analytic(family, nbar)
            params = f"nbar={nbar:g}"
        else:
            raise StateSpecError(f"unknown state family {family!r}")
    except StateSpecError:
        raise
    except ValueError as exc:
        raise StateSpecError(f"{text!r}: {exc}") from exc
    if kwargs:
        raise StateSpecError(f"{text!r}: unexpected argument(s) {sorted(kwargs)}")
    return ParsedState(text=text, family=family, params=params,
                       letter=_LETTERS[family], obj=obj)


def assign_labels(parsed: Sequence[ParsedState], use_letter: bool) -> list[str]:
    """Short unique labels: single-letter family tags for chains, family names otherwise."""
    base = [p.letter if use_letter else p.family for p in parsed]
    labels = [b if base.count(b) == 1 else f"{b}({p.params})"
              for b, p in zip(base, parsed)]
    seen: dict[str, int] = {}
    out = []
    for lab in labels:
        if labels.count(lab) > 1:
            seen[lab] = seen.get(lab, 0) + 1
            lab = f"{lab}#{seen[lab]}"
        out.append(lab)
    return out


def _stdout_glyphs() -> dict[str, str]:
    encoding = getattr(sys.stdout, "encoding", None) or "ascii"
    try:
        "".join(GLYPHS_UNICODE.values()).encode(encoding)
        return GLYPHS_UNICODE
    except (UnicodeEncodeError, LookupError):
        return GLYPHS_ASCII


def verdict_line(verdict: Verdict, label_a: str, label_b: str, glyphs: dict[str, str]) -> str:
    """One-line rendering with the majorized state on the left of the order glyph."""
    rel = verdict.relation
    if rel is Relation.MAJORIZES:
        return f"{label_b} {glyphs['prec']} {label_a}"
    if rel is Relation.MAJORIZED_BY:
        return f"{label_a} {glyphs['prec']} {label_b}"
    if rel is Relation.EQUAL:
        return f"{label_a} {glyphs['equal']} {label_b}"
    return f"{label_a} {glyphs['join']} {label_b}"


def load_config_file(path: str) -> dict:
    """Read a key=value or JSON config file mirroring RunConfig fields."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StateSpecError(f"cannot read config file {path}: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise StateSpecError(f"config file {path}: invalid JSON ({exc})") from exc
        if not isinstance(raw, dict):
            raise StateSpecError(f"config file {path}: expected a JSON object")
    else:
        raw = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise StateSpecError(f"config file {path}:{lineno}: expected key=value")
            raw[key.strip()] = val.strip()
    converters = {"n_theta": int, "n_phi": int, "tol": float, "format": str,
                  "out": str, "seed": int}
    cfg: dict = {}
    for key, val in raw.items():
        if key not in converters:
            raise StateSpecError(f"config file {path}: unknown key {key!r}")
        try:
            cfg["fmt" if key == "format" else key] = converters[key](val)
        except (TypeError, ValueError) as exc:
            raise StateSpecError(f"config file {path}: bad value for {key!r}") from exc
    return cfg


def build_config(args: argparse.Namespace) -> RunConfig:
    """Layer configuration: flags > config file > defaults."""
    values: dict = {}
    if getattr(args, "config", None):
        values.update(load_config_file(args.config))
    for field, attr in (("n_theta", "n_theta"), ("n_phi", "n_phi"), ("tol", "tol"),
                        ("fmt", "fmt"), ("out", "out"), ("seed", "seed")):
        flag = getattr(args, attr, None)
        if flag is not None:
            values[field] = flag
    return RunConfig(**values)


def _open_out(path: Path):
    return open(path, "w", encoding="utf-8", newline="\n")


def _write_csv(path: Path, comments: list[str], header: list[str], rows) -> None:
    with _open_out(path) as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(repr(v) if isinstance(v, float) else str(v) for v in row) + "\n")


def _write_json(path: Path, payload: dict) -> None:
    with _open_out(path) as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def _out_path(cfg: RunConfig, default_stem: str, ext: Optional[str] = None) -> Path:
    ext = ext or cfg.fmt
    return Path(cfg.out) if cfg.out else Path(f"{default_stem}.{ext}")


def _grid_dict(grid: GridSpec) -> dict:
    return {"n_theta": grid.n_theta, "n_phi": grid.n_phi}


def _note(path: Path) -> None:
    print(f"wrote {path}", file=sys.stderr)


def cmd_qdist(cfg: RunConfig, args: argparse.Namespace) -> int:
    ps = parse_state_spec(args.state, cfg.seed)
    grid = cfg.grid
    dist = discretize_state(ps.obj, grid)
    omega = grid_directions(grid)
    path = _out_path(cfg, "qdist")
    n = grid.n_pixels
    if cfg.fmt == "csv":
        rows = zip(range(1, n + 1), omega.theta.tolist(), omega.phi.tolist(), dist.p.tolist())
        _write_csv(path, [f"state={ps.text}", f"n_theta={grid.n_theta}",
                          f"n_phi={grid.n_phi}", f"raw_mass={dist.raw_mass!r}"],
                   ["j", "theta", "phi", "p"], rows)
    else:
        _write_json(path, {
            "command": "qdist", "state": ps.text, "grid": _grid_dict(grid),
            "raw_mass": dist.raw_mass,
            "pixels": {"j": list(range(1, n + 1)), "theta": omega.theta.tolist(),
                       "phi": omega.phi.tolist(), "p": dist.p.tolist()},
        })
    _note(path)
    return 0


def cmd_compare(cfg: RunConfig, args: argparse.Namespace) -> int:
    parsed = [parse_state_spec(args.state_a, cfg.seed), parse_state_spec(args.state_b, cfg.seed)]
    labels = assign_labels(parsed, use_letter=False)
    grid = cfg.grid
    dists = [discretize_state(p.obj, grid) for p in parsed]
    curves = [lorenz(d) for d in dists]
    verdict = compare(curves[0], curves[1], cfg.tol)
    print(verdict_line(verdict, labels[0], labels[1], _stdout_glyphs()))
    path = _out_path(cfg, "compare")
    if cfg.fmt == "csv":
        rows = zip(range(1, grid.n_pixels + 1), curves[0].s.tolist(), curves[1].s.tolist())
        _write_csv(path,
                   [f"a={parsed[0].text}", f"b={parsed[1].text}",
                    f"n_theta={grid.n_theta}", f"n_phi={grid.n_phi}", f"tol={cfg.tol!r}",
                    f"verdict={verdict.relation.value}",
                    f"raw_mass_a={dists[0].raw_mass!r}", f"raw_mass_b={dists[1].raw_mass!r}"],
                   ["k", f"S_k_{labels[0]}", f"S_k_{labels[1]}"], rows)
    else:
        _write_json(path, {
            "command": "compare", "grid": _grid_dict(grid), "tol": cfg.tol,
            "states": [{"spec": p.text, "label": lab, "raw_mass": d.raw_mass}
                       for p, lab, d in zip(parsed, labels, dists)],
            "verdict": {"relation": verdict.relation.value,
                        "witnesses": list(verdict.witnesses) if verdict.witnesses else None,
                        "line": verdict_line(verdict, labels[0], labels[1], GLYPHS_ASCII)},
            "lorenz": {lab: c.s.tolist() for lab, c in zip(labels, curves)},
        })
    _note(path)
    return 0


def _chain_payload(result, parsed, labels, dists, grid, tol) -> dict:
    return {
        "grid": _grid_dict(grid), "tol": tol,
        "states": [{"spec": p.text, "label": lab} for p, lab in zip(parsed, labels)],
        "verdict_matrix": [[{"relation": v.relation.value,
                             "witnesses": list(v.witnesses) if v.witnesses else None}
                            for v in row] for row in result.matrix],
        "chain": result.chain,
        "chain_ascii": render_chain(result.layers, ascii_glyphs=True),
        "raw_masses": {lab: d.raw_mass for lab, d in zip(labels, dists)},
        "violations": list(result.violations),
    }


def cmd_chain(cfg: RunConfig, args: argparse.Namespace) -> int:
    if len(args.states) < 2:
        raise StateSpecError("chain needs at least two states")
    parsed = [parse_state_spec(s, cfg.seed) for s in args.states]
    labels = assign_labels(parsed, use_letter=True)
    grid = cfg.grid
    dists = [discretize_state(p.obj, grid) for p in parsed]
    result = partial_order(list(zip(labels, dists)), cfg.tol)
    ascii_out = _stdout_glyphs() is GLYPHS_ASCII
    print(render_chain(result.layers, ascii_glyphs=ascii_out))
    path = _out_path(cfg, "chain")
    if cfg.fmt == "csv":
        curves = [lorenz(d) for d in dists]
        rows = zip(range(1, grid.n_pixels + 1), *(c.s.tolist() for c in curves))
        _write_csv(path,
                   [f"states={' '.join(p.text for p in parsed)}",
                    f"n_theta={grid.n_theta}", f"n_phi={grid.n_phi}", f"tol={cfg.tol!r}",
                    f"chain={render_chain(result.layers, ascii_glyphs=True)}"],
                   ["k"] + [f"S_k_{lab}" for lab in labels], rows)
    else:
        _write_json(path, {"command": "chain",
                           **_chain_payload(result, parsed, labels, dists, grid, cfg.tol)})
    _note(path)
    return 0


FIGURES = {
    "fig3": ["noon:n=2", "squeezed:n=2", "hs:n=2", "phase:n=2", "coherent:n=2"],
    "fig4": ["noon:n=3", "hs:n=3", "squeezed:n=3", "phase:n=3", "coherent:n=3"],
    "fig5": ["hs:n=4", "squeezed:n=4", "noon:n=4", "phase:n=4", "coherent:n=4"],
    "fig6": ["hs:n=5", "noon:n=5", "squeezed:n=5", "phase:n=5", "coherent:n=5"],
    "fig7": ["coherent:n=2", "noon:n=6"],
    "fig8": ["tmsv:nbar=10", "thermal:nbar=10", "glauber:nbar=10"],
}


def cmd_reproduce(cfg: RunConfig, args: argparse.Namespace) -> int:
    specs = FIGURES[args.figure]
    parsed = [parse_state_spec(s, cfg.seed) for s in specs]
    labels = assign_labels(parsed, use_letter=True)
    grid = cfg.grid
    dists = [discretize_state(p.obj, grid) for p in parsed]
    result = partial_order(list(zip(labels, dists)), cfg.tol)
    curves = [lorenz(d) for d in dists]

    doubled = GridSpec(2 * grid.n_theta, 2 * grid.n_phi)
    dists2 = [discretize_state(p.obj, doubled) for p in parsed]
    result2 = partial_order(list(zip(labels, dists2)), cfg.tol)
    stable = all(v1.relation is v2.relation
                 for row1, row2 in zip(result.matrix, result2.matrix)
                 for v1, v2 in zip(row1, row2))

    base = Path(cfg.out) if cfg.out else Path(f"reproduce_{args.figure}")
    if base.suffix in (".csv", ".json"):
        base = base.with_suffix("")
    csv_path = base.with_name(base.name + "_lorenz.csv")
    json_path = base.with_name(base.name + "_verdicts.json")
    rows = zip(range(1, grid.n_pixels + 1), *(c.s.tolist() for c in curves))
    _write_csv(csv_path,
               [f"figure={args.figure}", f"states={' '.join(specs)}",
                f"n_theta={grid.n_theta}", f"n_phi={grid.n_phi}", f"tol={cfg.tol!r}",
                f"chain={render_chain(result.layers, ascii_glyphs=True)}"],
               ["k"] + [f"S_k_{lab}" for lab in labels], rows)
    payload = {"command": "reproduce", "figure": args.figure,
               **_chain_payload(result, parsed, labels, dists, grid, cfg.tol),
               "stability": {"grid_doubled": _grid_dict(doubled), "verdicts_unchanged": stable}}
    _write_json(json_path, payload)

    ascii_out = _stdout_glyphs() is GLYPHS_ASCII
    print(render_chain(result.layers, ascii_glyphs=ascii_out))
    print(f"doubled-grid stability: {'PASS' if stable else 'FAIL'}")
    _note(csv_path)
    _note(json_path)
    return 0 if stable else 1


def cmd_measures(cfg: RunConfig, args: argparse.Namespace) -> int:
    ps = parse_state_spec(args.state, cfg.seed)
    dist = discretize_state(ps.obj, cfg.grid)
    renyi_vals = [(q, renyi(dist, q)) for q in RENYI_Q_SWEEP]
    conf_vals = [(a, confidence_interval(dist, a)) for a in ALPHA_SWEEP]
    path = _out_path(cfg, "measures")
    if cfg.fmt == "csv":
        rows = ([("renyi", q, v) for q, v in renyi_vals]
                + [("confidence", a, k) for a, k in conf_vals])
        _write_csv(path, [f"state={ps.text}", f"n_theta={cfg.grid.n_theta}",
                          f"n_phi={cfg.grid.n_phi}", f"raw_mass={dist.raw_mass!r}"],
                   ["measure", "param", "value"], rows)
    else:
        _write_json(path, {
            "command": "measures", "state": ps.text, "grid": _grid_dict(cfg.grid),
            "raw_mass": dist.raw_mass,
            "renyi": {repr(q): v for q, v in renyi_vals},
            "confidence": {repr(a): k for a, k in conf_vals},
        })
    _note(path)
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n-theta", dest="n_theta", type=int, help="cos(theta) bands (default 400)")
    p.add_argument("--n-phi", dest="n_phi", type=int, help="azimuth sectors (default 400)")
    p.add_argument("--tol", type=float, help=f"comparison tolerance (default {DEFAULT_TOL:g})")
    p.add_argument("--seed", type=int, help="default seed for random:... states")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), help="output format")
    p.add_argument("--out", help="output path (base path for reproduce)")
    p.add_argument("--config", help="key=value or JSON config file")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polmaj",
        description="Majorization of SU(2) Husimi polarization distributions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qdist", help="discretized Q distribution of one state")
    p.add_argument("state")
    _add_common(p)
    p.set_defaults(func=cmd_qdist)

    p = sub.add_parser("compare", help="majorization verdict for two states")
    p.add_argument("state_a")
    p.add_argument("state_b")
    _add_common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("chain", help="verdict matrix and chain over a state set")
    p.add_argument("states", nargs="+")
    _add_common(p)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("reproduce", help="built-in figure dataset with stability check")
    p.add_argument("figure", choices=sorted(FIGURES))
    _add_common(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("measures", help="Renyi entropies and confidence intervals")
    p.add_argument("state")
    _add_common(p)
    p.set_defaults(func=cmd_measures)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        return args.func(cfg, args)
    except EvaluationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (StateSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
