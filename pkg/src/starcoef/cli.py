"""Command-line front end.

Exit statuses: 0 success, 1 a check failed, 2 usage error,
3 parameter conditions/preconditions not met, 4 output I/O error.

Relative ``--output`` paths are resolved against ``$STARCOEF_OUTPUT_DIR``
when that variable is set.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .caratheodory import (
    TWO_PI,
    lemma22_extremal,
    measure_from_row,
    sample_measure,
    sample_measure_batch,
)
from .extremal import SearchConfig, parameter_table, search, table_to_csv, table_to_jsonl
from .functionals import (
    THEOREM_KINDS,
    FunctionalKind,
    FunctionalSpec,
    decomposition_parts,
    evaluate_array,
    theorem_bound,
)
from .starlike import closed_form_array, residual_array

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CONDITIONS = 3
EXIT_IO = 4

OUTPUT_DIR_ENV = "STARCOEF_OUTPUT_DIR"
COMMANDS = ("verify-identities", "check-bounds", "search", "table", "sample")
PARAM_FLAGS = {"gamma": "gamma", "eta": "eta", "mu": "mu", "xi": "xi", "zeta": "zeta",
               "lambda": "lam"}

# identity name -> (highest coefficient index it needs, tolerance)
IDENTITIES = {
    "recursion-residual": (2, 1e-12),
    "closed-forms": (5, 1e-12),
    "decomposition-a4-gamma": (4, 1e-11),
    "decomposition-a4-gamma-eta": (4, 1e-11),
    "decomposition-a5-mu": (5, 1e-11),
    "decomposition-a5-xi-zeta": (5, 1e-11),
    "lemma-coefficient-bound": (1, 1e-12),
    "lemma-c2-inequality": (2, 1e-10),
    "lemma-c2-extremal": (2, 1e-10),
}
N_PARAM_TUPLES = 50
N_EXTREMAL_INSTANCES = 200
BOUND_SLACK = 1e-9


class UsageError(Exception):
    pass


class ConditionError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    samples: int = 100000
    atoms: int = 4
    order: int = 6
    output_format: str | None = None
    output_path: str | None = None
    kind: FunctionalKind | None = None
    params: dict = field(default_factory=dict)
    identities: tuple[str, ...] = tuple(IDENTITIES)
    restarts: int = 50
    max_iters: int = 2000
    tol: float = 1e-10

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        for name in ("samples", "atoms", "order", "restarts", "max_iters"):
            if getattr(self, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be positive")
        if self.seed < 0:
            raise UsageError("--seed must be nonnegative")
        if self.kind is not None and self.kind.min_order > self.order and self.command != "table":
            raise UsageError(f"{self.kind.value} needs --order >= {self.kind.min_order}")


def fmt_text(x: float) -> str:
    return f"{x:.12g}"


def fmt6(x: float | None) -> str:
    if x is None:
        return "none"
    return format(round(x, 6) + 0.0, ".6f")


def parse_grid(text: str) -> list[float]:
    """``start:stop:step`` (stop included within half a step) or a single value."""
    parts = text.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise UsageError(f"grid {text!r} is not start:stop:step")
    start, stop, step = (float(p) for p in parts)
    if not step > 0 or stop < start:
        raise UsageError(f"grid {text!r} needs step > 0 and stop >= start")
    n = int(math.floor((stop - start) / step + 0.5))
    return [start + i * step for i in range(n + 1)]


def resolve_output(path: str) -> str:
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def write_atomic(path: str, text: str) -> str:
    target = resolve_output(path)
    directory = os.path.dirname(os.path.abspath(target))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return target


def _spec(cfg: RunConfig) -> FunctionalSpec:
    if cfg.kind is None:
        raise UsageError("--kind is required")
    missing = [n for n in cfg.kind.param_names if cfg.params.get(n) is None]
    if missing:
        raise UsageError(f"{cfg.kind.value} needs " + ", ".join(f"--{n}" for n in missing))
    return FunctionalSpec(cfg.kind, {n: cfg.params[n] for n in cfg.kind.param_names})


# ---------------------------------------------------------------------------
# verify-identities

def _random_specs(rng: np.random.Generator, kind: FunctionalKind, count: int):
    specs = []
    for _ in range(count):
        vals = rng.uniform(-1.0, 1.0, len(kind.param_names))
        specs.append(FunctionalSpec(kind, dict(zip(kind.param_names, vals))))
    return specs


def verify_identities(seed: int, samples: int, max_atoms: int, order: int,
                      identities: Sequence[str] = tuple(IDENTITIES)) -> list[dict]:
    """Max residual of each identity over seeded random measures.

    Each entry holds ``name``, ``max_residual``, ``tol``, ``passed`` and,
    for measure-based identities, the serialized ``witness`` attaining the
    maximum.
    """
    for name in identities:
        need, _ = IDENTITIES[name]
        if need > order:
            raise UsageError(f"identity {name} needs --order >= {need}")
    W, T = sample_measure_batch(seed, samples, max_atoms)
    c, a = kernels.batch_coeffs(W, T, max(order, 4))
    rng = np.random.default_rng([seed, 1])
    out = []

    def record(name, resid, witness_idx=None, witness=None):
        tol = IDENTITIES[name][1]
        worst = float(np.max(resid)) if np.size(resid) else 0.0
        entry = {"name": name, "max_residual": worst, "tol": tol, "passed": worst <= tol}
        if witness_idx is not None:
            k = int(np.argmax(resid))
            entry["witness"] = measure_from_row(W[k], T[k]).to_dict()
        elif witness is not None:
            entry["witness"] = witness
        out.append(entry)

    for name in identities:
        if name == "recursion-residual":
            record(name, residual_array(c[:, :order], a), witness_idx=True)
        elif name == "closed-forms":
            closed = closed_form_array(*(c[:, k] for k in range(4)))
            resid = np.zeros(samples)
            for m, val in zip(range(2, 6), closed):
                rel = np.abs(val - a[:, m]) / np.maximum(1.0, np.abs(a[:, m]))
                resid = np.maximum(resid, rel)
            record(name, resid, witness_idx=True)
        elif name.startswith("decomposition-"):
            kind = FunctionalKind(name[len("decomposition-"):])
            resid = np.zeros(samples)
            for spec in _random_specs(rng, kind, N_PARAM_TUPLES):
                value = evaluate_array(a, spec)
                rhs = np.abs(decomposition_parts(c[:, 0], c[:, 1], c[:, 2], c[:, 3], spec))
                resid = np.maximum(resid, np.abs(rhs - value) / np.maximum(1.0, value))
            record(name, resid, witness_idx=True)
        elif name == "lemma-coefficient-bound":
            record(name, np.max(np.abs(c[:, :order]), axis=1) - 2.0, witness_idx=True)
        elif name == "lemma-c2-inequality":
            c1, c2 = c[:, 0], c[:, 1]
            excess = np.abs(c2 - c1 ** 2 / 2) - (2 - np.abs(c1) ** 2 / 2)
            record(name, excess, witness_idx=True)
        elif name == "lemma-c2-extremal":
            worst, witness = 0.0, None
            for _ in range(N_EXTREMAL_INSTANCES):
                c1 = 2.0 * math.sqrt(rng.uniform()) * complex(np.exp(1j * rng.uniform(0, TWO_PI)))
                eps = complex(np.exp(1j * rng.uniform(0, TWO_PI)))
                p = lemma22_extremal(c1, eps, max(order, 2))
                gap = abs(abs(p[2] - c1 ** 2 / 2) - (2 - abs(c1) ** 2 / 2))
                if witness is None or gap > worst:
                    worst = gap
                    witness = {"c1": [c1.real, c1.imag], "eps": [eps.real, eps.imag]}
            record(name, np.array([worst]), witness=witness)
    return out


def cmd_verify_identities(cfg: RunConfig) -> tuple[int, str]:
    results = verify_identities(cfg.seed, cfg.samples, cfg.atoms, cfg.order, cfg.identities)
    ok = all(r["passed"] for r in results)
    if cfg.output_format == "json":
        text = json.dumps({"seed": cfg.seed, "samples": cfg.samples, "atoms": cfg.atoms,
                           "order": cfg.order, "passed": ok, "identities": results},
                          indent=2) + "\n"
    elif cfg.output_format == "csv":
        lines = ["identity,max_residual,tol,passed"]
        lines += [f"{r['name']},{r['max_residual']!r},{r['tol']!r},{str(r['passed']).lower()}"
                  for r in results]
        text = "\n".join(lines) + "\n"
    else:
        lines = [f"verify-identities seed={cfg.seed} samples={cfg.samples} "
                 f"atoms={cfg.atoms} order={cfg.order}"]
        for r in results:
            status = "ok  " if r["passed"] else "FAIL"
            lines.append(f"{status} {r['name']:28s} max_residual={fmt_text(r['max_residual'])}"
                         f" tol={r['tol']:g}")
            if not r["passed"]:
                lines.append(f"     witness={json.dumps(r['witness'])}")
        lines.append("PASS" if ok else "FAIL")
        text = "\n".join(lines) + "\n"
    return (EXIT_OK if ok else EXIT_FAIL), text


# ---------------------------------------------------------------------------
# check-bounds

def fuzz_bound(spec: FunctionalSpec, seed: int, samples: int, max_atoms: int) -> dict:
    """Evaluate ``spec`` on seeded random measures against its closed-form bound."""
    report = theorem_bound(spec)
    if not report.holds:
        raise ConditionError(f"conditions fail for {spec.label()}: {', '.join(report.failing())}")
    W, T = sample_measure_batch(seed, samples, max_atoms)
    p0, p1 = spec.values
    vals = kernels.batch_functional(W, T, spec.kind.code, p0, p1)
    k = int(np.argmax(vals))
    bound = report.bound
    violations = int(np.count_nonzero(vals > bound + BOUND_SLACK))
    return {
        "spec": spec.to_dict(),
        "bound": bound,
        "samples": samples,
        "max_value": float(vals[k]),
        "worst_ratio": float(vals[k] / bound) if bound > 0 else math.inf,
        "violations": violations,
        "argmax_measure": measure_from_row(W[k], T[k]).to_dict(),
    }


def cmd_check_bounds(cfg: RunConfig) -> tuple[int, str]:
    spec = _spec(cfg)
    if spec.kind not in THEOREM_KINDS:
        raise ConditionError(f"no closed-form bound for {spec.kind.value}")
    res = fuzz_bound(spec, cfg.seed, cfg.samples, cfg.atoms)
    ok = res["violations"] == 0
    if cfg.output_format == "json":
        text = json.dumps({**res, "passed": ok}, indent=2) + "\n"
    elif cfg.output_format == "csv":
        names = spec.kind.param_names
        head = ",".join([*names, "bound", "samples", "max_value", "worst_ratio", "violations"])
        row = ",".join([*(repr(spec.params[n]) for n in names), repr(res["bound"]),
                        str(res["samples"]), repr(res["max_value"]), repr(res["worst_ratio"]),
                        str(res["violations"])])
        text = head + "\n" + row + "\n"
    else:
        text = (f"check-bounds {spec.label()} samples={cfg.samples} seed={cfg.seed}\n"
                f"bound={fmt_text(res['bound'])} max_value={fmt_text(res['max_value'])} "
                f"worst_ratio={fmt_text(res['worst_ratio'])} violations={res['violations']}\n"
                f"argmax_measure={json.dumps(res['argmax_measure'])}\n"
                + ("PASS\n" if ok else "FAIL\n"))
    return (EXIT_OK if ok else EXIT_FAIL), text


# ---------------------------------------------------------------------------
# search, table, sample

def _search_config(cfg: RunConfig) -> SearchConfig:
    return SearchConfig(n_atoms=cfg.atoms, restarts=cfg.restarts, max_iters=cfg.max_iters,
                        tol=cfg.tol, seed=cfg.seed)


def cmd_search(cfg: RunConfig) -> tuple[int, str, str | None]:
    spec = _spec(cfg)
    result = search(spec, _search_config(cfg))
    summary = f"best={fmt6(result.best_value)} bound={fmt6(result.bound)} gap={fmt6(result.gap)}"
    if cfg.output_format == "text":
        artifact = (summary + f"\nbest_value={fmt_text(result.best_value)} converged="
                    f"{str(result.converged).lower()} iterations={result.iterations_used}\n"
                    f"best_measure={json.dumps(result.best_measure.to_dict())}\n")
    else:
        artifact = json.dumps(result.to_dict(), indent=2) + "\n"
    return EXIT_OK, summary + "\n", artifact


def cmd_table(cfg: RunConfig, grid: dict) -> tuple[int, str, str]:
    kind = cfg.kind
    rows = parameter_table(kind, grid, _search_config(cfg))
    artifact = table_to_jsonl(kind, rows) if cfg.output_format == "json" else table_to_csv(kind, rows)
    met = [r for r in rows if r.conditions_met]
    worst = min((r.gap for r in met), default=None)
    summary = (f"rows={len(rows)} conditions_met={len(met)} "
               f"min_gap={fmt6(worst)}\n")
    return EXIT_OK, summary, artifact


def cmd_sample(cfg: RunConfig) -> tuple[int, str, str]:
    m = sample_measure(cfg.seed, cfg.atoms)
    artifact = json.dumps(m.to_dict()) + "\n"
    summary = f"atoms={m.n_atoms} seed={cfg.seed} weight_sum={fmt_text(float(m.weights.sum()))}\n"
    return EXIT_OK, summary, artifact


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starcoef",
        description="Coefficient functionals of starlike functions: identities, "
                    "bound fuzzing, extremal search.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_choices=("csv", "json", "text")):
        p.add_argument("--seed", type=int, default=0, help="base RNG seed (default 0)")
        p.add_argument("--samples", type=int, default=100000,
                       help="random measures to draw (default 100000)")
        p.add_argument("--atoms", type=int, default=4, help="atoms per measure (default 4)")
        p.add_argument("--order", type=int, default=6, help="truncation order (default 6)")
        p.add_argument("--format", dest="output_format", choices=fmt_choices, default=None,
                       help="artifact format; default depends on the command")
        p.add_argument("--output", dest="output_path", default=None,
                       help="write here instead of stdout; relative paths use $STARCOEF_OUTPUT_DIR")

    def functional(p, grid=False):
        p.add_argument("--kind", required=True, type=_kind_arg,
                       help="a4-gamma, a4-gamma-eta, a5-mu, a5-xi-zeta or fekete-szego")
        kind = str if grid else float
        for name, dest in PARAM_FLAGS.items():
            p.add_argument(f"--{name}", dest=dest, type=kind, default=None,
                           help="start:stop:step grid or a single value" if grid else None)

    def search_opts(p):
        p.add_argument("--restarts", type=int, default=50, help="local searches (default 50)")
        p.add_argument("--max-iters", type=int, default=2000,
                       help="Nelder-Mead iterations per restart (default 2000)")
        p.add_argument("--tol", type=float, default=1e-10, help="simplex tolerance (default 1e-10)")

    p = sub.add_parser("verify-identities", help="batch identity checks over random measures")
    common(p)
    p.add_argument("--identity", dest="identities", action="append", choices=list(IDENTITIES),
                   help="restrict to this identity (repeatable); default all")

    p = sub.add_parser("check-bounds", help="fuzz a functional against its closed-form bound")
    common(p)
    functional(p)

    p = sub.add_parser("search", help="multistart extremal search for one functional")
    common(p)
    functional(p)
    search_opts(p)

    p = sub.add_parser("table", help="bound vs search maximum over a parameter grid")
    common(p)
    functional(p, grid=True)
    search_opts(p)

    p = sub.add_parser("sample", help="draw a random Herglotz measure")
    common(p)
    return parser


def _kind_arg(text: str) -> FunctionalKind:
    try:
        return FunctionalKind.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"unknown kind {text!r}; choose from {[k.value for k in FunctionalKind]}")


def _config(ns: argparse.Namespace) -> RunConfig:
    params = {}
    for name, dest in PARAM_FLAGS.items():
        v = getattr(ns, dest, None)
        if v is not None:
            params[name] = v
    kwargs = dict(command=ns.command, seed=ns.seed, samples=ns.samples, atoms=ns.atoms,
                  order=ns.order, output_format=ns.output_format, output_path=ns.output_path,
                  kind=getattr(ns, "kind", None), params=params)
    if getattr(ns, "identities", None):
        kwargs["identities"] = tuple(ns.identities)
    for name in ("restarts", "max_iters", "tol"):
        if hasattr(ns, name):
            kwargs[name] = getattr(ns, name)
    return RunConfig(**kwargs)


def run(cfg: RunConfig) -> tuple[int, str, str | None]:
    """Execute a command; returns (status, stdout text, artifact text or None)."""
    if cfg.command == "verify-identities":
        status, text = cmd_verify_identities(cfg)
        return status, text, text
    if cfg.command == "check-bounds":
        status, text = cmd_check_bounds(cfg)
        return status, text, text
    if cfg.command == "search":
        return cmd_search(cfg)
    if cfg.command == "sample":
        return cmd_sample(cfg)
    kind = cfg.kind
    grid = {}
    for name in kind.param_names:
        if cfg.params.get(name) is None:
            raise UsageError(f"{kind.value} needs --{name}")
        grid[name] = parse_grid(cfg.params[name])
    return cmd_table(cfg, grid)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _config(ns)
        status, text, artifact = run(cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"starcoef: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConditionError as exc:
        print(f"starcoef: conditions not met: {exc}", file=sys.stderr)
        return EXIT_CONDITIONS
    if cfg.output_path is not None and artifact is not None:
        try:
            write_atomic(cfg.output_path, artifact)
        except OSError as exc:
            print(f"starcoef: cannot write {cfg.output_path}: {exc}", file=sys.stderr)
            return EXIT_IO
        sys.stdout.write(text)
    elif cfg.command in ("verify-identities", "check-bounds", "search"):
        sys.stdout.write(text)
    else:
        sys.stdout.write(artifact)
    return status


if __name__ == "__main__":
    sys.exit(main())
