"""Command-line front end.

Subcommands:

* ``repro FIGURE_ID``   - reproduce a catalogued parameter set, write its
  data (CSV/JSON) and optionally a rendered figure, and enforce the preset's
  quantitative checks (exit 2 on any violation);
* ``run``               - ad-hoc model run from flags or a JSON config;
* ``sweep``             - scalar summaries or regime labels over a 2-axis
  parameter grid;
* ``lanczos``           - tridiagonalize a user matrix (direct recursion or
  the moments route).

Exit codes: 0 success, 1 usage error, 2 numerical/invariant failure.
Identical invocations produce identical output bytes (floats are written
with 17 significant digits and newline line endings).  The environment
variable KRYLOV_SEED only affects randomized self-test fixtures in the
test suite, never CLI output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .errors import KrylovOpticsError
from .figures import FIGURES
from .lanczos import lanczos_from_moments, moments, tridiagonalize
from .models import ModelFamily, ModelSpec, run_model, sweep as run_sweep

_EXIT_OK, _EXIT_USAGE, _EXIT_NUMERIC = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as exit code 1."""

    def error(self, message):
        raise _UsageError(message)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _trace_csv(trace, probabilities: bool) -> str:
    cols = ["t", "C"]
    arrays = [trace.t, trace.c]
    if trace.dev is not None:
        cols.append("dev")
        arrays.append(trace.dev)
    if probabilities and trace.p is not None:
        cols.extend(f"p{n}" for n in range(trace.p.shape[1]))
        arrays.extend(trace.p.T)
    lines = [",".join(cols)]
    for row in zip(*arrays):
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _trace_json(trace, spec: ModelSpec, probabilities: bool) -> str:
    payload = {
        "family": spec.family.value,
        "params": {k: spec.params[k] for k in sorted(spec.params)},
        "method": trace.method,
        "t": list(trace.t),
        "C": list(trace.c),
    }
    if trace.dev is not None:
        payload["max_route_deviation"] = trace.max_route_deviation
        payload["dev"] = list(trace.dev)
    if probabilities and trace.p is not None:
        payload["p"] = [list(row) for row in trace.p]
    return json.dumps(payload, indent=2) + "\n"


def _savefig(fig, path: str) -> None:
    # fixed hashsalt and no creation date: identical runs, identical bytes
    import matplotlib
    matplotlib.rcParams["svg.hashsalt"] = "krylov-optics"
    fig.savefig(path, metadata={"Date": None} if path.endswith(".svg") else None)


def _plot_trace(trace, title: str, path: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if trace.dev is not None:
        fig, (ax, axd) = plt.subplots(
            2, 1, figsize=(7, 5), sharex=True,
            gridspec_kw={"height_ratios": [3, 1]})
        axd.semilogy(trace.t, np.maximum(trace.dev, 1e-18), lw=0.8, color="tab:red")
        axd.set_ylabel("route dev")
        axd.set_xlabel("t")
    else:
        fig, ax = plt.subplots(figsize=(7, 4))
        ax.set_xlabel("t")
    ax.plot(trace.t, trace.c, lw=1.2)
    ax.set_ylabel("C(t)")
    ax.set_title(title)
    fig.tight_layout()
    _savefig(fig, path)
    plt.close(fig)


def _maybe_plot(fn, *args) -> None:
    """Plotting must never change the exit code."""
    try:
        fn(*args)
    except Exception as exc:  # pragma: no cover - depends on backend state
        print(f"warning: plotting failed: {exc}", file=sys.stderr)


# ---------------------------------------------------------------------------
# flag <-> parameter plumbing
# ---------------------------------------------------------------------------

_PARAM_FLAGS = ("j", "alpha", "gamma", "delta", "omega0", "omega", "b0", "eta",
                "f0", "g", "h", "eta0", "tau", "g1", "g2", "kick_period", "chi")


def _add_model_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--family", choices=[f.value for f in ModelFamily])
    for name in _PARAM_FLAGS:
        sub.add_argument("--" + name.replace("_", "-"), type=float, dest=name)
    sub.add_argument("--truncation", type=int)
    sub.add_argument("--t-start", type=float, dest="t_start")
    sub.add_argument("--t-end", type=float, dest="t_end")
    sub.add_argument("--samples", type=int)
    sub.add_argument("--k-max", type=int, dest="k_max")
    sub.add_argument("--method", choices=["closed", "numeric", "both"])
    sub.add_argument("--probs", action="store_true", default=None,
                     help="emit occupation probability columns")
    sub.add_argument("--config", help="flat JSON file mirroring flag names; "
                                      "flags win on conflict")


def _merge_config(args: argparse.Namespace) -> dict:
    merged: dict = {}
    if getattr(args, "config", None):
        try:
            loaded = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise _UsageError(f"cannot read config: {exc}") from None
        if not isinstance(loaded, dict):
            raise _UsageError("config must be a flat JSON object")
        merged.update(loaded)
    for key, value in vars(args).items():
        if value is not None and key not in ("config", "func"):
            merged[key] = value
    return merged


def _spec_from_options(opt: dict) -> ModelSpec:
    family_name = opt.get("family")
    if not family_name:
        raise _UsageError("--family is required")
    try:
        family = ModelFamily(family_name)
    except ValueError:
        raise _UsageError(f"unknown family {family_name!r}") from None
    params = {k: float(opt[k]) for k in _PARAM_FLAGS if k in opt}
    try:
        return ModelSpec(family, params, truncation=opt.get("truncation"))
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _grid_from_options(opt: dict, spec: ModelSpec) -> np.ndarray:
    if spec.family is ModelFamily.SU2_KICKED:
        k_max = int(opt.get("k_max", 0))
        if k_max < 1:
            raise _UsageError("kicked family needs --k-max >= 1")
        return np.arange(0, k_max + 1, dtype=float)
    t_start = float(opt.get("t_start", 0.0))
    if "t_end" not in opt:
        raise _UsageError("--t-end is required")
    t_end = float(opt["t_end"])
    samples = int(opt.get("samples", 1001))
    if not t_end > t_start:
        raise _UsageError("empty time range: need t_end > t_start")
    if samples < 2:
        raise _UsageError("need at least 2 samples")
    return np.linspace(t_start, t_end, samples)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_repro(args: argparse.Namespace) -> int:
    targets = sorted(FIGURES) if args.figure_id == "all" else [args.figure_id]
    unknown = [t for t in targets if t not in FIGURES]
    if unknown:
        raise _UsageError(f"unknown figure id {unknown[0]!r}; "
                          f"choose from {', '.join(sorted(FIGURES))} or 'all'")
    outdir = Path(args.output or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    failures = 0
    for fid in targets:
        preset = FIGURES[fid]
        trace = preset.run()
        ext = "json" if args.format == "json" else "csv"
        path = outdir / f"{fid}.{ext}"
        if ext == "csv":
            _write_text(str(path), _trace_csv(trace, probabilities=False))
        else:
            _write_text(str(path), _trace_json(trace, preset.spec, False))
        if args.plot:
            plot_path = Path(args.plot)
            if len(targets) > 1 or plot_path.is_dir():
                plot_path.mkdir(parents=True, exist_ok=True)
                plot_path = plot_path / f"{fid}.svg"
            _maybe_plot(_plot_trace, trace, f"{fid}: {preset.description}",
                        str(plot_path))
        for result in preset.evaluate(trace):
            status = "pass" if result.passed else "FAIL"
            line = f"{fid}: {status}: {result.name}: {result.detail}"
            print(line, file=sys.stderr if not result.passed else sys.stdout)
            failures += 0 if result.passed else 1
    return _EXIT_NUMERIC if failures else _EXIT_OK


def _cmd_run(args: argparse.Namespace) -> int:
    opt = _merge_config(args)
    spec = _spec_from_options(opt)
    grid = _grid_from_options(opt, spec)
    probabilities = bool(opt.get("probs"))
    trace = run_model(spec, grid, method=opt.get("method", "both"),
                      tol=args.tol, probabilities=probabilities)
    if args.format == "json":
        _write_text(args.output, _trace_json(trace, spec, probabilities))
    else:
        _write_text(args.output, _trace_csv(trace, probabilities))
    if args.plot:
        _maybe_plot(_plot_trace, trace, spec.family.value, args.plot)
    if not trace.routes_agree:
        print(f"route deviation {trace.max_route_deviation:.3e} exceeds "
              f"tolerance {args.tol:g}", file=sys.stderr)
        return _EXIT_NUMERIC
    return _EXIT_OK


def _parse_axis(text: str) -> tuple[str, np.ndarray]:
    try:
        name, span = text.split("=", 1)
        start, stop, count = span.split(":")
        values = np.linspace(float(start), float(stop), int(count))
    except ValueError:
        raise _UsageError(
            f"bad axis {text!r}: expected NAME=START:STOP:COUNT") from None
    return name.strip(), values


def _cmd_sweep(args: argparse.Namespace) -> int:
    opt = _merge_config(args)
    axes_raw = opt.get("axis") or []
    if len(axes_raw) != 2:
        raise _UsageError("sweep needs exactly two --axis NAME=START:STOP:COUNT")
    axes = tuple(_parse_axis(a) for a in axes_raw)
    spec = _spec_from_options(opt)
    summary = opt.get("summary", "regime")
    grid = None
    if summary != "regime":
        grid = _grid_from_options(opt, spec)
    try:
        result = run_sweep(spec, axes, t_grid=grid, summary=summary,
                           method=opt.get("method", "closed"),
                           threads=args.threads)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    (name1, name2) = result.axis_names
    vals1, vals2 = result.axis_values
    if args.format == "json":
        payload = {
            "axes": {name1: list(vals1), name2: list(vals2)},
            "summary": summary,
            "values": [list(row) for row in result.values],
            "errors": [{"i": i, "j": j, "message": m} for i, j, m in result.errors],
        }
        _write_text(args.output, json.dumps(payload, indent=2) + "\n")
    else:
        header = [f"{name1}\\{name2}"] + [_fmt(v) for v in vals2]
        lines = [",".join(header)]
        for i, v1 in enumerate(vals1):
            row = [_fmt(v1)]
            for j in range(len(vals2)):
                cell = result.values[i][j]
                row.append(cell if isinstance(cell, str) else _fmt(cell))
            lines.append(",".join(row))
        _write_text(args.output, "\n".join(lines) + "\n")
    if args.plot:
        _maybe_plot(_plot_sweep, result, summary, args.plot)
    for i, j, message in result.errors:
        print(f"cell ({name1}={_fmt(vals1[i])}, {name2}={_fmt(vals2[j])}) "
              f"failed: {message}", file=sys.stderr)
    return _EXIT_OK


def _plot_sweep(result, summary: str, path: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    (name1, name2) = result.axis_names
    vals1, vals2 = result.axis_values
    fig, ax = plt.subplots(figsize=(6, 5))
    if summary == "regime":
        order = ["oscillatory", "quadratic", "exponential", "error"]
        data = np.array([[order.index(v) if v in order else 3 for v in row]
                         for row in result.values], dtype=float)
        im = ax.imshow(data, origin="lower", aspect="auto", vmin=0, vmax=3,
                       cmap="viridis",
                       extent=(vals2[0], vals2[-1], vals1[0], vals1[-1]))
        cbar = fig.colorbar(im, ax=ax, ticks=range(4))
        cbar.ax.set_yticklabels(order)
    else:
        data = np.asarray(result.values, dtype=float)
        im = ax.imshow(data, origin="lower", aspect="auto",
                       extent=(vals2[0], vals2[-1], vals1[0], vals1[-1]))
        fig.colorbar(im, ax=ax, label=summary)
    ax.set_xlabel(name2)
    ax.set_ylabel(name1)
    ax.set_title(f"{summary} sweep")
    fig.tight_layout()
    _savefig(fig, path)
    plt.close(fig)


def _load_complex_json(path: str, expect_square: bool):
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        dim = int(raw["dim"])
        re = np.asarray(raw["re"], dtype=float)
        im = np.asarray(raw.get("im", np.zeros_like(re)), dtype=float)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from None
    data = re + 1j * im
    if expect_square:
        if data.size != dim * dim:
            raise _UsageError(f"{path}: expected {dim}x{dim} entries")
        return data.reshape(dim, dim)
    if data.size != dim:
        raise _UsageError(f"{path}: expected a length-{dim} vector")
    return data.reshape(dim)


def _cmd_lanczos(args: argparse.Namespace) -> int:
    h = _load_complex_json(args.matrix_file, expect_square=True)
    seed = _load_complex_json(args.seed_file, expect_square=False)
    if args.method == "direct":
        tri = tridiagonalize(h, seed)
    else:
        dim = h.shape[0]
        mu = moments(h, seed, 2 * dim)
        tri = lanczos_from_moments(mu)
    payload = {
        "method": args.method,
        "a": list(tri.a),
        "b": list(tri.b),
    }
    if tri.basis is not None:
        payload["basis"] = {
            "re": [list(v.real) for v in tri.basis],
            "im": [list(v.imag) for v in tri.basis],
        }
    _write_text(args.output, json.dumps(payload, indent=2) + "\n")
    return _EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--output",
                        help="output path ('-' = stdout; a directory for repro)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--plot", help="render a figure (SVG/PNG by extension)")
    common.add_argument("--tol", type=float, default=1e-8,
                        help="route-agreement gate for `run --method both`")
    common.add_argument("--threads", type=int, default=1,
                        help="sweep concurrency (0 = all cores)")

    parser = _Parser(
        prog="krylov-optics",
        description="Krylov spread complexity of driven quantum-optical models")
    sub = parser.add_subparsers(dest="command", required=True)

    p_repro = sub.add_parser("repro", parents=[common],
                             help="reproduce a catalogued figure")
    p_repro.add_argument("figure_id",
                         help=f"one of {', '.join(sorted(FIGURES))}, or 'all'")
    p_repro.set_defaults(func=_cmd_repro)

    p_run = sub.add_parser("run", parents=[common], help="ad-hoc model run")
    _add_model_flags(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="2-axis parameter sweep")
    _add_model_flags(p_sweep)
    p_sweep.add_argument("--axis", action="append",
                         help="NAME=START:STOP:COUNT (give exactly twice; "
                              "'delta' sweeps the detuning omega0-omega)")
    p_sweep.add_argument("--summary", choices=["c_max", "c_end", "regime"])
    p_sweep.set_defaults(func=_cmd_sweep)

    p_lan = sub.add_parser("lanczos", parents=[common],
                           help="tridiagonalize a matrix from JSON")
    p_lan.add_argument("matrix_file", help='JSON {"dim", "re", "im"} row-major')
    p_lan.add_argument("seed_file", help='JSON {"dim", "re", "im"} vector')
    p_lan.add_argument("--method", choices=["direct", "moments"], default="direct")
    p_lan.set_defaults(func=_cmd_lanczos)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except KrylovOpticsError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return _EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
