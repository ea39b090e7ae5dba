"""Command-line frontend.

Subcommands ``weak-value``, ``simulate``, ``reconstruct`` and ``sweep``.
Values are resolved in the order built-in default < ``--config`` file <
command line. Reports are JSON (``inputs``, ``results``, ``seed``,
``version``) or CSV; failures are emitted as ``{"error": {"kind",
"message"}}`` with a nonzero exit status.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import secrets
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .errors import ArgumentError, UndefinedRatio, WeakPathError
from .experiment import CouplingConfig, coupled_state, run
from .hilbert import (
    SYMMETRIC,
    PathState,
    arm_index,
    make_path_state,
    path_projector,
    postselect_projector,
)
from .reconstruction import bias_sweep, reconstruct
from .tomography import bloch_exact, measure
from .tsvf import (
    amplitude_ratio,
    generalized_weak_value,
    modified_projection_weak_value,
    projection_weak_values,
)

SWEEP_HEADER = ["alpha", "ratio_re", "ratio_im", "true_re", "true_im", "abs_deviation"]
WEAK_ALPHA_LIMIT = 0.1


def parse_complex(text: str) -> complex:
    """``RE`` or ``RE,IM``."""
    parts = [p.strip() for p in str(text).split(",")]
    if not 1 <= len(parts) <= 2:
        raise ArgumentError(f"expected RE[,IM], got {text!r}")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise ArgumentError(f"expected RE[,IM], got {text!r}") from None
    return complex(values[0], values[1] if len(values) == 2 else 0.0)


def parse_grid(text: str) -> list[float]:
    """``start:stop:n`` with both endpoints included."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ArgumentError(f"expected start:stop:n, got {text!r}")
    try:
        start, stop, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ArgumentError(f"expected start:stop:n, got {text!r}") from None
    if n < 2:
        raise ArgumentError("alpha grid needs at least 2 points")
    step = (stop - start) / (n - 1)
    return [start + k * step if k < n - 1 else stop for k in range(n)]


def _arm(text: str) -> str:
    text = str(text).strip().upper()
    arm_index(text)
    return text


def _seed(text: str) -> int:
    value = int(str(text), 0)
    if not 0 <= value < 1 << 64:
        raise ArgumentError("seed must be an unsigned 64-bit integer")
    return value


def _shots(text: str) -> int:
    value = int(str(text))
    if value < 1:
        raise ArgumentError("shots must be >= 1")
    return value


def _choice(*allowed: str) -> Callable[[str], str]:
    def convert(text: str) -> str:
        text = str(text).strip().lower()
        if text not in allowed:
            raise ArgumentError(f"expected one of {allowed}, got {text!r}")
        return text

    return convert


# dest -> (converter, default)
OPTIONS: dict[str, tuple[Callable[[str], Any], Any]] = {
    "a": (parse_complex, None),
    "b": (parse_complex, None),
    "pf_a": (parse_complex, None),
    "pf_b": (parse_complex, None),
    "arm": (_arm, "II"),
    "alpha": (float, 0.0),
    "shots": (_shots, None),
    "seed": (_seed, None),
    "output": (_choice("json", "csv"), None),
    "method": (_choice("weak", "strong"), None),
    "alphas": (str, None),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise ArgumentError(message)


def _add_global(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", default=argparse.SUPPRESS, help="json or csv")
    p.add_argument("--config", default=argparse.SUPPRESS, help="key = value file")
    p.add_argument("--seed", default=argparse.SUPPRESS, help="unsigned 64-bit seed")


def _add_run(p: argparse.ArgumentParser) -> None:
    s = argparse.SUPPRESS
    p.add_argument("--a", default=s, help="amplitude on path I, RE[,IM]")
    p.add_argument("--b", default=s, help="amplitude on path II, RE[,IM]")
    p.add_argument("--pf-a", dest="pf_a", default=s, help="post-selection amplitude on path I")
    p.add_argument("--pf-b", dest="pf_b", default=s, help="post-selection amplitude on path II")
    p.add_argument("--arm", default=s, help="coupled arm, I or II (default II)")
    p.add_argument("--alpha", default=s, help="coupling strength in radians (default 0)")
    p.add_argument("--shots", default=s, help="shots per tomography basis")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="weakpath", description=__doc__.splitlines()[0])
    _add_global(parser)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    for name, help_text in [
        ("weak-value", "standard and coupling-modified weak values"),
        ("simulate", "run the interferometer and the spin tomography"),
        ("reconstruct", "estimate the path state (weak or strong method)"),
        ("sweep", "bias of the weak-value ratio over a grid of alpha"),
    ]:
        p = sub.add_parser(name, help=help_text)
        _add_global(p)
        _add_run(p)
        if name == "reconstruct":
            p.add_argument("--method", default=argparse.SUPPRESS, help="weak or strong")
        if name == "sweep":
            p.add_argument("--alphas", default=argparse.SUPPRESS, help="start:stop:n")
    return parser


def read_config(path: str | Path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ArgumentError(f"cannot read config {path}: {exc.strerror}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ArgumentError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in OPTIONS:
            raise ArgumentError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def resolve(argv: Sequence[str] | None) -> tuple[str, dict[str, Any]]:
    ns = vars(build_parser().parse_args(argv))
    command = ns.pop("command")
    raw: dict[str, Any] = {}
    if "config" in ns:
        raw.update(read_config(ns.pop("config")))
    raw.update(ns)
    spec = {dest: default for dest, (_, default) in OPTIONS.items()}
    for dest, value in raw.items():
        spec[dest] = OPTIONS[dest][0](value)
    return command, spec


def _cx(z: complex) -> dict[str, float]:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _state_from_flags(a, b, what: str, warnings: list[str]) -> PathState:
    if a is None or b is None:
        raise ArgumentError(f"{what} needs both amplitudes")
    n2 = abs(a) ** 2 + abs(b) ** 2
    state = make_path_state(a, b)
    if abs(math.sqrt(n2) - 1) > 1e-6:
        warnings.append(f"{what} amplitudes normalized (norm was {math.sqrt(n2):.17g})")
    return state


def _states(spec: dict[str, Any], warnings: list[str]) -> tuple[PathState, PathState]:
    pi = _state_from_flags(spec["a"], spec["b"], "pre-selected state (--a/--b)", warnings)
    if spec["pf_a"] is None and spec["pf_b"] is None:
        pf = SYMMETRIC
    else:
        pf = _state_from_flags(spec["pf_a"], spec["pf_b"], "post-selected state", warnings)
    return pi, pf


def _inputs(spec: dict[str, Any], pi: PathState, pf: PathState) -> dict[str, Any]:
    out: dict[str, Any] = {
        "a": _cx(pi.a),
        "b": _cx(pi.b),
        "pf": {"a": _cx(pf.a), "b": _cx(pf.b)},
        "arm": spec["arm"],
        "alpha": spec["alpha"],
    }
    if spec["shots"] is not None:
        out["shots"] = spec["shots"]
    return out


def _is_symmetric(pf: PathState) -> bool:
    return abs(pf.a - SYMMETRIC.a) <= 1e-12 and abs(pf.b - SYMMETRIC.b) <= 1e-12


def cmd_weak_value(spec: dict[str, Any], warnings: list[str]) -> dict[str, Any]:
    pi, pf = _states(spec, warnings)
    w_i, w_ii = projection_weak_values(pi, pf)
    alpha, arm = spec["alpha"], spec["arm"]
    if _is_symmetric(pf):
        m_i = modified_projection_weak_value(pi, alpha, arm)
        how = "closed-form"
    else:
        m_i = generalized_weak_value(
            coupled_state(pi, alpha, arm), postselect_projector(pf), path_projector("I")
        )
        how = "matrix-element"
    m_ii = 1 - m_i
    results: dict[str, Any] = {
        "standard": {"P_I": _cx(w_i), "P_II": _cx(w_ii)},
        "modified": {"P_I": _cx(m_i), "P_II": _cx(m_ii), "method": how},
    }
    results["ratio"] = None if abs(m_ii) <= 1e-12 else _cx(m_i / m_ii)
    try:
        results["true_ratio"] = _cx(amplitude_ratio(pi))
    except UndefinedRatio:
        results["true_ratio"] = None
    return {"inputs": _inputs(spec, pi, pf), "results": results, "seed": spec["seed"]}


def _stochastic_seed(spec: dict[str, Any]) -> int | None:
    if spec["shots"] is None:
        return spec["seed"]
    if spec["seed"] is None:
        spec["seed"] = secrets.randbits(64)
    return spec["seed"]


def cmd_simulate(spec: dict[str, Any], warnings: list[str]) -> dict[str, Any]:
    pi, pf = _states(spec, warnings)
    seed = _stochastic_seed(spec)
    out = run(pi, CouplingConfig(spec["arm"], spec["alpha"]), pf)
    bloch = bloch_exact(out.conditional_spin)
    results: dict[str, Any] = {
        "success_probability": out.success_probability,
        "conditional_spin": {
            "up": _cx(out.conditional_spin.up),
            "down": _cx(out.conditional_spin.down),
        },
        "bloch_exact": dict(zip(("sx", "sy", "sz"), bloch.as_tuple())),
    }
    if spec["shots"] is not None:
        records, est = measure(out.conditional_spin, spec["shots"], seed)
        results["counts"] = {r.basis: r.plus_count for r in records}
        results["bloch_estimate"] = dict(zip(("sx", "sy", "sz"), est.value.as_tuple()))
        results["stderr"] = dict(zip(("sx", "sy", "sz"), est.stderr))
    return {"inputs": _inputs(spec, pi, pf), "results": results, "seed": seed}


def cmd_reconstruct(spec: dict[str, Any], warnings: list[str]) -> dict[str, Any]:
    method = spec["method"]
    if method is None:
        raise ArgumentError("reconstruct needs --method weak|strong")
    pi, pf = _states(spec, warnings)
    seed = _stochastic_seed(spec)
    alpha = spec["alpha"]
    if method == "weak" and abs(alpha) > WEAK_ALPHA_LIMIT:
        warnings.append(
            f"weak reconstruction at alpha = {alpha} > {WEAK_ALPHA_LIMIT}: expect O(alpha^2) bias"
        )
    report = reconstruct(
        pi, alpha, method, arm=spec["arm"], pf=pf, shots=spec["shots"], seed=seed
    )
    digest = {
        k: (_cx(v) if isinstance(v, complex) else v) for k, v in report.inputs_digest.items()
    }
    results = {
        "method": report.method,
        "alpha": report.alpha,
        "estimated": {"a": _cx(report.estimated.a), "b": _cx(report.estimated.b)},
        "fidelity_vs_truth": report.fidelity_vs_truth,
        "inputs_digest": digest,
    }
    inputs = _inputs(spec, pi, pf)
    inputs["method"] = method
    return {"inputs": inputs, "results": results, "seed": seed}


def cmd_sweep(spec: dict[str, Any], warnings: list[str]) -> dict[str, Any]:
    if spec["alphas"] is None:
        raise ArgumentError("sweep needs --alphas start:stop:n")
    grid = parse_grid(spec["alphas"])
    pi, pf = _states(spec, warnings)
    if not _is_symmetric(pf):
        raise ArgumentError("sweep is defined for the symmetric post-selected state only")
    rows = bias_sweep(pi, grid)
    results = {
        "rows": [
            {
                "alpha": r.alpha,
                "ratio": _cx(r.measured_ratio),
                "true_ratio": _cx(r.true_ratio),
                "abs_deviation": r.abs_deviation,
                "weak_value_deviation": r.weak_value_deviation,
            }
            for r in rows
        ]
    }
    inputs = _inputs(spec, pi, pf)
    inputs["alphas"] = spec["alphas"]
    return {"inputs": inputs, "results": results, "seed": spec["seed"]}


COMMANDS = {
    "weak-value": cmd_weak_value,
    "simulate": cmd_simulate,
    "reconstruct": cmd_reconstruct,
    "sweep": cmd_sweep,
}


def _g17(x: Any) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return "" if x is None else str(x)


def _flatten(obj: Any, prefix: str = "") -> dict[str, Any]:
    if isinstance(obj, dict):
        flat: dict[str, Any] = {}
        for k, v in obj.items():
            flat.update(_flatten(v, f"{prefix}.{k}" if prefix else str(k)))
        return flat
    if isinstance(obj, list):
        return {f"{prefix}.{i}": v for i, v in enumerate(obj)}
    return {prefix: obj}


def render_csv(command: str, report: dict[str, Any]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if command == "sweep":
        writer.writerow(SWEEP_HEADER)
        for r in report["results"]["rows"]:
            writer.writerow(
                _g17(v)
                for v in (
                    r["alpha"],
                    r["ratio"]["re"],
                    r["ratio"]["im"],
                    r["true_ratio"]["re"],
                    r["true_ratio"]["im"],
                    r["abs_deviation"],
                )
            )
    else:
        flat = _flatten({"seed": report["seed"], **report["results"]})
        writer.writerow(flat.keys())
        writer.writerow(_g17(v) for v in flat.values())
    return buf.getvalue()


def render_json(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    warnings: list[str] = []
    try:
        command, spec = resolve(argv)
        body = COMMANDS[command](spec, warnings)
        report = {"version": __version__, "command": command, **body}
        if warnings:
            report["warnings"] = warnings
        for w in warnings:
            print(f"warning: {w}", file=stderr)
        fmt = spec["output"] or ("csv" if command == "sweep" else "json")
        stdout.write(render_csv(command, report) if fmt == "csv" else render_json(report))
        return 0
    except (WeakPathError, ValueError) as exc:
        kind = getattr(exc, "kind", "argument error")
        stdout.write(render_json({"error": {"kind": kind, "message": str(exc)}}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
