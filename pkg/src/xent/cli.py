"""Command-line entry point: ``xent sweep|esd|verify|counterexample|membership``.

Exit codes: 0 ok, 1 verification failure, 2 input error, 3 config error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import concurrence, esd, figures, membership, spectra, verify, xcore
from .channels import DEPHASING, DEPOLARIZING, KINDS, Channel

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CONFIG = 0, 1, 2, 3
METRICS = ("pt-eigs", "negativity", "n3", "witness", "tau3")
THREE_QUBIT_METRICS = {"n3", "witness", "tau3"}


class ConfigError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def fmt(v: float) -> str:
    return "%.15g" % v


def load(spec: str) -> xcore.XState:
    if spec.startswith("builtin:"):
        try:
            return figures.builtin(spec[len("builtin:"):])
        except (KeyError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
    try:
        return xcore.load_state(spec)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot load state {spec!r}: {exc}") from exc


@dataclass(frozen=True)
class SweepConfig:
    state: str
    channel: str
    start: float
    end: float
    steps: int
    metrics: tuple[str, ...]
    qubits: tuple[int, ...] | None = None
    out: str | None = None

    def __post_init__(self):
        if self.channel not in KINDS:
            raise ConfigError(f"unknown channel {self.channel!r}")
        if not (0.0 <= self.start < self.end <= 1.0):
            raise ConfigError("need 0 <= p-start < p-end <= 1")
        if self.steps < 2:
            raise ConfigError("steps must be at least 2")
        bad = [m for m in self.metrics if m not in METRICS]
        if bad or not self.metrics:
            raise ConfigError(f"metrics must be a nonempty subset of {', '.join(METRICS)}")

    def grid(self) -> np.ndarray:
        # i / steps is correctly rounded, so grids with steps N and 2N share points exactly
        return np.array([self.start + (self.end - self.start) * (i / self.steps) for i in range(self.steps + 1)])


def _columns(cfg: SweepConfig, n: int) -> list[str]:
    qubits = cfg.qubits or tuple(range(1, n + 1))
    cols = []
    for m in cfg.metrics:
        if m == "pt-eigs":
            for q in qubits:
                cols += [f"pt_q{q}_b{j}" for j in range(1, (1 << n) // 2 + 1)] + [f"pt_q{q}_min"]
        elif m == "negativity":
            cols += [f"N{q}" for q in qubits] + [f"neg_q{q}" for q in qubits]
        elif m == "n3":
            cols.append("N3")
        elif m == "witness":
            cols += [f"W{k}" for k in range(1, 5)]
        elif m == "tau3":
            cols.append("tau3")
    return cols


def _row(x: xcore.XState, cfg: SweepConfig, p: float) -> list[float]:
    y = Channel(cfg.channel, p).apply(x)
    qubits = cfg.qubits or tuple(range(1, x.n + 1))
    vals: list[float] = [p]
    neg = None
    for m in cfg.metrics:
        if m == "pt-eigs":
            for q in qubits:
                s = spectra.pt_spectrum(y, q)
                vals += list(s.blocks[:, 0]) + [s.min_eigenvalue]
        elif m == "negativity":
            neg = neg or spectra.negativities(y)
            vals += [neg.per_qubit[q - 1] for q in qubits] + [neg.standard[q - 1] for q in qubits]
        elif m == "n3":
            neg = neg or spectra.negativities(y)
            vals.append(neg.tri_partite)
        elif m == "witness":
            vals += [esd.witness_expectation(x, k, Channel(cfg.channel, p)) for k in range(1, 5)]
        elif m == "tau3":
            vals.append(concurrence.tau3(y))
    return [float(v) for v in vals]


def _threads() -> int:
    raw = os.environ.get("XENT_THREADS")
    if raw is None:
        return 1
    try:
        k = int(raw)
    except ValueError as exc:
        raise ConfigError(f"XENT_THREADS must be a positive integer, got {raw!r}") from exc
    if k < 1:
        raise ConfigError(f"XENT_THREADS must be a positive integer, got {raw!r}")
    return k


def sweep(cfg: SweepConfig) -> tuple[list[str], list[list[float]]]:
    x = load(cfg.state)
    if x.n != 3 and (THREE_QUBIT_METRICS & set(cfg.metrics) or cfg.channel == DEPOLARIZING):
        raise ConfigError("n3, witness, tau3 and depolarizing sweeps need a three-qubit state")
    for q in cfg.qubits or ():
        if not 1 <= q <= x.n:
            raise ConfigError(f"qubit {q} out of range for n={x.n}")
    header = ["p"] + _columns(cfg, x.n)
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        rows = list(pool.map(lambda p: _row(x, cfg, p), cfg.grid()))  # map keeps grid order
    return header, rows


def render_csv(header, rows) -> str:
    lines = [",".join(header)] + [",".join(fmt(v) for v in r) for r in rows]
    return "\n".join(lines) + "\n"


def render_json(header, rows) -> str:
    return json.dumps({"columns": header, "rows": rows}, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        try:
            with open(out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {out!r}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _qubits(args) -> tuple[int, ...] | None:
    return None if args.qubit is None else (args.qubit,)


def cmd_sweep(args) -> int:
    metrics = tuple(m.strip() for m in args.metrics.split(",") if m.strip())
    cfg = SweepConfig(args.state, args.channel, args.p_start, args.p_end, args.steps, metrics, _qubits(args), args.out)
    header, rows = sweep(cfg)
    _emit(render_csv(header, rows) if args.format == "csv" else render_json(header, rows), cfg.out)
    return EXIT_OK


def esd_report(x: xcore.XState, kind: str, qubits=None) -> dict:
    if x.n != 3:
        raise ConfigError("ESD reports need a three-qubit state")
    qubits = qubits or (1, 2, 3)
    per_qubit = {}
    for q in qubits:
        r = esd.esd(x, q, kind)
        per_qubit[str(q)] = {
            "crossings": list(r.crossings),
            "dies_at": "never" if r.never else r.dies_at,
            "negative_at_0": spectra.min_pt_eigenvalue(x, q) < -esd.NEG_TOL,
        }
    thresholds = {str(k): esd.witness_threshold(x, k, kind) for k in range(1, 5)}
    entangled = any(v["negative_at_0"] for v in per_qubit.values())
    return {
        "channel": kind,
        "qubits": per_qubit,
        "witness_thresholds": thresholds,
        "summary": "entangled (by negativity) at p=0" if entangled else "not entangled (by negativity) at p=0",
    }


def _esd_text(rep: dict) -> str:
    lines = [f"channel: {rep['channel']}", rep["summary"]]
    for q, r in rep["qubits"].items():
        cross = ", ".join(fmt(c) for c in r["crossings"]) or "none"
        dies = r["dies_at"] if r["dies_at"] == "never" else fmt(r["dies_at"])
        lines.append(f"qubit {q}: crossings [{cross}] dies_at {dies}")
    for k, t in rep["witness_thresholds"].items():
        lines.append(f"witness W{k}: " + ("no detection" if t is None else f"detects for p < {fmt(t)}"))
    return "\n".join(lines) + "\n"


def cmd_esd(args) -> int:
    x = load(args.state)
    rep = esd_report(x, args.channel, _qubits(args))
    _emit(json.dumps(rep, indent=2) + "\n" if args.format == "json" else _esd_text(rep), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 0:
        raise ConfigError("trials must be nonnegative")
    results = verify.run_suite(args.seed, args.trials)
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    print("all properties passed" if ok else "verification FAILED")
    return EXIT_OK if ok else EXIT_VERIFY


def _membership_report(x: xcore.XState, fmt_json: bool) -> str:
    rep = membership.is_generalized_ghz_diagonal(x)
    violated = rep.violated
    if rep.is_member:
        verdict = "generalized GHZ-diagonal"
    elif rep.excluded:
        verdict = "NOT generalized GHZ-diagonal"
    else:
        verdict = "membership undecided"
    if fmt_json:
        return json.dumps({"valid": True, "status": rep.status, "violated": list(violated), "notes": list(rep.notes)}, indent=2) + "\n"
    cond = "conditions " + ",".join(map(str, violated)) + " violated" if violated else "no conditions violated"
    return f"valid X-state; {verdict}; {cond}\n"


def cmd_counterexample(args) -> int:
    try:
        x = xcore.counterexample_state(args.a1, args.a2, args.b2, args.r, args.phi)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _emit(_membership_report(x, args.format == "json"), args.out)
    return EXIT_OK


def cmd_membership(args) -> int:
    x = load(args.state)
    if x.n not in (2, 3):
        raise ConfigError("membership check supports two or three qubits")
    _emit(_membership_report(x, args.format == "json"), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xent", description="X-state entanglement under decoherence")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, state=True):
        if state:
            p.add_argument("--state", required=True, help="state JSON path or builtin:NAME")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out")

    p = sub.add_parser("sweep", help="metrics over a grid of channel strengths")
    common(p)
    p.add_argument("--channel", choices=KINDS, default=DEPHASING)
    p.add_argument("--p-start", type=float, default=0.0)
    p.add_argument("--p-end", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=100, help="number of grid intervals")
    p.add_argument("--metrics", default="pt-eigs", help="comma list of " + ",".join(METRICS))
    p.add_argument("--qubit", type=int)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("esd", help="sudden-death crossings and witness thresholds")
    common(p)
    p.add_argument("--channel", choices=KINDS, default=DEPHASING)
    p.add_argument("--qubit", type=int, choices=(1, 2, 3))
    p.set_defaults(func=cmd_esd)

    p = sub.add_parser("verify", help="closed forms against the dense oracle")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("counterexample", help="two-qubit state outside the generalized GHZ-diagonal set")
    common(p, state=False)
    p.add_argument("--a1", type=float, default=1 / 3)
    p.add_argument("--a2", type=float, default=1 / 3)
    p.add_argument("--b2", type=float, default=1 / 3)
    p.add_argument("--r", type=float, default=0.25)
    p.add_argument("--phi", type=float, default=math.pi / 4)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("membership", help="generalized GHZ-diagonal membership")
    common(p)
    p.set_defaults(func=cmd_membership)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
