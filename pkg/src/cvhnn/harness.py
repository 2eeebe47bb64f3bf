"""End-to-end experiment runner and evidence tables.

``run_experiment`` reproduces the standard bench setup: one random
conjugate-symmetric weight matrix, zero thresholds, several random initial
states, serial (or parallel) dynamics with per-update energy traces.  The
report is a pure function of (weight_seed, state_seed, config): per-trial
generators are derived through independent seed-sequence children, so trial
order or concurrency can never change results.

``conjecture_suite`` tabulates convergence verdicts and the worst observed
single-update energy change across many random networks per activation kind
and size, the evidence format used to probe stability behaviour that has no
proof behind it.

This module also owns the text renderings of a finished experiment: an
energy-trace CSV, a report JSON dict, and a small standalone SVG line chart.
All three are deterministic byte-for-byte for equal inputs.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .activations import ActivationSpec
from .dynamics import NetworkModel, TrajectoryRecord, run
from .weights import HermitianReport, WeightGenConfig, random_hermitian, validate

DEFAULT_WEIGHT_SEED = 47
DEFAULT_STATE_SEED = 179
DEFAULT_RECT = (-3.0, 7.0)


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything that determines an experiment except the code version.

    rect bounds the per-component uniform square used to seed coceil
    networks; disk_radius bounds the uniform-radius disk used to seed cosign
    networks and defaults to q * r (the outer edge of the outermost
    magnitude ring) when None.
    """

    activation: ActivationSpec
    n: int = 10
    trials: int = 5
    sweeps: int = 5
    mode: str = "serial"
    weight_seed: int = DEFAULT_WEIGHT_SEED
    state_seed: int = DEFAULT_STATE_SEED
    rect: tuple[float, float] = DEFAULT_RECT
    disk_radius: float | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be an integer >= 1")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ValueError("trials must be an integer >= 1")
        if not isinstance(self.sweeps, int) or self.sweeps < 1:
            raise ValueError("sweeps must be an integer >= 1")
        if self.mode not in ("serial", "parallel"):
            raise ValueError("mode must be 'serial' or 'parallel'")
        low, high = self.rect
        if not low < high:
            raise ValueError("rect must be an increasing (low, high) pair")
        if self.disk_radius is not None and not self.disk_radius > 0:
            raise ValueError("disk_radius must be > 0")

    def resolved_disk_radius(self) -> float:
        if self.disk_radius is not None:
            return float(self.disk_radius)
        return self.activation.q * self.activation.r


def sample_initial_coceil(spec: ActivationSpec, n: int, rng,
                          rect: tuple[float, float] = DEFAULT_RECT) -> np.ndarray:
    """Quantize points of a uniform square: coceil(u + v i) per neuron, with
    u and v uniform over [rect[0], rect[1])."""
    low, high = rect
    real_draws = rng.uniform(low, high, size=n)
    imag_draws = rng.uniform(low, high, size=n)
    return np.array(
        [spec.apply(complex(a, b)) for a, b in zip(real_draws, imag_draws)],
        dtype=complex,
    )


def sample_initial_cosign(spec: ActivationSpec, n: int, rng,
                          disk_radius: float | None = None) -> np.ndarray:
    """Quantize points of a uniform-in-(r, theta) disk: cosign(r e^{i theta})
    with r uniform over [0, disk_radius) and theta uniform over [0, 2 pi).

    disk_radius defaults to q * r, the outer edge of the outermost magnitude
    ring, so every ring is reachable.  Draws that land on a sector boundary
    (or the origin) have no quantized value and are redrawn.
    """
    radius = spec.q * spec.r if disk_radius is None else float(disk_radius)
    values = []
    while len(values) < n:
        magnitude = rng.uniform(0.0, radius)
        angle = rng.uniform(0.0, 2.0 * math.pi)
        value = spec.apply(complex(magnitude * math.cos(angle),
                                   magnitude * math.sin(angle)))
        if value is not None:
            values.append(value)
    return np.array(values, dtype=complex)


def sample_initial_uniform(spec: ActivationSpec, n: int, rng) -> np.ndarray:
    """Each neuron uniform over the activation's image set."""
    image = spec.image_set()
    picks = rng.integers(0, len(image), size=n)
    return np.array([image[int(i)] for i in picks], dtype=complex)


def sample_initial(spec: ActivationSpec, n: int, rng,
                   rect: tuple[float, float] = DEFAULT_RECT,
                   disk_radius: float | None = None) -> np.ndarray:
    """Kind-appropriate initial state: the square sampler for coceil, the
    disk sampler for cosign, uniform over the image set otherwise."""
    if spec.kind == "coceil":
        return sample_initial_coceil(spec, n, rng, rect)
    if spec.kind == "cosign":
        return sample_initial_cosign(spec, n, rng, disk_radius)
    return sample_initial_uniform(spec, n, rng)


@dataclass
class TrialResult:
    index: int
    record: TrajectoryRecord


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    weights_report: HermitianReport
    trials: list[TrialResult]

    def summary(self) -> dict:
        outcomes = [t.record.verdict for t in self.trials]
        cycles: dict[str, int] = {}
        for v in outcomes:
            if v.outcome == "Cycle":
                key = str(v.cycle_length)
                cycles[key] = cycles.get(key, 0) + 1
        increases = [t.record.max_energy_increase() for t in self.trials]
        return {
            "trials": len(self.trials),
            "converged": sum(1 for v in outcomes if v.outcome == "Converged"),
            "cycles": cycles,
            "unresolved": sum(1 for v in outcomes if v.outcome == "Unresolved"),
            "max_energy_increase": max(increases) if increases else 0.0,
        }


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Generate weights, sample per-trial initial states, run the dynamics.

    Trial t draws its initial state from the t-th child of a seed sequence
    rooted at state_seed, so every trial is reproducible in isolation.
    """
    weights = random_hermitian(WeightGenConfig(config.n, config.weight_seed))
    model = NetworkModel(weights, np.zeros(config.n), config.activation)
    children = np.random.SeedSequence(config.state_seed).spawn(config.trials)
    trials = []
    for t in range(config.trials):
        rng = np.random.default_rng(children[t])
        initial = sample_initial(config.activation, config.n, rng,
                                 rect=config.rect,
                                 disk_radius=config.disk_radius)
        record = run(model, initial, mode=config.mode, max_sweeps=config.sweeps)
        trials.append(TrialResult(t, record))
    return ExperimentReport(config, validate(weights), trials)


def config_to_dict(config: ExperimentConfig) -> dict:
    a = config.activation
    return {
        "activation": {
            "kind": a.kind,
            "K": a.k,
            "Q": a.q,
            "R": a.r,
            "boundary_epsilon": a.boundary_epsilon,
        },
        "n": config.n,
        "trials": config.trials,
        "sweeps": config.sweeps,
        "mode": config.mode,
        "weight_seed": config.weight_seed,
        "state_seed": config.state_seed,
        "rect": list(config.rect),
        "disk_radius": config.resolved_disk_radius(),
    }


def _pairs(state: np.ndarray) -> list[list[float]]:
    return [[v.real, v.imag] for v in state]


def report_dict(report: ExperimentReport, trace_csv_ref: str = "trace.csv",
                chart_svg_ref: str = "energy.svg") -> dict:
    """JSON-ready report: config echo, per-trial verdicts, trace references."""
    trials = []
    for trial in report.trials:
        record = trial.record
        verdict = record.verdict
        trials.append({
            "trial": trial.index,
            "verdict": verdict.describe(),
            "outcome": verdict.outcome,
            "cycle_length": verdict.cycle_length,
            "settled_at": verdict.settled_at,
            "updates": len(record.steps) - 1,
            "initial_state": _pairs(record.steps[0].state),
            "final_state": _pairs(record.final_state),
            "initial_energy": record.steps[0].energy,
            "final_energy": record.final_energy,
            "max_energy_increase": record.max_energy_increase(),
        })
    wr = report.weights_report
    return {
        "config": config_to_dict(report.config),
        "weights": {
            "is_hermitian": wr.is_hermitian,
            "diagonal_real_nonneg": wr.diagonal_real_nonneg,
            "max_violation": wr.max_violation,
        },
        "trials": trials,
        "summary": report.summary(),
        "traces": {"csv": trace_csv_ref, "svg": chart_svg_ref},
    }


def trace_rows(record: TrajectoryRecord, trial_index: int) -> list[list]:
    """CSV rows for one trajectory: trial, update_index, neuron, energy.

    The initial entry (update 0) has an empty neuron field; parallel steps
    update every neuron at once and carry "all"."""
    rows = []
    for step in record.steps:
        if step.update == 0:
            neuron = ""
        elif step.neuron is None:
            neuron = "all"
        else:
            neuron = step.neuron
        rows.append([trial_index, step.update, neuron, step.energy])
    return rows


def trace_csv(report: ExperimentReport) -> str:
    """Energy-trace CSV for every trial of an experiment."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["trial", "update_index", "neuron", "energy"])
    for trial in report.trials:
        writer.writerows(trace_rows(trial.record, trial.index))
    return buffer.getvalue()


_PALETTE = ("#4269d0", "#efb118", "#ff725c", "#6cc5b0", "#3ca951",
            "#ff8ab7", "#a463f2", "#97bbf5", "#9c6b4e", "#9498a0")


def chart_svg(report: ExperimentReport, width: int = 720, height: int = 440) -> str:
    """Standalone SVG line chart: one energy polyline per trial over the
    update counter.  Deterministic text for equal reports."""
    margin_left, margin_right, margin_top, margin_bottom = 64, 16, 36, 44
    plot_w = width - margin_left - margin_right
    plot_h = height - margin_top - margin_bottom

    series = [(t.index, t.record.energies()) for t in report.trials]
    max_x = max((len(e) - 1 for _, e in series), default=1) or 1
    finite = [v for _, e in series for v in e if math.isfinite(v)]
    lo = min(finite, default=0.0)
    hi = max(finite, default=1.0)
    if lo == hi:
        lo, hi = lo - 1.0, hi + 1.0

    def sx(x: float) -> float:
        return margin_left + plot_w * x / max_x

    def sy(y: float) -> float:
        return margin_top + plot_h * (hi - y) / (hi - lo)

    config = report.config
    title = (f"{config.activation.kind} energy, n={config.n}, "
             f"{config.mode}, weight_seed={config.weight_seed}")
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
        f'<text x="{margin_left}" y="22" font-family="sans-serif" font-size="14" '
        f'fill="#333333">{title}</text>',
    ]
    axis_y = margin_top + plot_h
    parts.append(f'<line x1="{margin_left}" y1="{margin_top}" x2="{margin_left}" '
                 f'y2="{axis_y}" stroke="#888888"/>')
    parts.append(f'<line x1="{margin_left}" y1="{axis_y}" x2="{margin_left + plot_w}" '
                 f'y2="{axis_y}" stroke="#888888"/>')
    for tick in range(5):
        value = lo + (hi - lo) * tick / 4
        y = sy(value)
        parts.append(f'<line x1="{margin_left - 4}" y1="{y:.2f}" x2="{margin_left}" '
                     f'y2="{y:.2f}" stroke="#888888"/>')
        parts.append(f'<text x="{margin_left - 8}" y="{y + 4:.2f}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11" fill="#555555">'
                     f'{value:.4g}</text>')
    x_ticks = min(max_x, 10)
    for tick in range(x_ticks + 1):
        x_value = round(max_x * tick / x_ticks)
        x = sx(x_value)
        parts.append(f'<line x1="{x:.2f}" y1="{axis_y}" x2="{x:.2f}" '
                     f'y2="{axis_y + 4}" stroke="#888888"/>')
        parts.append(f'<text x="{x:.2f}" y="{axis_y + 18}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="11" fill="#555555">'
                     f'{x_value}</text>')
    parts.append(f'<text x="{margin_left + plot_w / 2:.2f}" y="{height - 8}" '
                 f'text-anchor="middle" font-family="sans-serif" font-size="12" '
                 f'fill="#333333">update</text>')
    for index, energies in series:
        points = " ".join(
            f"{sx(i):.2f},{sy(v):.2f}" for i, v in enumerate(energies)
            if math.isfinite(v)
        )
        color = _PALETTE[index % len(_PALETTE)]
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                     f'points="{points}"/>')
        parts.append(f'<text x="{width - margin_right - 8}" '
                     f'y="{margin_top + 14 + 14 * index}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11" fill="{color}">'
                     f'trial {index}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


@dataclass
class EvidenceRow:
    """Verdict tally for one (activation kind, size, mode) cell."""

    kind: str
    n: int
    mode: str
    trials: int
    converged: int
    cycles: dict[int, int]
    unresolved: int
    max_energy_increase: float


def conjecture_suite(n_trials: int, sizes, specs, *, serial_sweeps: int = 100,
                     parallel_steps: int = 1000, seed: int = 0) -> list[EvidenceRow]:
    """Tally verdicts over many random (weights, initial state) pairs.

    For every spec and size, n_trials fresh conjugate-symmetric weight
    matrices are run once serially and once in parallel from the same
    uniformly sampled initial state.  max_energy_increase is tracked for
    the serial runs: values at or below ~1e-9 mean every observed serial
    update was an energy descent.
    """
    rows = []
    for spec_index, spec in enumerate(specs):
        for n in sizes:
            tallies = {
                "serial": {"converged": 0, "cycles": {}, "unresolved": 0},
                "parallel": {"converged": 0, "cycles": {}, "unresolved": 0},
            }
            max_increase = -math.inf
            for trial in range(n_trials):
                root = np.random.SeedSequence([seed, spec_index, n, trial])
                weight_child, state_child = root.spawn(2)
                weight_seed = int(np.random.default_rng(weight_child).integers(2 ** 63))
                weights = random_hermitian(WeightGenConfig(n, weight_seed))
                model = NetworkModel(weights, np.zeros(n), spec)
                initial = sample_initial(spec, n, np.random.default_rng(state_child))
                for mode, budget in (("serial", serial_sweeps),
                                     ("parallel", parallel_steps)):
                    record = run(model, initial, mode=mode, max_sweeps=budget)
                    verdict = record.verdict
                    cell = tallies[mode]
                    if verdict.outcome == "Converged":
                        cell["converged"] += 1
                    elif verdict.outcome == "Cycle":
                        cell["cycles"][verdict.cycle_length] = (
                            cell["cycles"].get(verdict.cycle_length, 0) + 1
                        )
                    else:
                        cell["unresolved"] += 1
                    if mode == "serial":
                        max_increase = max(max_increase,
                                           record.max_energy_increase())
            for mode in ("serial", "parallel"):
                cell = tallies[mode]
                rows.append(EvidenceRow(
                    kind=spec.kind,
                    n=n,
                    mode=mode,
                    trials=n_trials,
                    converged=cell["converged"],
                    cycles=cell["cycles"],
                    unresolved=cell["unresolved"],
                    max_energy_increase=(max_increase if mode == "serial" else math.nan),
                ))
    return rows
