"""Discrete-time recurrent dynamics over complex-valued states.

A network is a weight matrix, a threshold vector, and an activation choice.
Each neuron update feeds the net contribution sum_j W[i, j] * S[j] - T[i]
through the activation; an undefined activation (phase boundary or origin)
leaves the neuron as it was.  ``run`` iterates either serially (one neuron
at a time, seeing the latest state) or in parallel (all neurons recomputed
from a snapshot) until the state stops changing, revisits an earlier state,
or a budget runs out.

States are numpy complex vectors whose entries come from the activation's
canonical image values, so equality and hashing are exact; cycle detection
stores every boundary state of the trajectory and reports the exact
recurrence gap.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .activations import ActivationSpec
from .weights import HermitianReport, validate

# Residual imaginary mass allowed in the energy quadratic form, relative to
# 1 + |real part|.  With exactly conjugate-symmetric weights the residual is
# zero up to accumulation order, far below this.
ENERGY_IMAG_TOL = 1e-9

MODES = ("serial", "parallel")
ORDERS = ("cyclic", "random")


@dataclass
class NetworkModel:
    """A complete network: weights (n x n), thresholds (n), activation."""

    weights: np.ndarray
    thresholds: np.ndarray
    activation: ActivationSpec

    def __post_init__(self) -> None:
        self.weights = np.asarray(self.weights, dtype=complex)
        self.thresholds = np.asarray(self.thresholds, dtype=complex)
        if self.weights.ndim != 2 or self.weights.shape[0] != self.weights.shape[1]:
            raise ValueError(f"weights must be square, got shape {self.weights.shape}")
        if self.thresholds.shape != (self.weights.shape[0],):
            raise ValueError(
                f"thresholds must have shape ({self.weights.shape[0]},), "
                f"got {self.thresholds.shape}"
            )

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def hermitian_report(self) -> HermitianReport:
        return validate(self.weights)


def as_state(values, spec: ActivationSpec) -> np.ndarray:
    """Coerce to a complex vector and check exact image-set membership.

    Image values are canonical, so membership is plain equality; anything
    else (including off-by-one-ulp lookalikes) is rejected, which keeps
    state comparison and cycle detection exact downstream.
    """
    state = np.asarray(values, dtype=complex)
    if state.ndim != 1:
        raise ValueError("state must be a one-dimensional vector")
    members = set(spec.image_set())
    bad = [i for i, v in enumerate(state) if complex(v) not in members]
    if bad:
        raise ValueError(
            f"state entries at indices {bad[:5]} are not members of the "
            f"{spec.kind} image set"
        )
    return state


def net_contribution(model: NetworkModel, state: np.ndarray, i: int) -> complex:
    """Weighted input to neuron i minus its threshold."""
    return complex(np.dot(model.weights[i], state) - model.thresholds[i])


def update_neuron(model: NetworkModel, state: np.ndarray, i: int) -> tuple[np.ndarray, bool]:
    """One neuron update; returns (state, changed).

    The input state is never mutated: an actual change returns a fresh
    vector, and "no change" (same value or undefined activation) returns
    the input array itself.
    """
    value = model.activation.apply(net_contribution(model, state, i))
    if value is None or value == state[i]:
        return state, False
    updated = state.copy()
    updated[i] = value
    return updated, True


def serial_sweep(model: NetworkModel, state: np.ndarray, order) -> tuple[np.ndarray, bool]:
    """Update every neuron once, in the given order, propagating each change
    into the inputs of the later ones.  Returns (state, any_changed)."""
    order = list(order)
    if sorted(order) != list(range(model.n)):
        raise ValueError("order must be a permutation of range(n)")
    changed_any = False
    for i in order:
        state, changed = update_neuron(model, state, i)
        changed_any = changed_any or changed
    return state, changed_any


def parallel_step(model: NetworkModel, state: np.ndarray) -> np.ndarray:
    """Recompute every neuron from the same snapshot and apply atomically.
    Neurons whose activation is undefined keep their entry."""
    updated = state.copy()
    for i in range(model.n):
        value = model.activation.apply(net_contribution(model, state, i))
        if value is not None:
            updated[i] = value
    return updated


def energy(model: NetworkModel, state) -> float:
    """Quadratic-form energy -(1/2) * conj(S) . W . S, returned as a real.

    Requires exactly conjugate-symmetric weights: for any other matrix the
    form is complex-valued and cannot order states, so this refuses with a
    diagnostic instead of silently projecting.
    """
    report = validate(model.weights)
    if not report.is_hermitian:
        raise ValueError(
            "energy needs conjugate-symmetric weights "
            f"(max violation {report.max_violation:.3g})"
        )
    return _real_energy(model.weights, np.asarray(state, dtype=complex))


def _real_energy(weights: np.ndarray, state: np.ndarray) -> float:
    value = -0.5 * complex(np.vdot(state, weights @ state))
    if abs(value.imag) > ENERGY_IMAG_TOL * (1.0 + abs(value.real)):
        raise ArithmeticError(
            f"energy form produced imaginary residue {value.imag:.3g}; "
            "the weight matrix is numerically inconsistent"
        )
    return value.real


@dataclass(frozen=True)
class Verdict:
    """How a trajectory ended.

    outcome is "Converged", "Cycle", or "Unresolved".  cycle_length is the
    exact recurrence gap, in full sweeps for serial runs and single steps
    for parallel ones; settled_at is the sweep/step index at which the
    trajectory entered its stable state or cycle.
    """

    outcome: str
    cycle_length: int | None = None
    settled_at: int | None = None

    def describe(self) -> str:
        if self.outcome == "Cycle":
            return f"Cycle({self.cycle_length})"
        return self.outcome


@dataclass(frozen=True)
class TrajectoryStep:
    """One recorded point: entry 0 is the initial state (neuron None);
    serial entries name the updated neuron (0-based); parallel entries
    cover all neurons at once (neuron None)."""

    update: int
    neuron: int | None
    state: np.ndarray
    energy: float


@dataclass
class TrajectoryRecord:
    """Everything ``run`` observed: per-update states and energies plus the
    final verdict.  Energies are NaN when the weights are not
    conjugate-symmetric (the dynamics still run; only descent bookkeeping
    is meaningless there)."""

    mode: str
    steps: list[TrajectoryStep] = field(default_factory=list)
    verdict: Verdict = Verdict("Unresolved")

    @property
    def final_state(self) -> np.ndarray:
        return self.steps[-1].state

    @property
    def final_energy(self) -> float:
        return self.steps[-1].energy

    def energies(self) -> list[float]:
        return [s.energy for s in self.steps]

    def max_energy_increase(self) -> float:
        """Largest single-update energy delta; <= 0 means monotone descent."""
        energies = self.energies()
        if len(energies) < 2:
            return 0.0
        return max(b - a for a, b in zip(energies, energies[1:]))


def run(model: NetworkModel, initial, mode: str = "serial", max_sweeps: int = 100,
        order: str = "cyclic", order_seed: int = 0) -> TrajectoryRecord:
    """Iterate the network from an initial state until it settles.

    Serial mode updates neurons one at a time and counts the budget in full
    sweeps; the order is "cyclic" (0..n-1 every sweep) or "random" (a fresh
    permutation per sweep drawn from order_seed).  Parallel mode updates all
    neurons per step and counts steps.  A sweep or step that changes nothing
    ends the run as Converged; under the random order policy one extra full
    pass verifies stability first.  Revisiting an earlier sweep-boundary
    state is reported as Cycle with the exact recurrence gap -- except under
    random order, where periodicity is not well defined because the update
    order itself varies, so only Converged and Unresolved can be reported.

    Energy is recorded after every neuron update (serial) or step
    (parallel), with entry 0 holding the initial state; see
    TrajectoryRecord for the non-conjugate-symmetric case.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}")
    if max_sweeps < 1:
        raise ValueError("max_sweeps must be >= 1")

    state = as_state(initial, model.activation)
    hermitian = validate(model.weights).is_hermitian

    def record_energy(s: np.ndarray) -> float:
        return _real_energy(model.weights, s) if hermitian else math.nan

    record = TrajectoryRecord(mode=mode)
    record.steps.append(TrajectoryStep(0, None, state, record_energy(state)))
    seen = {state.tobytes(): 0}
    settled = 0

    if mode == "parallel":
        for step_index in range(1, max_sweeps + 1):
            new_state = parallel_step(model, state)
            record.steps.append(
                TrajectoryStep(step_index, None, new_state, record_energy(new_state))
            )
            if np.array_equal(new_state, state):
                record.verdict = Verdict("Converged", settled_at=settled)
                return record
            settled = step_index
            key = new_state.tobytes()
            if key in seen:
                record.verdict = Verdict(
                    "Cycle", cycle_length=step_index - seen[key], settled_at=seen[key]
                )
                return record
            seen[key] = step_index
            state = new_state
        record.verdict = Verdict("Unresolved")
        return record

    order_rng = np.random.default_rng(order_seed) if order == "random" else None
    update_counter = 0
    verifying = False
    for sweep_index in range(1, max_sweeps + 1):
        if order == "random" and not verifying:
            permutation = [int(i) for i in order_rng.permutation(model.n)]
        else:
            permutation = list(range(model.n))
        changed_any = False
        for i in permutation:
            update_counter += 1
            state, changed = update_neuron(model, state, i)
            changed_any = changed_any or changed
            record.steps.append(
                TrajectoryStep(update_counter, i, state, record_energy(state))
            )
        if not changed_any:
            if order == "cyclic" or verifying:
                record.verdict = Verdict("Converged", settled_at=settled)
                return record
            verifying = True  # random order: confirm with one full fixed pass
            continue
        verifying = False
        settled = sweep_index
        if order == "cyclic":
            key = state.tobytes()
            if key in seen:
                record.verdict = Verdict(
                    "Cycle", cycle_length=sweep_index - seen[key], settled_at=seen[key]
                )
                return record
            seen[key] = sweep_index
    record.verdict = Verdict("Unresolved")
    return record


def model_to_dict(model: NetworkModel) -> dict:
    """Plain-data form of a model, suitable for JSON.

    Complex numbers are [re, im] pairs; weights are row-major.
    """
    a = model.activation
    return {
        "n": model.n,
        "activation": {
            "kind": a.kind,
            "K": a.k,
            "Q": a.q,
            "R": a.r,
            "boundary_epsilon": a.boundary_epsilon,
        },
        "weights": [[[w.real, w.imag] for w in row] for row in model.weights],
        "thresholds": [[t.real, t.imag] for t in model.thresholds],
    }


def _as_pair(value, what: str) -> complex:
    try:
        re, im = value
        return complex(float(re), float(im))
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{what} must be a [re, im] pair, got {value!r}") from exc


def model_from_dict(doc: dict) -> NetworkModel:
    """Parse and dimension-check the plain-data form of a model."""
    if not isinstance(doc, dict):
        raise ValueError("model document must be a JSON object")
    missing = {"n", "activation", "weights", "thresholds"} - doc.keys()
    if missing:
        raise ValueError(f"model document is missing keys: {sorted(missing)}")
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be an integer >= 1")
    raw_activation = doc["activation"]
    if not isinstance(raw_activation, dict) or "kind" not in raw_activation:
        raise ValueError("activation must be an object with a 'kind'")
    spec = ActivationSpec(
        kind=raw_activation["kind"],
        k=raw_activation.get("K", 1),
        q=raw_activation.get("Q", 1),
        r=raw_activation.get("R", 1.0),
        boundary_epsilon=raw_activation.get("boundary_epsilon", 0.0),
    )
    rows = doc["weights"]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"weights must be {n} rows of {n} entries")
    weights = np.array(
        [[_as_pair(v, "weight entry") for v in row] for row in rows], dtype=complex
    ).reshape(n, n)
    raw_thresholds = doc["thresholds"]
    if len(raw_thresholds) != n:
        raise ValueError(f"thresholds must have {n} entries")
    thresholds = np.array(
        [_as_pair(v, "threshold entry") for v in raw_thresholds], dtype=complex
    )
    return NetworkModel(weights, thresholds, spec)


def save_model(model: NetworkModel, path) -> None:
    text = json.dumps(model_to_dict(model), indent=2, sort_keys=True) + "\n"
    Path(path).write_text(text)


def load_model(path) -> NetworkModel:
    return model_from_dict(json.loads(Path(path).read_text()))
