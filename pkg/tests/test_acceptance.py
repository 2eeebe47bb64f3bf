"""Acceptance gate: eight criteria, one printed PASS/FAIL line each.

Populations are fixed by explicit seed bases so every run exercises the
same networks.  Criterion 4 asserts the conjectured serial energy descent
for the magnitude-quantizing activations; the dynamics do not actually
satisfy it (the update does not maximize the local energy gain over those
image sets), so that line documents a red measurement rather than a bug.
"""

import json
import time

import numpy as np
from click.testing import CliRunner

from cvhnn.activations import (
    ActivationSpec,
    ceil_qr,
    ceil_qr_superposed,
    sign_real,
    step,
)
from cvhnn.cli import main as cli_main
from cvhnn.dynamics import NetworkModel, run
from cvhnn.harness import ExperimentConfig, run_experiment, sample_initial
from cvhnn.weights import WeightGenConfig, random_hermitian

TOLERANCE = 1e-9
SERIAL_BUDGET = 300
PARALLEL_BUDGET = 1000


def report(number: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {number} {name}: {status}{suffix}")
    assert ok, f"criterion {number} {name} failed: {detail}"


def run_population(spec_for, count, weight_base, state_base, mode, budget):
    """One run per index over a seed-pinned random-network family."""
    results = []
    for index in range(count):
        n = 2 + index % 9
        spec = spec_for(index)
        weights = random_hermitian(WeightGenConfig(n, weight_base + index))
        model = NetworkModel(weights, np.zeros(n), spec)
        initial = sample_initial(spec, n,
                                 np.random.default_rng(state_base + index))
        results.append(run(model, initial, mode=mode, max_sweeps=budget))
    return results


def test_criterion_1_default_experiments_descend_and_converge():
    start = time.perf_counter()
    summaries = {}
    for kind in ("coceil", "cosign"):
        spec = ActivationSpec(kind, k=4, q=3, r=2.0)
        summaries[kind] = run_experiment(ExperimentConfig(spec)).summary()
    elapsed = time.perf_counter() - start
    ok = elapsed < 1.0 and all(
        s["converged"] == 5 and s["max_energy_increase"] <= TOLERANCE
        for s in summaries.values())
    detail = (f"coceil {summaries['coceil']['converged']}/5, "
              f"cosign {summaries['cosign']['converged']}/5 converged, "
              f"worst increase "
              f"{max(s['max_energy_increase'] for s in summaries.values()):.3g}, "
              f"{elapsed * 1000:.0f} ms")
    report(1, "default-experiments", ok, detail)


def test_criterion_2_phase_quantizer_serial_stability():
    sector_counts = (2, 3, 4, 8)
    results = run_population(
        lambda i: ActivationSpec("csign", k=sector_counts[i % 4]),
        100, 1000, 5000, "serial", SERIAL_BUDGET)
    converged = sum(r.verdict.outcome == "Converged" for r in results)
    worst = max(r.max_energy_increase() for r in results)
    ok = converged == 100 and worst <= TOLERANCE
    report(2, "phase-quantizer-stability", ok,
           f"{converged}/100 converged, worst increase {worst:.3g}")


def test_criterion_3_split_sign_serial_and_parallel():
    spec_for = lambda i: ActivationSpec("split_sign")
    serial = run_population(spec_for, 100, 2000, 6000, "serial", SERIAL_BUDGET)
    parallel = run_population(spec_for, 100, 2000, 6000, "parallel",
                              PARALLEL_BUDGET)
    converged = sum(r.verdict.outcome == "Converged" for r in serial)
    worst = max(r.max_energy_increase() for r in serial)
    allowed = all(
        r.verdict.outcome == "Converged"
        or (r.verdict.outcome == "Cycle" and r.verdict.cycle_length == 2)
        for r in parallel)
    par_cycles = sum(r.verdict.outcome == "Cycle" for r in parallel)
    ok = converged == 100 and worst <= TOLERANCE and allowed
    report(3, "split-sign-stability", ok,
           f"serial {converged}/100 converged (worst increase {worst:.3g}), "
           f"parallel {par_cycles} two-cycles, rest converged")


def test_criterion_4_magnitude_quantizer_conjecture_evidence():
    converged = {}
    dirty = {}
    worst = {}
    counterexamples = []
    for kind, weight_base, state_base in (("coceil", 3000, 7000),
                                          ("cosign", 4000, 8000)):
        spec_for = lambda i: ActivationSpec(kind, k=4, q=3, r=2.0)
        serial = run_population(spec_for, 100, weight_base, state_base,
                                "serial", SERIAL_BUDGET)
        parallel = run_population(spec_for, 100, weight_base, state_base,
                                  "parallel", PARALLEL_BUDGET)
        converged[kind] = sum(r.verdict.outcome == "Converged" for r in serial)
        increases = [r.max_energy_increase() for r in serial]
        dirty[kind] = sum(v > TOLERANCE for v in increases)
        worst[kind] = max(increases)
        for index, record in enumerate(parallel):
            v = record.verdict
            if not (v.outcome == "Converged"
                    or (v.outcome == "Cycle" and v.cycle_length <= 2)):
                counterexamples.append((kind, index, v.describe()))
    for kind, index, described in counterexamples:
        print(f"conjecture counterexample: {kind} network {index} "
              f"parallel verdict {described}")
    total_converged = sum(converged.values())
    total_dirty = sum(dirty.values())
    worst_overall = max(worst.values())
    ok = total_converged == 200 and worst_overall <= TOLERANCE
    report(4, "magnitude-quantizer-conjecture", ok,
           f"serial converged {total_converged}/200; energy rose above "
           f"tolerance in {total_dirty}/200 trials "
           f"(coceil {dirty['coceil']}, cosign {dirty['cosign']}; worst "
           f"+{worst_overall:.3g}); parallel counterexamples: "
           f"{len(counterexamples)}")


def test_criterion_5_staircase_equivalences():
    checked = 0
    exact = True
    for q, r in ((1, 1.0), (3, 2.0), (5, 0.5)):
        limit = 2 * q * r
        for x in np.linspace(-limit, limit, 10001):
            value = float(x)
            if ceil_qr(value, q, r) != ceil_qr_superposed(value, q, r):
                exact = False
            if step(value) != (sign_real(value) + 1) / 2:
                exact = False
            checked += 1
    report(5, "staircase-equivalences", exact,
           f"{checked} grid points, 3 parameter sets, exact")


def test_criterion_6_image_set_cardinalities():
    cases = []
    for k in (2, 3, 4, 8):
        cases.append((ActivationSpec("csign", k=k), k))
    cases.append((ActivationSpec("split_sign"), 4))
    for q in (1, 3, 5):
        cases.append((ActivationSpec("coceil", q=q, r=1.0), (q + 1) ** 2))
    for q, k in ((1, 2), (3, 4), (2, 8)):
        cases.append((ActivationSpec("cosign", q=q, k=k, r=1.0), q * k))
    ok = True
    for spec, expected in cases:
        image = spec.image_set()
        if len(image) != expected or len(set(image)) != expected:
            ok = False
    report(6, "image-set-cardinalities", ok,
           f"{len(cases)} parameter sets checked")


def oracle_field(weights, thresholds, state, i):
    total = 0j
    for j in range(len(state)):
        total += complex(weights[i][j]) * state[j]
    return total - complex(thresholds[i])


def oracle_next(weights, thresholds, value_fn, state, mode):
    n = len(state)
    if mode == "parallel":
        new = []
        for i in range(n):
            value = value_fn(oracle_field(weights, thresholds, state, i))
            new.append(state[i] if value is None else value)
        return tuple(new)
    current = list(state)
    for i in range(n):
        value = value_fn(oracle_field(weights, thresholds, current, i))
        if value is not None:
            current[i] = value
    return tuple(current)


def oracle_verdict(weights, thresholds, value_fn, initial, mode, budget):
    seen = {initial: 0}
    state = initial
    for t in range(1, budget + 1):
        state_next = oracle_next(weights, thresholds, value_fn, state, mode)
        if state_next == state:
            return ("Converged", None, state)
        if state_next in seen:
            return ("Cycle", t - seen[state_next], None)
        seen[state_next] = t
        state = state_next
    return ("Unresolved", None, None)


def oracle_split(h):
    return complex(1 if h.real >= 0 else -1, 1 if h.imag >= 0 else -1)


def oracle_binary(h):
    if h.real > 0:
        return complex(1, 0)
    if h.real < 0:
        return complex(-1, 0)
    return None


def test_criterion_7_two_neuron_oracle_equivalence():
    split_spec = ActivationSpec("split_sign")
    binary_spec = ActivationSpec("cosign", q=1, k=2, r=1.0)
    weight_sets = [
        (random_hermitian(WeightGenConfig(2, 10)), np.zeros(2)),
        (random_hermitian(WeightGenConfig(2, 11)), np.zeros(2)),
        (np.array([[0, 1 + 0.5j], [2 + 0j, 0]]), np.zeros(2)),
        (random_hermitian(WeightGenConfig(2, 12)),
         np.array([0.3 + 0.1j, -0.2j])),
    ]
    plans = [
        (split_spec, oracle_split,
         [complex(a, b) for a in (1, -1) for b in (1, -1)]),
        (binary_spec, oracle_binary, [complex(1, 0), complex(-1, 0)]),
    ]
    compared = 0
    mismatches = []
    for spec, value_fn, alphabet in plans:
        for weights, thresholds in weight_sets:
            model = NetworkModel(weights, thresholds, spec)
            for a in alphabet:
                for b in alphabet:
                    for mode in ("serial", "parallel"):
                        initial = (a, b)
                        record = run(model, np.array(initial), mode=mode,
                                     max_sweeps=64)
                        expected = oracle_verdict(
                            weights.tolist(), thresholds.tolist(), value_fn,
                            initial, mode, 64)
                        verdict = record.verdict
                        got = (verdict.outcome, verdict.cycle_length,
                               tuple(record.final_state)
                               if verdict.outcome == "Converged" else None)
                        compared += 1
                        if got != expected:
                            mismatches.append((spec.kind, mode, initial,
                                               got, expected))
    for item in mismatches[:5]:
        print("oracle mismatch:", item)
    report(7, "two-neuron-oracle-equivalence", not mismatches,
           f"{compared} (state, weights, mode) runs compared")


def test_criterion_8_cli_byte_determinism(tmp_path):
    runner = CliRunner()
    outputs = []
    for attempt in ("one", "two"):
        base = tmp_path / attempt
        base.mkdir()
        model = base / "model.json"
        trace = base / "run-trace.csv"
        exp = base / "exp"
        gen = runner.invoke(cli_main, ["gen-weights", "--n", "7", "--seed",
                                       "13", "--out", str(model)])
        assert gen.exit_code == 0, gen.output
        ran = runner.invoke(cli_main, ["run", "--model", str(model),
                                       "--init-seed", "2", "--trace-csv",
                                       str(trace)])
        assert ran.exit_code == 0, ran.output
        exp_result = runner.invoke(cli_main, ["experiment", "--kind", "cosign",
                                              "--trials", "3", "--out-dir",
                                              str(exp)])
        assert exp_result.exit_code == 0, exp_result.output
        outputs.append({
            "model": model.read_bytes(),
            "run_stdout": ran.output,
            "trace": trace.read_bytes(),
            "report": (exp / "report.json").read_bytes(),
            "exp_trace": (exp / "trace.csv").read_bytes(),
            "chart": (exp / "energy.svg").read_bytes(),
            "exp_stdout": exp_result.output,
        })
    identical = outputs[0] == outputs[1]
    report(8, "cli-byte-determinism", identical,
           "gen-weights, run, experiment artifacts identical across reruns")
