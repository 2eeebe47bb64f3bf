"""Complex-valued Hopfield networks with quantizing activations.

Core layers: ``activations`` (the four quantizers and their image sets),
``weights`` (random conjugate-symmetric matrices, Hebbian construction,
validation), ``dynamics`` (serial/parallel updates, energy, cycle-aware
run loop, model file format), ``harness`` (seeded experiments and their
CSV/JSON/SVG artifacts).  ``service``/``cli`` wrap it all in an HTTP API
and a command-line client.
"""

from .activations import (
    ActivationSpec,
    ceil_qr,
    ceil_qr_superposed,
    coceil,
    cosign,
    csign,
    phase,
    roots_of_unity,
    sign_real,
    split_sign,
    step,
)
from .dynamics import (
    NetworkModel,
    TrajectoryRecord,
    TrajectoryStep,
    Verdict,
    as_state,
    energy,
    load_model,
    model_from_dict,
    model_to_dict,
    net_contribution,
    parallel_step,
    run,
    save_model,
    serial_sweep,
    update_neuron,
)
from .harness import (
    EvidenceRow,
    ExperimentConfig,
    ExperimentReport,
    chart_svg,
    conjecture_suite,
    report_dict,
    run_experiment,
    sample_initial,
    trace_csv,
)
from .weights import (
    HermitianReport,
    WeightGenConfig,
    hebbian,
    random_hermitian,
)
from .weights import validate as validate_weights

__version__ = "0.1.0"

__all__ = [
    "ActivationSpec",
    "EvidenceRow",
    "ExperimentConfig",
    "ExperimentReport",
    "HermitianReport",
    "NetworkModel",
    "TrajectoryRecord",
    "TrajectoryStep",
    "Verdict",
    "WeightGenConfig",
    "as_state",
    "ceil_qr",
    "ceil_qr_superposed",
    "chart_svg",
    "coceil",
    "conjecture_suite",
    "cosign",
    "csign",
    "energy",
    "hebbian",
    "load_model",
    "model_from_dict",
    "model_to_dict",
    "net_contribution",
    "parallel_step",
    "phase",
    "random_hermitian",
    "report_dict",
    "roots_of_unity",
    "run",
    "run_experiment",
    "sample_initial",
    "save_model",
    "serial_sweep",
    "sign_real",
    "split_sign",
    "step",
    "trace_csv",
    "update_neuron",
    "validate_weights",
    "__version__",
]
