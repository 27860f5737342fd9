"""Real-amplitude state preparation with multiplexer control elimination."""

from .angles import DEFAULT_TOL, AngleTree, angles_equal, build_angle_tree
from .circuit import Circuit, Gate, Metrics, emit_qasm, lower_mux, metrics, parse_qasm, synthesize
from .pipeline import Preparation, prepare
from .simplify import (
    RepetitionReport,
    SimplifiedMux,
    expand,
    repetition_search,
    repetition_verify,
    simplify,
    unsimplified,
)
from .simulator import DenseState, fidelity, run, unitary_of
from .state import (
    PartitionSpec,
    StateFormatError,
    StateVector,
    load_state,
    random_partitioned_state,
    tensor_product,
)

__version__ = "0.1.0"
