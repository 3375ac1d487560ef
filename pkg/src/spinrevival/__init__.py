"""Two qubits coupled to a field mode or a composite spin: collapse and
revival of Rabi oscillations and entanglement, attractor states, and
decoherence from coupling mismatch."""

from .config import ScenarioConfig, load_config, load_preset, parse_config
from .dynamics import HilbertSpec, ModelParams, Propagator
from .scenario import TimeSeries, run_scenario

__all__ = ["HilbertSpec", "ModelParams", "Propagator", "ScenarioConfig", "TimeSeries",
           "load_config", "load_preset", "parse_config", "run_scenario"]
__version__ = "0.1.0"
