"""Two-cell quantum battery on a Heisenberg spin chain with DM interaction."""
from .dynamics import TimeGrid, Trajectory, evolve, parallel_ergotropy, t_min
from .kernels import BACKEND
from .model import HamiltonianSet, ModelParams, Preset, build_all, initial_state
from .observables import (
    ObservableRecord,
    PeakReport,
    correlation_matrix,
    ergotropy,
    find_peak,
    first_order_coherence,
    power,
    record_trajectory,
    steering_bruteforce,
    steering_max,
)
from .runner import ScenarioConfig, Sweep, SweepResult, compare_charging, emit, run_scenario

__version__ = "0.1.0"
