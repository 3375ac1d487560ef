"""Run a configured scenario end to end and collect its diagnostics."""

import math
from dataclasses import dataclass

import numpy as np

from . import measures
from .config import COLUMNS
from .dynamics import FIELD, ModelParams, Propagator, initial_state
from .errors import SpinRevivalError
from .mismatch import ensemble_average_series, gaussian_weight_grid
from .statekit import (coherent_fock_amplitudes, default_n_max, single_qubit_attractor,
                       spin_coherent_amplitudes)
from .timing import field_revival_estimate, spin_revival_estimate


@dataclass
class TimeSeries:
    """Diagnostics on a time grid, one array per column of :data:`COLUMNS`."""

    columns: dict
    estimate: object = None
    name: str = None

    def __post_init__(self):
        lengths = {len(np.asarray(v)) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValueError(f"columns have different lengths: {sorted(lengths)}")

    def __len__(self):
        return len(self.columns["t"])

    def __getitem__(self, key):
        return self.columns[key]

    @property
    def t(self):
        return self.columns["t"]

    def records(self):
        for row in zip(*(self.columns[c] for c in COLUMNS)):
            yield measures.DiagnosticsRecord(*(float(x) for x in row))

    def at(self, time):
        """Record at the grid point nearest ``time``."""
        i = int(np.argmin(np.abs(self.t - time)))
        return measures.DiagnosticsRecord(*(float(self.columns[c][i]) for c in COLUMNS))

    def window(self, lo, hi):
        return (self.t >= lo) & (self.t <= hi)


def model_params(cfg):
    qubit_freqs = (cfg.omega,) * cfg.m_q
    couplings = (cfg.lam,) * cfg.m_q
    if cfg.model == FIELD:
        n_max = cfg.n_max if cfg.n_max is not None else default_n_max(cfg.n_bar)
        return ModelParams("field", cfg.omega, qubit_freqs, couplings, n_max=n_max)
    return ModelParams("spin", cfg.omega, qubit_freqs, couplings, n_spins=cfg.n_spins)


def revival_estimate(cfg):
    if cfg.model == FIELD:
        return field_revival_estimate(cfg.n_bar, cfg.lam)
    return spin_revival_estimate(cfg.zeta2, cfg.n_spins, cfg.lam)


def mode_state(cfg, params):
    if cfg.model == FIELD:
        alpha = math.sqrt(cfg.n_bar) * np.exp(-1j * cfg.theta)
        return coherent_fock_amplitudes(alpha, params.n_max)
    zeta = math.sqrt(cfg.zeta2) * np.exp(-1j * cfg.phi)
    return spin_coherent_amplitudes(zeta, cfg.n_spins)


def mode_phase(cfg):
    return cfg.theta if cfg.model == FIELD else cfg.phi


def time_grid(cfg, estimate=None):
    estimate = estimate or revival_estimate(cfg)
    return np.linspace(0.0, cfg.t_max_factor * estimate.t_revival, cfg.n_points)


def _single_qubit_columns(times, rho, phase, omega):
    moving = phase + omega * np.asarray(times)
    cols = {"t": np.asarray(times), "p_ee": np.real(rho[:, 0, 0]),
            "s_lin": measures.linear_entropy(rho),
            "tangle": np.full(len(times), np.nan),
            "concurrence": np.full(len(times), np.nan)}
    for key, sign in (("p_att_plus", +1), ("p_att_minus", -1)):
        vec = np.stack([single_qubit_attractor(sign, 0.0)] * len(times))
        vec[:, 0] = np.exp(-1j * moving) * math.sqrt(0.5)
        cols[key] = np.real(np.einsum("ti,tij,tj->t", vec.conj(), rho, vec))
    return cols


def reduced_states(cfg, workers=None, method="blocks"):
    """Time grid and the two-qubit (or one-qubit) reduced density matrices."""
    params = model_params(cfg)
    grid = time_grid(cfg)
    psi0 = initial_state(np.array(cfg.amplitudes, dtype=complex), mode_state(cfg, params))
    if cfg.delta_width > 0:
        ensemble = gaussian_weight_grid(cfg.delta_width, cfg.delta_samples)
        return grid, ensemble_average_series(params, ensemble, psi0, grid, workers, method)
    states = Propagator(params, method=method).evolve(psi0, grid)
    return grid, measures.reduced_qubit_density(states, params.hilbert)


def run_scenario(cfg, workers=None, method="blocks"):
    """Simulate ``cfg`` and return its :class:`TimeSeries`.

    Errors raised by the numerical layers keep their type; the scenario
    name is prefixed to the message.
    """
    label = cfg.name or "scenario"
    try:
        estimate = revival_estimate(cfg)
        grid, rho = reduced_states(cfg, workers, method)
        if cfg.m_q == 2:
            cols = measures.diagnostics(grid, rho, mode_phase(cfg), cfg.omega)
        else:
            cols = _single_qubit_columns(grid, rho, mode_phase(cfg), cfg.omega)
    except SpinRevivalError as exc:
        exc.args = (f"[{label}] {exc}",)
        raise
    return TimeSeries({c: np.asarray(cols[c], dtype=float) for c in COLUMNS}, estimate, label)
