"""Semi-implicit 1-D integrator: implicit diffusion, explicit reaction.

Fields are evolved in carrying-capacity-scaled form internally; the public
types carry physical units. Non-negativity and the beta < b_i bound are
enforced at every step: round-off sized violations (within 1e-12 * b_i) are
clamped, anything larger raises InvariantError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvariantError, ParameterError
from .params import ModelParams

CLAMP_TOL = 1e-12          # scaled by b_i
DT_SAFETY = 0.2            # explicit-reaction stability margin


@dataclass(frozen=True)
class Domain1D:
    """Uniform 1-D grid on [0, length] with Neumann ends."""

    length: float
    n_points: int

    def __post_init__(self):
        if not (math.isfinite(self.length) and self.length > 0.0):
            raise ParameterError(f"length must be positive, got {self.length!r}")
        if self.n_points < 16:
            raise ParameterError(f"n_points must be >= 16, got {self.n_points}")

    @property
    def dx(self) -> float:
        return self.length / (self.n_points - 1)

    def x(self) -> np.ndarray:
        return np.linspace(0.0, self.length, self.n_points)


@dataclass(frozen=True)
class FieldState:
    """Paired spatial profiles at one instant; densities in units/m^3."""

    time: float
    beta: np.ndarray
    gamma: np.ndarray


@dataclass(frozen=True)
class SimConfig:
    """Time stepping and initial-condition description.

    ``ic`` selects between a localized bacterial spot on an empty background
    ("spot") and a relative-noise perturbation of the homogeneous equilibrium
    ("perturbation", deterministic for a fixed seed).
    """

    t_end: float
    dt: float = 1.0
    snapshot_every: float = 1440.0
    ic: str = "spot"
    spot_center: float = 0.015
    spot_half_width: float = 5e-5
    spot_amplitude: float = 1e15
    background: float = 0.0
    noise_rel: float = 1e-3
    seed: int = 0

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ParameterError(f"dt must be positive, got {self.dt!r}")
        if self.t_end < self.dt:
            raise ParameterError(f"t_end must be >= dt, got {self.t_end!r}")
        stride = self.snapshot_every / self.dt
        if self.snapshot_every <= 0.0 or abs(stride - round(stride)) > 1e-9:
            raise ParameterError("snapshot_every must be a positive multiple of dt")
        if self.ic not in ("spot", "perturbation"):
            raise ParameterError(f"unknown initial condition {self.ic!r}")
        if self.spot_amplitude < 0.0 or self.background < 0.0 or self.noise_rel < 0.0:
            raise ParameterError("initial-condition amplitudes must be non-negative")


def max_stable_dt(p: ModelParams) -> float:
    """Conservative explicit-reaction step bound.

    The limiting rates are the linear self-decay scales of the two fields:
    r_b + f_e*kappa for bacteria near the equilibrium balance, f_b and r_c
    for phagocytes.
    """
    rate = max(p.r_b + p.f_e * p.kappa, p.f_b, p.r_c)
    return DT_SAFETY / rate


def initial_state(p: ModelParams, dom: Domain1D, cfg: SimConfig) -> FieldState:
    """Build the initial fields; physical units."""
    x = dom.x()
    if cfg.ic == "spot":
        beta = np.full(dom.n_points, cfg.background, dtype=float)
        beta[np.abs(x - cfg.spot_center) <= cfg.spot_half_width] = cfg.spot_amplitude
        gamma = np.zeros(dom.n_points)
    else:
        from .params import steady_state

        eq = steady_state(p)
        rng = np.random.default_rng(cfg.seed)
        beta = eq.beta_bar * (1.0 + cfg.noise_rel * rng.uniform(-1.0, 1.0, dom.n_points))
        gamma = eq.gamma_bar * (1.0 + cfg.noise_rel * rng.uniform(-1.0, 1.0, dom.n_points))
    if np.any(beta >= p.b_i):
        raise ParameterError("initial bacterial density must stay below b_i")
    return FieldState(time=0.0, beta=beta, gamma=gamma)


def _check_and_clamp(b: np.ndarray, g: np.ndarray, t: float) -> None:
    """Enforce field invariants in scaled units, in place."""
    if not (np.all(np.isfinite(b)) and np.all(np.isfinite(g))):
        raise InvariantError(f"non-finite field value at t={t} min")
    b_min = b.min()
    g_min = g.min()
    if b_min < -CLAMP_TOL or g_min < -CLAMP_TOL:
        raise InvariantError(
            f"negativity beyond tolerance at t={t} min "
            f"(min beta/b_i={b_min:.3e}, min gamma/b_i={g_min:.3e}); dt too large?"
        )
    if b_min < 0.0:
        np.clip(b, 0.0, None, out=b)
    if g_min < 0.0:
        np.clip(g, 0.0, None, out=g)
    b_max = b.max()
    if b_max >= 1.0 + CLAMP_TOL:
        raise InvariantError(f"beta exceeded b_i at t={t} min (beta/b_i={b_max:.6e})")
    if b_max >= 1.0:
        np.minimum(b, np.nextafter(1.0, 0.0), out=b)


def _step_scaled(p: ModelParams, dom: Domain1D, b, g, dt, t_next):
    s = p.s_b / p.b_i
    mu_b = dt * p.d_b / dom.dx**2
    mu_c = dt * p.d_c / dom.dx**2
    b_new, g_new = kernels.step_arrays(b, g, dt, mu_b, mu_c, p.r_b, p.a, s, p.f_e, p.f_b, p.r_c)
    _check_and_clamp(b_new, g_new, t_next)
    return b_new, g_new


def step(p: ModelParams, dom: Domain1D, s: FieldState, dt: float) -> FieldState:
    """Advance one time step and return the new state."""
    if dt <= 0.0:
        raise ParameterError(f"dt must be positive, got {dt!r}")
    if dt > max_stable_dt(p):
        raise ParameterError(
            f"dt={dt} exceeds the explicit-reaction bound {max_stable_dt(p):.4g} min"
        )
    b = s.beta / p.b_i
    g = s.gamma / p.b_i
    b, g = _step_scaled(p, dom, b, g, dt, s.time + dt)
    return FieldState(time=s.time + dt, beta=b * p.b_i, gamma=g * p.b_i)


def simulate(p: ModelParams, dom: Domain1D, cfg: SimConfig) -> list[FieldState]:
    """Integrate to t_end, returning snapshots on the configured cadence.

    The final state is always included. Step failures propagate with the
    offending time attached.
    """
    if cfg.dt > max_stable_dt(p):
        raise ParameterError(
            f"dt={cfg.dt} exceeds the explicit-reaction bound {max_stable_dt(p):.4g} min"
        )
    state0 = initial_state(p, dom, cfg)
    b = state0.beta / p.b_i
    g = state0.gamma / p.b_i
    n_steps = int(round(cfg.t_end / cfg.dt))
    stride = int(round(cfg.snapshot_every / cfg.dt))
    snapshots = [state0]
    for k in range(1, n_steps + 1):
        t = k * cfg.dt
        b, g = _step_scaled(p, dom, b, g, cfg.dt, t)
        if k % stride == 0 or k == n_steps:
            snapshots.append(FieldState(time=t, beta=b * p.b_i, gamma=g * p.b_i))
    return snapshots
