"""Rotating-frame spin propagator and transition probabilities.

The propagator is

    U(t) = exp(i w t Jz) exp(-i [(w - W) Jz - lam W Jx] t)

with ``w`` the drive frequency, ``W`` the Larmor frequency and ``lam`` the
dimensionless coupling.  The fast path rescales the spin matrices by ``-i``
(structure constant 1, real scalars) and replaces the second exponential by a
three-factor conjugation about the Y axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from cyclic_split.algebra import Axis
from cyclic_split.factor import split_two
from cyclic_split.linalg import expm, frobenius_norm
from cyclic_split.representations import Representation, rescale_basis, spin_generators

__all__ = [
    "RabiParams",
    "StateVector",
    "basis_index",
    "propagator",
    "propagator_direct",
    "propagator_factored",
    "evolve",
    "transition_probability",
    "sweep",
    "UNITARITY_TOL",
]

UNITARITY_TOL = 1e-9


@dataclass(frozen=True)
class RabiParams:
    omega: float
    Omega: float
    lam: float
    two_j: int = 1

    def __post_init__(self):
        for name in ("omega", "Omega", "lam"):
            x = float(getattr(self, name))
            if not math.isfinite(x):
                raise ValueError(f"{name} must be finite, got {x!r}")
            object.__setattr__(self, name, x)
        if int(self.two_j) < 1:
            raise ValueError(f"two_j must be >= 1, got {self.two_j}")
        object.__setattr__(self, "two_j", int(self.two_j))

    @property
    def dim(self) -> int:
        return self.two_j + 1

    @property
    def detuning(self) -> float:
        return self.omega - self.Omega

    @property
    def rabi_frequency(self) -> float:
        return self.lam * self.Omega


class StateVector:
    """Normalized amplitudes in the Jz eigenbasis, m = J first."""

    __slots__ = ("_amps",)

    def __init__(self, amplitudes, tol: float = 1e-10):
        amps = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size == 0:
            raise ValueError("state must have at least one amplitude")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > tol:
            raise ValueError(f"state norm {norm!r} differs from 1 by more than {tol}")
        amps.setflags(write=False)
        self._amps = amps

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amps

    @property
    def dim(self) -> int:
        return self._amps.size

    @classmethod
    def basis(cls, two_j: int, m) -> "StateVector":
        amps = np.zeros(int(two_j) + 1, dtype=np.complex128)
        amps[basis_index(two_j, m)] = 1.0
        return cls(amps)

    @classmethod
    def ground(cls, two_j: int) -> "StateVector":
        """``|m = -J>``, the last basis vector."""
        amps = np.zeros(int(two_j) + 1, dtype=np.complex128)
        amps[-1] = 1.0
        return cls(amps)

    def __repr__(self) -> str:
        return f"StateVector({self._amps.tolist()!r})"


def basis_index(two_j: int, m) -> int:
    """Row of ``|m>`` in the descending-m basis.

    ``m`` may be an int, float, ``Fraction`` or a string like ``"-1/2"``.
    """
    try:
        mf = Fraction(m) if not isinstance(m, float) else Fraction(m).limit_denominator(2)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ValueError(f"index: cannot read {m!r} as a magnetic quantum number") from None
    twice = 2 * mf
    if twice.denominator != 1:
        raise ValueError(f"index: m={m!r} is not an integer or half-integer")
    two_m = int(twice)
    if abs(two_m) > two_j or (two_j - two_m) % 2:
        raise ValueError(f"index: m={m!r} is not a valid level for two_j={two_j}")
    return (two_j - two_m) // 2


def _spin(two_j: int) -> Representation:
    return spin_generators(two_j)


def propagator_direct(params: RabiParams, t: float) -> np.ndarray:
    """Both exponentials evaluated directly with ``expm``."""
    rep = _spin(params.two_j)
    t = float(t)
    first = expm(1j * params.omega * t * rep.mZ)
    second = expm(-1j * (params.detuning * rep.mZ - params.rabi_frequency * rep.mX) * t)
    return first @ second


def _diag_exp(coeff: float, diag: np.ndarray) -> np.ndarray:
    return np.diag(np.exp(coeff * diag))


def propagator_factored(params: RabiParams, t: float) -> np.ndarray:
    """Second exponential split as ``exp(p K_Y) exp(q K_Z) exp(-p K_Y)`` with ``K = -iJ``."""
    t = float(t)
    rep = rescale_basis(_spin(params.two_j), -1j)
    kz_diag = np.diag(rep.mZ)
    # exp(-i[(w-W)Jz - lam W Jx] t) = exp(a K_Z + b K_X), a = (w-W) t, b = -lam W t.
    a = params.detuning * t
    b = -params.rabi_frequency * t
    p, q, _ = split_two(rep.spec, a, b, conjugating_axis=Axis.Y, inner_axis=Axis.Z)
    p, q = p.real, q.real
    conj = expm(p * rep.mY)
    conj_inv = conj.conj().T
    inner = _diag_exp(q, kz_diag)
    # exp(i w t Jz) = exp(-w t K_Z)
    frame = _diag_exp(-params.omega * t, kz_diag)
    return frame @ conj @ inner @ conj_inv


def propagator(params: RabiParams, t: float, check: bool = False) -> np.ndarray:
    """The rotating-frame propagator, via the factored path.

    With ``check=True`` the direct path is also computed and a
    ``RuntimeError`` raised if they differ by more than 1e-10.
    """
    if not math.isfinite(float(t)):
        raise ValueError(f"t must be finite, got {t!r}")
    U = propagator_factored(params, t)
    if check:
        gap = frobenius_norm(U - propagator_direct(params, t))
        if gap > 1e-10:
            raise RuntimeError(f"factored and direct propagators differ by {gap:.3e}")
    return U


def evolve(params: RabiParams, t: float, state: StateVector | None = None) -> StateVector:
    if state is None:
        state = StateVector.ground(params.two_j)
    if state.dim != params.dim:
        raise ValueError(f"shape: state has {state.dim} amplitudes, expected {params.dim}")
    psi = propagator(params, t) @ state.amplitudes
    return StateVector(psi, tol=1e-9)


def transition_probability(params: RabiParams, m_from, m_to, t: float) -> float:
    """``|<m_to| U(t) |m_from>|**2``."""
    i_from = basis_index(params.two_j, m_from)
    i_to = basis_index(params.two_j, m_to)
    amp = propagator(params, t)[i_to, i_from]
    return float(min(1.0, amp.real ** 2 + amp.imag ** 2))


def sweep(params: RabiParams, t_grid, m_from, m_to) -> list[tuple[float, float]]:
    """Transition probabilities over ``t_grid``, in grid order.

    Each row is checked for probability conservation out of ``m_from``.
    """
    i_from = basis_index(params.two_j, m_from)
    i_to = basis_index(params.two_j, m_to)
    rows = []
    for t in t_grid:
        t = float(t)
        if not math.isfinite(t):
            raise ValueError(f"t must be finite, got {t!r}")
        column = propagator(params, t)[:, i_from]
        probs = column.real ** 2 + column.imag ** 2
        total = float(np.sum(probs))
        if abs(total - 1.0) > UNITARITY_TOL:
            raise RuntimeError(f"probability leak at t={t!r}: column sums to {total!r}")
        rows.append((t, float(min(1.0, probs[i_to]))))
    return rows
