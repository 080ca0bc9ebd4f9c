"""Concrete matrix realizations of the cyclic algebra."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from cyclic_split.algebra import AlgebraSpec, Axis
from cyclic_split.linalg import as_matrix, commutator, frobenius_norm

__all__ = [
    "Representation",
    "spin_generators",
    "so3_generators",
    "rescale_basis",
    "validate_cyclic",
]


@dataclass(frozen=True, eq=False)
class Representation:
    mX: np.ndarray
    mY: np.ndarray
    mZ: np.ndarray
    kappa: complex
    label: str = ""

    def __post_init__(self):
        mats = [as_matrix(m).copy() for m in (self.mX, self.mY, self.mZ)]
        if len({m.shape for m in mats}) != 1:
            raise ValueError("shape: generators must share one dimension")
        for m in mats:
            m.setflags(write=False)
        object.__setattr__(self, "mX", mats[0])
        object.__setattr__(self, "mY", mats[1])
        object.__setattr__(self, "mZ", mats[2])
        object.__setattr__(self, "kappa", complex(self.kappa))

    @property
    def dim(self) -> int:
        return self.mX.shape[0]

    @property
    def spec(self) -> AlgebraSpec:
        return AlgebraSpec(self.kappa)

    def generator(self, axis) -> np.ndarray:
        return (self.mX, self.mY, self.mZ)[Axis(axis)]

    def element(self, v) -> np.ndarray:
        """Matrix of ``a mX + b mY + c mZ`` for a coefficient triple ``v``."""
        a, b, c = (complex(z) for z in v)
        return a * self.mX + b * self.mY + c * self.mZ


def spin_generators(two_j: int) -> Representation:
    """Spin-J matrices ``Jx, Jy, Jz`` with ``J = two_j / 2`` and ``hbar = 1``.

    Basis is the Jz eigenbasis ordered m = J, J-1, ..., -J.
    """
    two_j = int(two_j)
    if two_j < 1:
        raise ValueError(
            "trivial representation: two_j must be >= 1 (spin 0 has all generators zero)"
        )
    dim = two_j + 1
    j = two_j / 2.0
    ms = [j - k for k in range(dim)]
    j_plus = np.zeros((dim, dim), dtype=np.complex128)
    # <m+1| J+ |m> sits at row k-1, column k when row k holds m.
    for k in range(1, dim):
        m = ms[k]
        j_plus[k - 1, k] = math.sqrt(j * (j + 1) - m * (m + 1))
    j_minus = j_plus.conj().T
    jx = (j_plus + j_minus) / 2
    jy = (j_plus - j_minus) / 2j
    jz = np.diag(np.array(ms, dtype=np.complex128))
    return Representation(jx, jy, jz, 1j, label=f"spin(two_j={two_j})")


def so3_generators() -> Representation:
    """Real 3x3 rotation generators ``(K_mu)_{jk} = -eps_{mu j k}``; kappa = 1."""
    mats = []
    for mu in range(3):
        K = np.zeros((3, 3))
        for j in range(3):
            for k in range(3):
                K[j, k] = -_levi_civita(mu, j, k)
        mats.append(K)
    return Representation(*mats, kappa=1.0, label="so3")


def _levi_civita(i: int, j: int, k: int) -> int:
    return (i - j) * (j - k) * (k - i) // 2


def rescale_basis(rep: Representation, s: complex) -> Representation:
    """Multiply every generator by ``s``; the structure constant becomes ``s * kappa``."""
    s = complex(s)
    if s == 0:
        raise ValueError("degenerate scale: s must be nonzero")
    label = f"{rep.label}*({s:g})" if rep.label else ""
    return Representation(s * rep.mX, s * rep.mY, s * rep.mZ, s * rep.kappa, label=label)


def validate_cyclic(rep: Representation) -> float:
    """Largest Frobenius defect of ``[m_mu, m_nu] = kappa m_lam`` over cyclic pairs."""
    worst = 0.0
    for mu in Axis:
        nu, lam = mu.succ, mu.succ.succ
        defect = commutator(rep.generator(mu), rep.generator(nu)) - rep.kappa * rep.generator(lam)
        worst = max(worst, frobenius_norm(defect))
    return worst
