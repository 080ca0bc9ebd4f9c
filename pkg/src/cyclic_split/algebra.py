"""Abstract three-generator cyclic Lie algebra.

The algebra is spanned by X, Y, Z with ``[O_mu, O_nu] = kappa * eps_{mu nu lam} O_lam``.
Elements are handled through their coefficient triples; nothing here touches a
matrix.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

__all__ = [
    "Axis",
    "AlgebraSpec",
    "CoefficientVector",
    "ZERO_BRACKET",
    "commutator_coefficient",
    "bracket",
    "adjoint_rotate",
    "jacobi_residual_symbolic",
    "cos_sin",
]


class Axis(enum.IntEnum):
    X = 0
    Y = 1
    Z = 2

    @property
    def succ(self) -> "Axis":
        """Cyclic successor, X -> Y -> Z -> X."""
        return Axis((self + 1) % 3)

    @property
    def pred(self) -> "Axis":
        return Axis((self + 2) % 3)

    def third(self, other: "Axis") -> "Axis":
        """The axis that is neither ``self`` nor ``other``."""
        if self == other:
            raise ValueError(f"axes must differ, got {self.name} twice")
        return Axis(3 - self - other)

    @classmethod
    def parse(cls, label) -> "Axis":
        if isinstance(label, Axis):
            return label
        try:
            return cls[str(label).strip().upper()]
        except KeyError:
            raise ValueError(f"unknown axis {label!r}; expected X, Y or Z") from None


class _ZeroBracket:
    """Marker for a vanishing commutator ``[O_mu, O_mu] = 0``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZERO_BRACKET"

    def __bool__(self) -> bool:
        return False


ZERO_BRACKET = _ZeroBracket()


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


@dataclass(frozen=True)
class AlgebraSpec:
    kappa: complex
    basis: tuple[Axis, Axis, Axis] = (Axis.X, Axis.Y, Axis.Z)

    def __post_init__(self):
        k = complex(self.kappa)
        if k == 0 or not _finite(k):
            raise ValueError(f"kappa must be a finite nonzero scalar, got {self.kappa!r}")
        object.__setattr__(self, "kappa", k)
        if tuple(self.basis) != (Axis.X, Axis.Y, Axis.Z):
            raise ValueError("basis must be the ordered triple (X, Y, Z)")


@dataclass(frozen=True)
class CoefficientVector:
    """Coefficients of ``a X + b Y + c Z``."""

    a: complex = 0j
    b: complex = 0j
    c: complex = 0j

    def __post_init__(self):
        for name in ("a", "b", "c"):
            z = complex(getattr(self, name))
            if not _finite(z):
                raise ValueError(f"coefficient {name} must be finite, got {z!r}")
            object.__setattr__(self, name, z)

    def __getitem__(self, axis) -> complex:
        return (self.a, self.b, self.c)[Axis(axis)]

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def with_component(self, axis, value: complex) -> "CoefficientVector":
        parts = list(self)
        parts[Axis(axis)] = value
        return CoefficientVector(*parts)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    def is_real(self) -> bool:
        return self.a.imag == 0 and self.b.imag == 0 and self.c.imag == 0

    def norm(self) -> float:
        return math.sqrt(sum(abs(z) ** 2 for z in self))

    @classmethod
    def from_axes(cls, values: dict) -> "CoefficientVector":
        parts = [0j, 0j, 0j]
        for axis, value in values.items():
            parts[Axis.parse(axis)] = value
        return cls(*parts)


def commutator_coefficient(spec: AlgebraSpec, mu: Axis, nu: Axis):
    """Structure constant of ``[O_mu, O_nu]``.

    Returns ``(lam, kappa * eps_{mu nu lam})`` or ``ZERO_BRACKET`` when
    ``mu == nu``.
    """
    mu, nu = Axis(mu), Axis(nu)
    if mu == nu:
        return ZERO_BRACKET
    lam = mu.third(nu)
    sign = 1 if nu == mu.succ else -1
    return lam, sign * spec.kappa


def bracket(spec: AlgebraSpec, u: CoefficientVector, w: CoefficientVector) -> CoefficientVector:
    """Coefficient vector of ``[u, w]`` expanded bilinearly over the basis."""
    out = [0j, 0j, 0j]
    for mu in Axis:
        for nu in Axis:
            term = commutator_coefficient(spec, mu, nu)
            if term is ZERO_BRACKET:
                continue
            lam, coeff = term
            out[lam] += coeff * u[mu] * w[nu]
    return CoefficientVector(*out)


def cos_sin(angle: complex) -> tuple[complex, complex]:
    """``cos`` and ``sin`` of a possibly complex angle; real angles stay exact."""
    angle = complex(angle)
    if angle.imag == 0:
        return complex(math.cos(angle.real)), complex(math.sin(angle.real))
    return cmath.cos(angle), cmath.sin(angle)


def adjoint_rotate(spec: AlgebraSpec, axis: Axis, p: complex, v: CoefficientVector) -> CoefficientVector:
    """Coefficients of ``exp(-p O_axis) V exp(p O_axis)``.

    With ``nu`` the cyclic successor of ``axis`` and ``lam`` the one after it,
    ``O_nu -> O_nu cos(kp) - O_lam sin(kp)`` and
    ``O_lam -> O_lam cos(kp) + O_nu sin(kp)``; the ``axis`` component is
    left untouched.
    """
    axis = Axis(axis)
    nu, lam = axis.succ, axis.succ.succ
    cos_k, sin_k = cos_sin(spec.kappa * complex(p))
    v_nu, v_lam = v[nu], v[lam]
    parts = [0j, 0j, 0j]
    parts[axis] = v[axis]
    parts[nu] = v_nu * cos_k + v_lam * sin_k
    parts[lam] = -v_nu * sin_k + v_lam * cos_k
    return CoefficientVector(*parts)


def jacobi_residual_symbolic(spec: AlgebraSpec) -> float:
    """Norm of ``[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]]`` from structure constants alone."""
    unit = {ax: CoefficientVector.from_axes({ax: 1}) for ax in Axis}
    total = CoefficientVector()
    for ax in Axis:
        inner = bracket(spec, unit[ax.succ], unit[ax.pred])
        term = bracket(spec, unit[ax], inner)
        total = CoefficientVector(*(s + t for s, t in zip(total, term)))
    return total.norm()
