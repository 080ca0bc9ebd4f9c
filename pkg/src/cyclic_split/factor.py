"""Product-of-exponentials forms of ``exp(aX + bY)`` and ``exp(aX + bY + cZ)``.

Every form is a conjugation: rotate the generator combination about one axis
until a single generator is left, exponentiate that, and undo the rotation.
Two-generator splits give three factors, three-generator splits give five.

Rotation scalars come from a two-argument arctangent so that both the cosine
and the sine of ``kappa * p`` carry the right sign, not only their ratio.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from cyclic_split.algebra import AlgebraSpec, Axis, CoefficientVector
from cyclic_split.linalg import expm, frobenius_norm
from cyclic_split.representations import Representation

__all__ = [
    "ExpFactor",
    "FactorSequence",
    "VariantId",
    "VARIANTS",
    "VARIANT_NAMES",
    "IsotropicError",
    "rotation_to_axis",
    "split_two",
    "split_three",
    "all_variants",
    "evaluate",
    "residual",
    "printed_table_scalars",
    "literal_outer_comparison",
    "sequence_from_pairs",
]


class IsotropicError(ValueError):
    """The pair to be rotated has ``x**2 + y**2 == 0`` without both being zero.

    Only reachable with complex coefficients; no rotation can bring such a
    pair onto one axis.
    """


@dataclass(frozen=True)
class ExpFactor:
    axis: Axis
    coefficient: complex

    def __post_init__(self):
        z = complex(self.coefficient)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError(f"factor coefficient must be finite, got {z!r}")
        object.__setattr__(self, "axis", Axis(self.axis))
        object.__setattr__(self, "coefficient", z)


@dataclass(frozen=True)
class FactorSequence:
    """Ordered factors; the product is taken left to right.

    ``kappa`` records the structure constant the scalars were solved for, so
    evaluating on a representation with a different one is refused.
    """

    factors: tuple[ExpFactor, ...]
    kappa: complex

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "kappa", complex(self.kappa))

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __getitem__(self, k) -> ExpFactor:
        return self.factors[k]

    @property
    def center(self) -> ExpFactor:
        return self.factors[len(self.factors) // 2]

    def is_conjugation_symmetric(self) -> bool:
        n = len(self.factors)
        if n % 2 == 0:
            return False
        for k in range(n // 2):
            left, right = self.factors[k], self.factors[n - 1 - k]
            if left.axis != right.axis or left.coefficient != -right.coefficient:
                return False
        return True

    def pairs(self) -> list[tuple[str, complex]]:
        return [(f.axis.name, f.coefficient) for f in self.factors]


class VariantId(NamedTuple):
    """Ordering of a five-factor split.

    Rotate about ``first_axis`` to clear ``first_zeroed``, then rotate about
    ``first_zeroed`` so that only ``center_axis`` survives.
    """

    first_axis: Axis
    first_zeroed: Axis
    center_axis: Axis

    @property
    def name(self) -> str:
        return VARIANT_NAMES[self]

    @classmethod
    def parse(cls, label) -> "VariantId":
        if isinstance(label, VariantId):
            if label not in VARIANT_NAMES:
                raise ValueError(f"variant: {label!r} is not one of the twelve orderings")
            return label
        if isinstance(label, tuple) and len(label) == 3:
            vid = cls(*(Axis.parse(x) for x in label))
            return cls.parse(vid)
        key = str(label).strip().lower()
        if key in VARIANTS:
            return VARIANTS[key]
        raise ValueError(
            f"variant: unknown id {label!r}; expected one of {', '.join(VARIANTS)}"
        )


def _vid(first, zeroed, center) -> VariantId:
    return VariantId(Axis.parse(first), Axis.parse(zeroed), Axis.parse(center))


# Keyed by table and row of the published summary tables.
VARIANTS: dict[str, VariantId] = {
    "t2r1": _vid("Z", "Y", "X"),
    "t2r2": _vid("Z", "Y", "Z"),
    "t2r3": _vid("Z", "X", "Y"),
    "t2r4": _vid("Z", "X", "Z"),
    "t3r1": _vid("X", "Z", "Y"),
    "t3r2": _vid("X", "Z", "X"),
    "t3r3": _vid("X", "Y", "Z"),
    "t3r4": _vid("X", "Y", "X"),
    "t3r5": _vid("Y", "X", "Z"),
    "t3r6": _vid("Y", "X", "Y"),
    "t3r7": _vid("Y", "Z", "X"),
    "t3r8": _vid("Y", "Z", "Y"),
}
VARIANT_NAMES: dict[VariantId, str] = {v: k for k, v in VARIANTS.items()}


def _is_real(*zs: complex) -> bool:
    return all(complex(z).imag == 0 for z in zs)


def _principal_sqrt(z: complex) -> complex:
    z = complex(z)
    if z.imag == 0 and z.real >= 0:
        return complex(math.sqrt(z.real))
    return cmath.sqrt(z)


def _angle(cos_part: complex, sin_part: complex) -> tuple[complex, complex]:
    """Return ``(theta, rho)`` with ``rho cos(theta) = cos_part``, ``rho sin(theta) = sin_part``.

    ``rho`` is the principal square root of ``cos_part**2 + sin_part**2``.
    Both zero gives ``(0, 0)``.
    """
    x, y = complex(cos_part), complex(sin_part)
    if x == 0 and y == 0:
        return 0j, 0j
    if _is_real(x, y):
        return complex(math.atan2(y.real, x.real)), complex(math.hypot(x.real, y.real))
    rho = _principal_sqrt(x * x + y * y)
    if rho == 0:
        raise IsotropicError(
            f"cannot rotate ({x!r}, {y!r}) onto one axis: their squares sum to zero"
        )
    # exp(i theta) = (x + i y) / rho, and then exp(-i theta) = (x - i y) / rho.
    theta = -1j * cmath.log((x + 1j * y) / rho)
    return theta, rho


def rotation_to_axis(spec: AlgebraSpec, axis, keep, v: CoefficientVector) -> tuple[complex, complex]:
    """Scalar ``p`` such that ``exp(-p O_axis) V exp(p O_axis)`` has no component
    on the third axis, leaving ``rho`` on ``keep``.

    Returns ``(p, rho)``.  The ``axis`` component of ``V`` is ignored here; it is
    unchanged by the rotation anyway.
    """
    axis, keep = Axis(axis), Axis(keep)
    nu, lam = axis.succ, axis.succ.succ
    if keep == nu:
        # rho cos = v_nu, rho sin = v_lam
        theta, rho = _angle(v[nu], v[lam])
    elif keep == lam:
        # rho cos = v_lam, rho sin = -v_nu
        theta, rho = _angle(v[lam], -v[nu])
    else:
        raise ValueError(f"keep axis {keep.name} must differ from rotation axis {axis.name}")
    return theta / spec.kappa, rho


def split_two(spec: AlgebraSpec, a: complex, b: complex, conjugating_axis=Axis.Z, inner_axis=Axis.X):
    """Three-factor form ``exp(p C) exp(q I) exp(-p C)`` of ``exp(a N + b L)``.

    ``C`` is ``conjugating_axis``; ``N`` and ``L`` are its first and second
    cyclic successors, so with the default ``C = Z`` the input is
    ``a X + b Y``.  ``inner_axis`` picks which of ``N``, ``L`` survives.

    Returns ``(p, q, seq)``.
    """
    conj = Axis.parse(conjugating_axis)
    inner = Axis.parse(inner_axis)
    if inner == conj:
        raise ValueError("inner axis must differ from the conjugating axis")
    v = CoefficientVector.from_axes({conj.succ: a, conj.succ.succ: b})
    p, q = rotation_to_axis(spec, conj, inner, v)
    seq = FactorSequence(
        (ExpFactor(conj, p), ExpFactor(inner, q), ExpFactor(conj, -p)), spec.kappa
    )
    return p, q, seq


def split_three(spec: AlgebraSpec, v: CoefficientVector, variant):
    """Five-factor form of ``exp(a X + b Y + c Z)`` for one of the twelve orderings.

    Returns ``(p, q, r, seq)`` where the sequence is
    ``exp(p F) exp(q W) exp(r C) exp(-q W) exp(-p F)`` with ``F``, ``W``, ``C``
    the first axis, first-zeroed axis and center axis of ``variant``.
    """
    vid = VariantId.parse(variant)
    first, zeroed, center = vid
    survivor = first.third(zeroed)

    p, rho1 = rotation_to_axis(spec, first, survivor, v)
    # After the first rotation the zeroed slot is exactly 0 and the survivor
    # holds rho1; the component along ``first`` is untouched.
    rotated = CoefficientVector.from_axes({survivor: rho1, first: v[first]})
    q, _ = rotation_to_axis(spec, zeroed, center, rotated)
    r = _principal_sqrt(v.a * v.a + v.b * v.b + v.c * v.c)
    if _is_real(v.a, v.b, v.c):
        r = complex(math.sqrt(abs(v.a) ** 2 + abs(v.b) ** 2 + abs(v.c) ** 2))
    seq = FactorSequence(
        (
            ExpFactor(first, p),
            ExpFactor(zeroed, q),
            ExpFactor(center, r),
            ExpFactor(zeroed, -q),
            ExpFactor(first, -p),
        ),
        spec.kappa,
    )
    return p, q, r, seq


def all_variants(spec: AlgebraSpec, v: CoefficientVector) -> list[tuple[VariantId, FactorSequence]]:
    return [(vid, split_three(spec, v, vid)[3]) for vid in VARIANTS.values()]


def _check_kappa(rep: Representation, seq: FactorSequence) -> None:
    if not cmath.isclose(rep.kappa, seq.kappa, rel_tol=1e-12, abs_tol=0.0):
        raise ValueError(
            f"algebra mismatch: sequence built for kappa={seq.kappa!r}, "
            f"representation has kappa={rep.kappa!r}"
        )


def evaluate(rep: Representation, seq: FactorSequence) -> np.ndarray:
    """Matrix product of ``expm(coefficient * m_axis)`` over the sequence, left to right."""
    _check_kappa(rep, seq)
    out = np.eye(rep.dim, dtype=np.complex128)
    for f in seq:
        if f.coefficient == 0:
            continue
        out = out @ expm(f.coefficient * rep.generator(f.axis))
    return out


def residual(rep: Representation, v: CoefficientVector, seq: FactorSequence) -> float:
    """Frobenius distance between the factored product and ``expm(a mX + b mY + c mZ)``."""
    product = evaluate(rep, seq)
    return frobenius_norm(product - expm(rep.element(v)))


def printed_table_scalars(kappa: complex, v: CoefficientVector, variant) -> tuple[complex, complex]:
    """Outer and inner rotation scalars as printed in the summary tables.

    These use the one-argument arctangent and therefore agree with
    :func:`split_three` only where every quotient's denominator is positive.
    Kept as an independent cross-check of the programmatic construction.
    """
    name = VariantId.parse(variant).name
    a, b, c = (complex(z) for z in v)
    k = complex(kappa)
    s_ab = _principal_sqrt(a * a + b * b)
    s_bc = _principal_sqrt(b * b + c * c)
    s_ca = _principal_sqrt(c * c + a * a)
    at = cmath.atan
    table = {
        "t2r1": (at(b / a) / k, -at(c / s_ab) / k),
        "t2r2": (at(b / a) / k, at(s_ab / c) / k),
        "t2r3": (-at(a / b) / k, at(c / s_ab) / k),
        "t2r4": (-at(a / b) / k, -at(s_ab / c) / k),
        "t3r1": (at(c / b) / k, -at(a / s_bc) / k),
        "t3r2": (at(c / b) / k, at(s_bc / a) / k),
        "t3r3": (-at(b / c) / k, at(a / s_bc) / k),
        "t3r4": (-at(b / c) / k, -at(s_bc / a) / k),
        "t3r5": (at(a / c) / k, -at(b / s_ca) / k),
        "t3r6": (at(a / c) / k, at(s_ca / b) / k),
        "t3r7": (-at(c / a) / k, at(b / s_ca) / k),
        "t3r8": (-at(c / a) / k, -at(s_ca / b) / k),
    }
    return table[name]


def literal_outer_comparison(rep: Representation, v: CoefficientVector) -> list[dict]:
    """Residuals for the first two rows of the second table, symmetric vs as printed.

    The printed rows close the product with ``exp(-p2 X)`` where ``p2`` is the
    outer scalar of the ``t2r3`` row; the symmetric form closes with
    ``exp(-p3 X)``.  Both residuals are reported so the difference is visible.
    """
    spec = rep.spec
    p2 = split_three(spec, v, "t2r3")[0]
    rows = []
    for name in ("t3r1", "t3r2"):
        p3, q3, r, seq = split_three(spec, v, name)
        literal = FactorSequence(seq.factors[:4] + (ExpFactor(Axis.X, -p2),), seq.kappa)
        rows.append(
            {
                "variant": name,
                "symmetric_residual": residual(rep, v, seq),
                "literal_residual": residual(rep, v, literal),
                "differs": not cmath.isclose(p2, p3, rel_tol=0.0, abs_tol=1e-15),
            }
        )
    return rows


def sequence_from_pairs(kappa: complex, pairs: Sequence[tuple]) -> FactorSequence:
    return FactorSequence(tuple(ExpFactor(Axis.parse(ax), c) for ax, c in pairs), kappa)
