"""Exit criteria. Each test prints one ``ACCEPTANCE`` line with its verdict.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also echoed through the terminal even when output is captured.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from cyclic_split import bch
from cyclic_split.algebra import AlgebraSpec, Axis, CoefficientVector, adjoint_rotate, cos_sin
from cyclic_split.dynamics import RabiParams, propagator_direct, propagator_factored, transition_probability
from cyclic_split.factor import VARIANTS, residual, split_three, split_two
from cyclic_split.linalg import expm, frobenius_norm, logm_principal
from cyclic_split.representations import so3_generators, spin_generators

SEED = 31415
REPS = [so3_generators()] + [spin_generators(t) for t in (1, 2, 3, 4)]
REP_IDS = [r.label for r in REPS]


@pytest.fixture
def report(capsys):
    def emit(criterion, ok, detail):
        line = f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}"
        with capsys.disabled():
            print("\n" + line)
        return ok

    return emit


# 1 ------------------------------------------------------------------------


@pytest.mark.parametrize("rep", REPS, ids=REP_IDS)
def test_c1_theorem(rep, report):
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        a, b = rng.uniform(-5, 5, 2)
        p, q, seq = split_two(rep.spec, a, b, Axis.Z, Axis.X)
        worst = max(worst, residual(rep, CoefficientVector(a, b, 0), seq))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and elapsed < 10
    report("C1 theorem", ok, f"{rep.label}: max residual {worst:.3e} (tol 1e-10), {elapsed:.2f}s")
    assert worst <= 1e-10
    assert elapsed < 10


# 2 ------------------------------------------------------------------------


@pytest.mark.parametrize("rep", REPS, ids=REP_IDS)
def test_c2_corollary_all_variants(rep, report):
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    worst, worst_center = 0.0, 0.0
    worst_variant = None
    for name, vid in VARIANTS.items():
        for _ in range(100):
            v = CoefficientVector(*rng.uniform(-5, 5, 3))
            p, q, r, seq = split_three(rep.spec, v, vid)
            res = residual(rep, v, seq)
            if res > worst:
                worst, worst_variant = res, name
            worst_center = max(worst_center, abs(abs(seq.center.coefficient) - v.norm()))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and worst_center <= 1e-12 and elapsed < 60
    report(
        "C2 corollary",
        ok,
        f"{rep.label}: max residual {worst:.3e} at {worst_variant} (tol 1e-10), "
        f"center |r| error {worst_center:.1e} (tol 1e-12), {elapsed:.2f}s",
    )
    assert worst_center <= 1e-12
    assert worst <= 1e-10
    assert elapsed < 60


# 3 ------------------------------------------------------------------------

# exp(-p A) B exp(p A) = B cos(kp) + sign * C sin(kp), written out row by row.
TABLE_ONE = {
    ("X", "Y"): ("Z", -1),
    ("X", "Z"): ("Y", +1),
    ("Y", "Z"): ("X", -1),
    ("Y", "X"): ("Z", +1),
    ("Z", "X"): ("Y", -1),
    ("Z", "Y"): ("X", +1),
}


def test_c3_table_one(report):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    checked = 0
    for rep in REPS:
        for mu in "XYZ":
            for nu in "XYZ":
                A = rep.generator(Axis.parse(mu))
                B = rep.generator(Axis.parse(nu))
                for _ in range(50):
                    theta = rng.uniform(-4, 4)
                    p = theta / rep.kappa
                    lhs = expm(-p * A) @ B @ expm(p * A)
                    if mu == nu:
                        rhs = B
                    else:
                        other, sign = TABLE_ONE[(mu, nu)]
                        c, s = cos_sin(rep.kappa * p)
                        rhs = B * c + sign * s * rep.generator(Axis.parse(other))
                    unit = CoefficientVector.from_axes({nu: 1})
                    via_rotate = rep.element(adjoint_rotate(rep.spec, Axis.parse(mu), p, unit))
                    worst = max(worst, frobenius_norm(lhs - rhs), frobenius_norm(lhs - via_rotate))
                    checked += 1
    ok = worst <= 1e-10
    report("C3 Table I", ok, f"{checked} checks over 9 transformations x {len(REPS)} reps, max residual {worst:.3e}")
    assert ok


# 4 ------------------------------------------------------------------------

QUADRANT_CASES = [
    (1, 1), (-1, 1), (-1, -1), (1, -1),
    (0, 1), (0, -1), (1, 0), (-1, 0),
    (3.7, 0.2), (-0.01, 4.5), (-2.5, -2.5e-8), (1e-9, -3.0),
]


@pytest.mark.parametrize("kappa", [1, 1j, 2.5, -1j])
def test_c4_sign_conditions(kappa, report):
    spec = AlgebraSpec(kappa)
    worst = 0.0
    for a, b in QUADRANT_CASES:
        rho = math.hypot(a, b)
        p, q, _ = split_two(spec, a, b, Axis.Z, Axis.X)
        c, s = cos_sin(spec.kappa * p)
        worst = max(worst, abs(c - a / rho), abs(s - b / rho), abs(q - rho))
        # Surviving Y: cos = b / rho, sin = -a / rho.
        p2, q2, _ = split_two(spec, a, b, Axis.Z, Axis.Y)
        c2, s2 = cos_sin(spec.kappa * p2)
        worst = max(worst, abs(c2 - b / rho), abs(s2 + a / rho), abs(q2 - rho))
    ok = worst <= 1e-12
    report("C4 sign conditions", ok, f"kappa={kappa}: {len(QUADRANT_CASES)} cases, max deviation {worst:.1e}")
    assert ok


# 5 ------------------------------------------------------------------------


def test_c5_cbhd(report):
    coeffs = bch.low_order_coefficients()
    expected = {
        "X": Fraction(1), "Y": Fraction(1), "[X,Y]": Fraction(1, 2),
        "[X,[X,Y]]": Fraction(1, 12), "[Y,[X,Y]]": Fraction(-1, 12),
    }
    exact_ok = coeffs == expected

    rng = np.random.default_rng(SEED)
    half = spin_generators(1)
    worst_log, worst_step = 0.0, -math.inf
    for _ in range(20):
        u, w = rng.uniform(-1, 1, (2, 3))
        X = 1j * half.element(u)
        Y = 1j * half.element(w)
        X *= rng.uniform(0.05, 0.3) / frobenius_norm(X)
        Y *= rng.uniform(0.05, 0.3) / frobenius_norm(Y)
        H8 = bch.dynkin_sum(X, Y, 8)
        worst_log = max(worst_log, frobenius_norm(H8 - logm_principal(expm(X) @ expm(Y))))
        errs = [e for _, e in bch.truncation_error_curve(X, Y, range(1, 9))]
        worst_step = max(worst_step, max(b - a for a, b in zip(errs, errs[1:])))
    ok = exact_ok and worst_log <= 1e-6 and worst_step <= 1e-13
    report(
        "C5 CBHD",
        ok,
        f"exact low-order coefficients {'match' if exact_ok else 'MISMATCH'}, "
        f"H8 vs logm {worst_log:.2e} (tol 1e-6), largest curve increase {worst_step:.1e} (slack 1e-13)",
    )
    assert exact_ok
    assert worst_log <= 1e-6
    assert worst_step <= 1e-13


# 6 ------------------------------------------------------------------------


def test_c6_non_separability(report):
    rng = np.random.default_rng(SEED)
    rep = spin_generators(1)
    min_naive, max_factored = math.inf, 0.0
    for _ in range(200):
        a, b = rng.uniform(0.1, 5, 2) * rng.choice([-1, 1], 2)
        direct = expm(a * rep.mX + b * rep.mY)
        naive = expm(a * rep.mX) @ expm(b * rep.mY)
        min_naive = min(min_naive, frobenius_norm(direct - naive))
        seq = split_two(rep.spec, a, b)[2]
        max_factored = max(max_factored, residual(rep, CoefficientVector(a, b, 0), seq))
    ok = min_naive > 1e-3 and max_factored <= 1e-10
    report("C6 non-separability", ok,
           f"naive product min gap {min_naive:.3e} (> 1e-3), factored max residual {max_factored:.2e}")
    assert ok


# 7 ------------------------------------------------------------------------


def test_c7_rabi(report):
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    worst_path, worst_unit = 0.0, 0.0
    for _ in range(100):
        params = RabiParams(rng.uniform(0.1, 10), rng.uniform(0.1, 10), rng.uniform(0, 0.5),
                            int(rng.integers(1, 4)))
        t = rng.uniform(0, 50)
        U = propagator_factored(params, t)
        worst_path = max(worst_path, frobenius_norm(U - propagator_direct(params, t)))
        worst_unit = max(worst_unit, frobenius_norm(U.conj().T @ U - np.eye(params.dim)))
    res = RabiParams(2.0, 2.0, 0.05, 1)
    worst_res = 0.0
    for t in np.linspace(0, 200, 1000):
        p = transition_probability(res, -0.5, 0.5, t)
        worst_res = max(worst_res, abs(p - math.sin(res.lam * res.Omega * t / 2) ** 2))
        U = propagator_factored(res, t)
        worst_unit = max(worst_unit, frobenius_norm(U.conj().T @ U - np.eye(2)))
    elapsed = time.perf_counter() - start
    ok = worst_path <= 1e-10 and worst_res <= 1e-9 and worst_unit <= 1e-10 and elapsed < 10
    report("C7 Rabi", ok,
           f"path gap {worst_path:.2e}, resonance error {worst_res:.2e}, "
           f"unitarity {worst_unit:.2e}, {elapsed:.2f}s")
    assert ok


# 8 ------------------------------------------------------------------------

DEGENERATE_TWO = [(0, 0), (0, 1.3), (0, -2.0), (1.7, 0), (-0.9, 0)]
DEGENERATE_THREE = [(1.2, -0.7, 0), (0, 0, 1.5), (0, 0, -1.1), (0, 0.8, 0), (-1.0, 0, 0),
                    (0, 0, 0), (0.6, 0, -1.4), (0, -0.5, 0.9)]


def test_c8_degenerate(report):
    worst = 0.0
    finite = True
    for rep in REPS:
        for a, b in DEGENERATE_TWO:
            v = CoefficientVector(a, b, 0)
            for inner in (Axis.X, Axis.Y):
                seq = split_two(rep.spec, a, b, Axis.Z, inner)[2]
                finite &= all(math.isfinite(abs(f.coefficient)) for f in seq)
                worst = max(worst, residual(rep, v, seq))
        for abc in DEGENERATE_THREE:
            v = CoefficientVector(*abc)
            for name in VARIANTS:
                seq = split_three(rep.spec, v, name)[3]
                finite &= all(math.isfinite(abs(f.coefficient)) for f in seq)
                worst = max(worst, residual(rep, v, seq))
    ok = finite and worst <= 1e-12
    report("C8 degenerate inputs", ok, f"all coefficients finite: {finite}, max residual {worst:.2e} (tol 1e-12)")
    assert ok
