"""Acceptance battery: one test per advertised guarantee, stated tolerances.

Each test prints a single summary line so a scan of the output shows which
guarantees hold at which margins.
"""

import json
import time
from pathlib import Path

import numpy as np
import pytest

import semigroup_lab as sl
from semigroup_lab import spectral as sp
from semigroup_lab.cli import main as cli_main


def _line(num, name, ok, detail=""):
    print(f"criterion {num:02d} {name}: {'PASS' if ok else 'FAIL'} {detail}")


def _random_contraction(rng, dim):
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 2.0 * m / sl.op_norm(m)


def test_generator_recovery_random_families():
    rng = np.random.default_rng(42)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(20):
        dim = int(rng.integers(1, 7))
        m = _random_contraction(rng, dim) * rng.uniform(0.1, 1.0)
        fam = sl.build_family(sl.GeneratorSpec("constant", m), 1.0)
        res = sl.log_representation(fam, 0.2, 0.0, 1.0, 1e-4)
        worst = max(worst, res.residual_vs_true)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-6 and elapsed <= 5.0
    _line(1, "generator_recovery", ok, f"max_err={worst:.3e} t={elapsed:.2f}s")
    assert worst <= 1e-6
    assert elapsed <= 5.0


def test_kappa_independence():
    rng = np.random.default_rng(7)
    m = _random_contraction(rng, 4)
    fam = sl.build_family(sl.GeneratorSpec("constant", m), 1.0)
    kappas = [0.3, 1.0, 2.0, 1.0 + 1.0j]
    ests = [
        sl.log_representation(fam, 0.2, 0.0, k, 1e-4).generator_estimate
        for k in kappas
        if sl.kappa_admissible(fam, 0.2, 0.0, k)
    ]
    assert len(ests) >= 2
    spread = max(
        sl.op_norm(a - b) for i, a in enumerate(ests) for b in ests[i + 1 :]
    )
    _line(2, "kappa_independence", spread <= 1e-8, f"spread={spread:.3e}")
    assert spread <= 1e-8


def test_group_axioms():
    rng = np.random.default_rng(3)
    worst = 0.0
    families = [
        sl.build_family(
            sl.GeneratorSpec("constant", _random_contraction(rng, 3)), 1.0
        ),
        sl.build_family(
            sl.GeneratorSpec(
                "scalar_modulated",
                np.diag([1.0, -0.5]).astype(complex),
                sl.coefficient_from_name("sin:1"),
            ),
            1.0,
        ),
    ]
    for fam in families:
        triples = [tuple(rng.uniform(-1.0, 1.0, 3)) for _ in range(50)]
        rep = sl.check_group_axioms(fam, triples)
        worst = max(worst, max(rep.residuals.values()))
    _line(3, "group_axioms", worst <= 1e-10, f"max_residual={worst:.3e}")
    assert worst <= 1e-10


def _shock_residual(n):
    grid = sl.Grid1D(L=2.0, n=n)
    dt = grid.dx
    ts = np.arange(0.0, 0.5 + dt / 2.0, dt)
    useq = 1.0 + np.exp(grid.x[None, :] + ts[:, None])
    psi = np.array([sl.cole_hopf_transform(grid, u, 1.0) for u in useq])
    rep = sl.burgers_residual(grid, psi, 1.0, dt)
    return rep.residuals["linf"], rep.tolerances["linf"]


def test_cole_hopf_forward_and_convergence():
    start = time.perf_counter()
    coarse, tol = _shock_residual(256)
    # n -> 2n+1 halves dx exactly; dt = dx halves with it
    fine, _ = _shock_residual(513)
    elapsed = time.perf_counter() - start
    ratio = coarse / fine
    ok = coarse <= tol and ratio >= 3.5 and elapsed <= 10.0
    _line(4, "cole_hopf_forward", ok,
          f"linf={coarse:.3e} tol={tol:.3e} ratio={ratio:.2f} t={elapsed:.2f}s")
    assert coarse <= tol
    assert ratio >= 3.5
    assert elapsed <= 10.0


def test_gauge_invariance():
    grid = sl.Grid1D(L=2.0, n=256)
    dt = grid.dx
    ts = np.arange(0.0, 0.2, dt)
    useq = 1.0 + np.exp(grid.x[None, :] + ts[:, None])
    worst = 0.0
    for name in ("const:0", "const:5", "sin:1"):
        rep = sl.gauge_check(grid, useq, dt, sl.coefficient_from_name(name), 1.0)
        worst = max(worst, rep.residuals["max_diff"])
    _line(5, "gauge_invariance", worst <= 1e-12, f"max_diff={worst:.3e}")
    assert worst <= 1e-12


def test_cross_solver_agreement():
    grid = sl.Grid1D(L=10.0, n=512)
    # shock profile: Cole-Hopf image of u = 1 + exp(x + t) at t = 0
    psi0 = sl.cole_hopf_transform(grid, 1.0 + np.exp(grid.x), 1.0)
    dt = 0.25 * grid.dx**2
    seq = sl.solve_burgers_direct(grid, psi0, 1.0, dt, 0.5)
    t_end = (len(seq) - 1) * dt
    psi_pipe = sl.cole_hopf_transform(grid, 1.0 + np.exp(grid.x + t_end), 1.0)
    mask = np.abs(grid.x) <= grid.L / 2.0
    gap = float(np.sum(np.abs(seq[-1][mask] - psi_pipe[mask])) * grid.dx)
    _line(6, "cross_solver_agreement", gap <= 0.05, f"interior_l1={gap:.3e}")
    assert gap <= 0.05


def test_resolvent_bound():
    rng = np.random.default_rng(11)
    grid = sp.FrequencyGrid(m=512, domega=0.0625)
    for _ in range(100):
        lam = complex(rng.uniform(0.1, 10.0), rng.uniform(-8.0, 8.0))
        rep = sp.resolvent_bound_check(lam, 1.0, grid)
        for n in range(1, 5):
            assert rep.residuals[f"sup_n{n}"] <= rep.tolerances[f"sup_n{n}"]
    rep = sp.resolvent_bound_check(2.0 + 0.0j, 1.0, grid)
    gap = abs(rep.residuals["sup_n1"] - 0.5)
    _line(7, "resolvent_bound", gap <= 1e-14, f"real_lambda_gap={gap:.3e}")
    assert gap <= 1e-14


def test_subordination():
    worst_laplace = 0.0
    for x in (0.5, 1.0, 2.0):
        rep = sp.subordination_density_check(x, (0.25, 1.0, 4.0))
        assert rep.residuals["mass"] <= 1e-8
        worst_laplace = max(
            worst_laplace,
            max(v for k, v in rep.residuals.items() if k.startswith("laplace")),
        )
    assert worst_laplace <= 1e-8

    grid = sp.frequency_grid_for(64, 0.25)
    worst_mult = 0.0
    for x in (0.5, 1.0, 2.0):
        mq = sp.subordinated_multiplier_quadrature(x, 1.0, grid.omegas)
        mc = sp.subordinated_multiplier_closed_form(x, 1.0, grid.omegas)
        worst_mult = max(worst_mult, float(np.max(np.abs(mq - mc))))
    assert worst_mult <= 1e-6

    rng = np.random.default_rng(5)
    coeffs = np.zeros(64, dtype=complex)
    band = np.abs(grid.omegas) <= 0.5 * np.max(np.abs(grid.omegas))
    coeffs[band] = rng.standard_normal(band.sum()) + 1j * rng.standard_normal(band.sum())
    w0 = sp.inverse_transform(coeffs, 0.25)
    a = sp.subordinated_semigroup_apply(
        1.0, 1.0, sp.subordinated_semigroup_apply(2.0, 1.0, w0, 0.25), 0.25
    )
    b = sp.subordinated_semigroup_apply(3.0, 1.0, w0, 0.25)
    law = float(np.max(np.abs(a - b)))
    ok = worst_laplace <= 1e-8 and worst_mult <= 1e-6 and law <= 2e-6
    _line(8, "subordination", ok,
          f"laplace={worst_laplace:.3e} mult={worst_mult:.3e} law={law:.3e}")
    assert law <= 2e-6


def test_x_direction_boundary_reproduction():
    m, dt, mu, L = 128, 0.1, 1.0, 1.0
    t = np.arange(m) * dt
    tc = 0.5 * m * dt
    v0 = np.exp(-(((t - tc) / 2.0) ** 2))
    v1 = 0.3 * np.exp(-(((t - tc) / 3.0) ** 2))
    sol = sp.solve_x_direction(v0, v1, dt, mu, L, [-L, 0.0])
    v0h = sp.forward_transform(v0, dt)
    v1h = sp.forward_transform(v1, dt)
    val_err = float(np.max(np.abs(sol.coeffs[0] - v0h)))
    der_err = float(np.max(np.abs(sol.dx_coeffs[0] - v1h)))
    j0 = m // 2
    zero_err = abs(sol.coeffs[0][j0] - v0h[j0]) + abs(sol.dx_coeffs[0][j0] - v1h[j0])
    ok = val_err <= 1e-10 and der_err <= 1e-10 and zero_err <= 1e-12
    _line(9, "x_direction_boundary", ok,
          f"value={val_err:.3e} deriv={der_err:.3e} omega0={zero_err:.3e}")
    assert val_err <= 1e-10
    assert der_err <= 1e-10
    assert zero_err <= 1e-12


def test_identities_and_negative_controls():
    from semigroup_lab import identities as idn

    window = sl.Window(0.0, 1.0, -1.0, 1.0)
    worst = 0.0
    for pair in idn.conforming_catalogue():
        checks = [sl.leibniz_residual, sl.factorization_residual]
        if pair.heat_constrained:
            checks.append(sl.gradient_square_identity)
        if pair.heat_constrained and pair.name.startswith("shock"):
            checks.append(sl.advection_identity_residual)
        for fn in checks:
            r = fn(pair, window)
            assert r.max_abs <= 1e-12 * r.scale, (pair.name, r.identity_name)
            worst = max(worst, r.relative)
    neg_window = sl.Window(0.1, 1.0, -1.0, 1.0)
    r_adv = sl.advection_identity_residual(idn.violating_pair(), neg_window)
    r_grad = sl.gradient_square_identity(idn.mismatched_pair(), neg_window)
    margin = min(r_adv.relative, r_grad.relative)
    ok = worst <= 1e-12 and margin >= 1e-3
    _line(10, "identities", ok, f"worst_rel={worst:.3e} control_margin={margin:.3e}")
    assert r_adv.max_abs >= 1e-3 * r_adv.scale
    assert r_grad.max_abs >= 1e-3 * r_grad.scale


def test_end_to_end_suite(tmp_path):
    start = time.perf_counter()
    code1 = cli_main(["suite", "--out", str(tmp_path / "a"), "--seed", "0"])
    code2 = cli_main(["suite", "--out", str(tmp_path / "b"), "--seed", "0"])
    elapsed = time.perf_counter() - start
    assert code1 == 0
    assert code2 == 0
    reports_a = sorted((tmp_path / "a" / "reports").glob("*.json"))
    assert len(reports_a) >= 12
    for p in reports_a:
        a = json.loads(p.read_text())
        b = json.loads((tmp_path / "b" / "reports" / p.name).read_text())
        a.pop("wall_time_s")
        b.pop("wall_time_s")
        assert a == b, p.name
    ok = elapsed <= 60.0
    _line(11, "end_to_end_suite", ok,
          f"reports={len(reports_a)} t={elapsed:.2f}s deterministic=True")
    assert elapsed <= 60.0
