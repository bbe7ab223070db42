"""Smoke tests for the python bindings; the C++ suites carry the real load."""

import json
import math

import pytest

import logeuler as le


def test_pressure_and_derivatives():
    eos = le.EosSpec.logarithmic()
    assert le.pressure(eos, 1.0) == 0.0
    assert le.pressure(eos, 2.0) == pytest.approx(math.log(2.0), rel=1e-15)
    assert le.dp_drho(eos, 4.0) == pytest.approx(0.25, rel=1e-15)
    assert le.d2p_drho2(eos, 2.0) == pytest.approx(-0.25, rel=1e-15)

    poly = le.EosSpec.polytropic(2.0)
    assert le.pressure(poly, 2.0) == pytest.approx(8.0 / 3.0, rel=1e-15)

    with pytest.raises(le.LogeulerError):
        le.pressure(eos, -1.0)


def test_family_residual_flags_mislabeled_branch():
    log = le.EosSpec.logarithmic()
    assert abs(le.ode_residual(log, 3.0)) <= 1e-13
    mislabeled = le.EosSpec.logarithmic()
    mislabeled.A = 1.0
    assert le.ode_residual(mislabeled, 3.0) == pytest.approx(-6.0, rel=1e-14)


def test_lower_bound_window():
    win = le.lemma1_bounds(le.EosSpec.logarithmic())
    assert win.rho_star == 1.0
    with pytest.raises(le.LogeulerError):
        le.lemma1_bounds(le.EosSpec.logarithmic(0.3))


def test_eos_json_round_trip():
    eos = le.EosSpec.chaplygin(-1.5, 2.0, 0.25, 3.0)
    parsed = json.loads(eos.to_json())
    assert set(parsed) == {"family", "A", "K1", "K", "c"}
    back = le.EosSpec.from_json(eos.to_json())
    assert back.A == eos.A and back.K1 == eos.K1


def test_symmetrizer_round_trip_and_matrices():
    sym = le.Symmetrizer(le.EosSpec.logarithmic())
    state = le.PrimState(2.0, (0.3, -0.1, 0.2))
    w = sym.to_sym(state)
    back = sym.from_sym(w)
    assert back.rho == pytest.approx(state.rho, rel=1e-9)
    for a, b in zip(back.v, state.v):
        assert a == pytest.approx(b, abs=1e-9)

    a0 = sym.assemble_A0(state)
    assert a0.shape == (4, 4)
    assert (a0 == a0.T).all()

    rep = sym.check_A0_spd(state)
    assert rep.spd and rep.cholesky_ok
    assert rep.max_rel_eigen_error <= 1e-10

    assert sym.jacobian_det(state) > 0.0


def test_variant_resolution_is_deterministic():
    sym = le.Symmetrizer(le.EosSpec.logarithmic())
    a = le.resolve_ak_variant(sym, samples=16, seed=5)
    b = le.resolve_ak_variant(sym, samples=16, seed=5)
    assert a["selected"] == le.AkVariant.VelocityWeighted
    assert a == b


def test_hydro_round_trip_and_speeds():
    eos = le.EosSpec.logarithmic()
    win = le.lemma1_bounds(eos)
    u = le.prim_to_cons(eos, le.PrimState1D(2.0, 0.5))
    s = le.cons_to_prim(eos, u, win)
    assert s.rho == pytest.approx(2.0, rel=1e-10)
    assert s.v == pytest.approx(0.5, rel=1e-10)

    lo, hi = le.wave_speeds(eos, le.PrimState1D(4.0, 0.0), le.PrimState1D(4.0, 0.0))
    assert lo == pytest.approx(-0.5) and hi == pytest.approx(0.5)


def test_run_scenario_conserves(tmp_path):
    scenario = {
        "eos": {"family": "logarithmic", "A": -1.0, "K1": 1.0, "K": 0.0, "c": 1.0},
        "cells": 64,
        "bc": "periodic",
        "t_end": 0.1,
        "init": {"type": "smooth_wave", "rho0": 2.0, "amplitude": 0.01},
    }
    summary = le.run_scenario(json.dumps(scenario), str(tmp_path))
    assert summary["drift_D"] <= 1e-12
    assert summary["clamped_cells"] == 0
    assert (tmp_path / "snapshots.csv").exists()


def test_evolve_pair_matches_through_map():
    eos = le.EosSpec.logarithmic()
    params = le.SymmetryParams(-1.0, 0.0)
    cells = 64
    field = le.ClassicalField1D()
    field.dx = 1.0 / cells
    field.rho = [2.0 + 0.01 * math.sin(2.0 * math.pi * (i + 0.5) / cells) for i in range(cells)]
    field.u = [0.0] * cells
    result = le.evolve_pair(field, eos, params, 0.05)
    assert result.max_abs_diff < 1e-8
    assert result.steps > 0


def test_check_suites_pass():
    rep = le.check_eos(le.EosSpec.logarithmic(), samples=200, seed=3)
    assert rep["pass"]
    rep2 = le.verify_symmetrizer(le.EosSpec.logarithmic(), samples=100, seed=3)
    assert rep2["pass"]
