import math

import numpy as np
import pytest
from scipy.linalg import expm

from dimertunnel.dissipative import (SectorDensityMatrix, TwoLevelEffective, default_dt,
                                     effective_two_level, localized_pair, survival_master_equation,
                                     survival_two_level)
from dimertunnel.errors import IntegratorToleranceError, InvalidInputError
from dimertunnel.meanfield import DimerParams, PhaseSpacePoint
from dimertunnel.quantum import exact_splitting, self_trapping_point

FIG7 = DimerParams(1.0, 0.8, 6)


def test_two_level_validation():
    with pytest.raises(InvalidInputError):
        TwoLevelEffective(0.0, 1.0, -0.1, 0.0)
    with pytest.raises(InvalidInputError):
        TwoLevelEffective(0.0, -1.0, 0.1, 0.0)
    h = TwoLevelEffective(2.0, 1.0, 0.2, 0.4).hamiltonian()
    assert h[0, 0] == 2.0 - 0.1j and h[1, 1] == 2.0 - 0.2j and h[0, 1] == h[1, 0] == 0.5


def test_effective_rates_sum_and_localization():
    for p in (FIG7, DimerParams.from_lambda(6, 3.0, J=1.0), DimerParams.from_lambda(11, 1.7, J=1.0)):
        h = effective_two_level(p, 0.3)
        assert h.Gamma1 + h.Gamma2 == pytest.approx(0.3 * p.N, rel=1e-12)
    h = effective_two_level(DimerParams.from_lambda(6, 3.0, J=1.0), 1.0)
    assert h.Gamma1 < 0.1 * 6 and h.Gamma2 > 0.9 * 6
    # |1> sits in the non-leaking well whichever well leaks (reflection symmetry)
    assert effective_two_level(FIG7, 1.0, leak_well=1).Gamma1 == pytest.approx(
        effective_two_level(FIG7, 1.0).Gamma1, rel=1e-10)


def test_effective_sources():
    assert effective_two_level(FIG7, 0.1).deltaE == pytest.approx(exact_splitting(FIG7))
    assert effective_two_level(FIG7, 0.1, "zero").deltaE == 0.0
    assert effective_two_level(FIG7, 0.1, "closed-form").deltaE > 0
    with pytest.raises(InvalidInputError):
        effective_two_level(FIG7, 0.1, "bogus")
    with pytest.raises(InvalidInputError):
        effective_two_level(FIG7, -0.1)
    with pytest.raises(InvalidInputError):
        effective_two_level(FIG7, 0.1, leak_well=3)


def test_localized_pair_orthonormal():
    _, _, a, b = localized_pair(FIG7)
    assert np.dot(a, a) == pytest.approx(1) and abs(np.dot(a, b)) < 1e-12
    n1 = np.arange(7)
    assert np.dot(a * a, n1) > 3  # kept state lives in well 1


def test_survival_two_level_examples():
    h = TwoLevelEffective(0.0, 0.7, 0.2, 0.9)
    assert survival_two_level(h, 0.0) == pytest.approx(1.0)
    h0 = TwoLevelEffective(0.0, 0.0, 0.3, 0.9)
    t = np.linspace(0, 10, 11)
    assert survival_two_level(h0, t) == pytest.approx(np.exp(-0.3 * t), rel=1e-12)
    hg = TwoLevelEffective(0.0, 1.3, 0.4, 0.4)
    assert survival_two_level(hg, t) == pytest.approx(np.exp(-0.4 * t), rel=1e-12)
    assert np.all(survival_two_level(TwoLevelEffective(0.0, 1.3, 0.0, 0.0), t) == pytest.approx(1.0))


def test_survival_two_level_against_expm():
    for h in (TwoLevelEffective(0.3, 0.7, 0.2, 0.9), TwoLevelEffective(0.0, 0.1, 0.0, 2.0),
              TwoLevelEffective(0.0, 2.0, 0.5, 0.5 + 1e-12)):
        for t in (0.1, 1.0, 7.3):
            psi = expm(-1j * h.hamiltonian() * t) @ np.array([1.0, 0.0])
            assert survival_two_level(h, t) == pytest.approx(float(np.vdot(psi, psi).real), rel=1e-10)


def test_master_equation_unitary_limit():
    ts = survival_master_equation(FIG7, 0.0, self_trapping_point(FIG7), 5.0)
    assert np.max(np.abs(ts.samples - 1.0)) < 1e-10


def test_master_equation_single_atom_oracle():
    J, g = 1.0, 0.6
    p = DimerParams(J, 0.0, 1)
    ts = survival_master_equation(p, g, PhaseSpacePoint(1.0, 0.0), 8.0, dt=1e-3)
    H = np.array([[0.0, -J], [-J, 0.0]]) - 0.5j * g * np.diag([1.0, 0.0])
    for i in (0, 1000, 4000, 8000):
        psi = expm(-1j * H * ts.times[i]) @ np.array([0.0, 1.0])
        assert ts.samples[i] == pytest.approx(float(np.vdot(psi, psi).real), abs=1e-10)
    # the same problem as an effective two-level model
    h = TwoLevelEffective(0.0, 2 * J, 0.0, g)
    assert survival_two_level(h, ts.times[::1000]) == pytest.approx(ts.samples[::1000], abs=1e-10)


def test_master_equation_monotone_decay():
    ts = survival_master_equation(FIG7, 0.1, self_trapping_point(FIG7), 20.0)
    assert np.all(np.diff(ts.samples) <= 1e-14)
    assert 0 < ts.samples[-1] < 1


def test_default_dt():
    dt = default_dt(FIG7, 0.1)
    assert dt <= 0.1 and dt <= 0.01 / 0.1
    assert default_dt(FIG7, 0.0) > 0


def test_density_matrix_check():
    SectorDensityMatrix(1, np.diag([0.5, 0.5])).check()
    with pytest.raises(IntegratorToleranceError):
        SectorDensityMatrix(1, np.diag([0.8, 0.5])).check()
    with pytest.raises(IntegratorToleranceError):
        SectorDensityMatrix(1, np.array([[0.5, 0.1], [0.2, 0.5]])).check()
    with pytest.raises(IntegratorToleranceError):
        SectorDensityMatrix(1, np.diag([1.2, -0.3])).check()


def test_master_equation_detects_blowup():
    with pytest.raises(IntegratorToleranceError):
        survival_master_equation(FIG7, 0.1, self_trapping_point(FIG7), 5.0, dt=2.0)
