import random
from math import exp, log, sqrt

import numpy as np
import pytest

import symdyn as sd
from symdyn.errors import ValidationError
from symdyn.sft import periodic_sum


def test_build_full_shift(full2):
    assert full2.irreducible and full2.period == 1
    assert full2.aperiodicity_witness == 1


def test_build_golden(golden):
    assert golden.irreducible and golden.period == 1
    assert golden.aperiodicity_witness == 2  # A^2 > 0


def test_build_two_cycle():
    sft = sd.build_sft(["a", "b"], [[0, 1], [1, 0]])
    assert sft.irreducible and sft.period == 2
    assert sorted(map(sorted, sft.cyclic_classes)) == [[0], [1]]


def test_build_rejects():
    with pytest.raises(ValidationError, match="square"):
        sd.build_sft(["a", "b"], [[1, 1]])
    with pytest.raises(ValidationError, match="does not match"):
        sd.build_sft(["a"], [[1, 1], [1, 1]])
    with pytest.raises(ValidationError, match="dead symbols.*'b'"):
        sd.build_sft(["a", "b"], [[1, 0], [1, 0]])
    with pytest.raises(ValidationError, match="reducible"):
        sd.build_sft(["a", "b", "c"], [[1, 1, 0], [1, 1, 0], [1, 0, 1]])
    red = sd.build_sft(["a", "b", "c"], [[1, 1, 0], [1, 1, 0], [1, 0, 1]],
                       allow_reducible=True)
    with pytest.raises(ValidationError, match="irreducible"):
        sd.spectral_pressure(red)


def test_periodic_sum_full2(full2):
    ps = periodic_sum(full2, None, 3)
    assert ps.count == 8 and ps.sum == pytest.approx(8.0)


def test_periodic_sum_golden_lucas(golden):
    counts = [periodic_sum(golden, None, n).count for n in range(1, 5)]
    assert counts == [1, 3, 4, 7]


def test_periodic_sum_constant_potential(full2):
    c = 0.37
    f = sd.EdgePotential.constant(full2, c)
    for n in (1, 3, 6):
        ps = periodic_sum(full2, f, n)
        assert ps.sum == pytest.approx(2 ** n * exp(c * n), rel=1e-12)


def test_methods_agree(full2, golden):
    rng = random.Random(5)
    for sft in (full2, golden):
        vals = {(sft.alphabet[i], sft.alphabet[j]): rng.uniform(-1, 1)
                for i, j in sft.edges()}
        f = sd.EdgePotential(sft, vals)
        for n in range(1, 9):
            a = periodic_sum(sft, f, n, method="enumerate")
            b = periodic_sum(sft, f, n, method="matrix")
            assert a.count == b.count
            assert a.log_sum == pytest.approx(b.log_sum, rel=1e-10, abs=1e-12)


def test_spectral_pressure_full_shifts():
    for k in range(2, 7):
        assert sd.spectral_pressure(sd.full_shift(k)) == pytest.approx(log(k), abs=1e-12)


def test_spectral_pressure_golden(golden):
    assert sd.spectral_pressure(golden) == pytest.approx(log((1 + sqrt(5)) / 2), abs=1e-9)


def test_spectral_pressure_weighted(full2):
    f = sd.EdgePotential(full2, np.log([[1, 2], [3, 4]]))
    assert sd.spectral_pressure(full2, f) == pytest.approx(log((5 + sqrt(33)) / 2), abs=1e-9)


def test_pressure_additivity_and_monotonicity(golden):
    rng = random.Random(1)
    vals = {(golden.alphabet[i], golden.alphabet[j]): rng.uniform(-1, 1)
            for i, j in golden.edges()}
    f = sd.EdgePotential(golden, vals)
    for c in (-2.0, 0.5, 3.3):
        assert sd.spectral_pressure(golden, f.plus_constant(c)) == pytest.approx(
            sd.spectral_pressure(golden, f) + c, abs=1e-9)
    g = sd.EdgePotential(golden, f.values + np.where(golden.matrix, 0.7, 0))
    assert sd.spectral_pressure(golden, f) <= sd.spectral_pressure(golden, g)


def test_pressure_period_two():
    sft = sd.build_sft(["a", "b"], [[0, 1], [1, 0]])
    assert sd.spectral_pressure(sft) == pytest.approx(0.0, abs=1e-12)


def test_orbital_pressure_full2(full2):
    orb = sd.orbital_pressure(full2, None, 12)
    assert all(v == pytest.approx(log(2), abs=1e-12) for v in orb.values)


def test_orbital_pressure_golden_converges(golden):
    orb = sd.orbital_pressure(golden, None, 40)
    a40 = orb.values[orb.ns.index(40)]
    assert abs(a40 - log((1 + sqrt(5)) / 2)) < 1e-3
    assert orb.agrees
    # envelope |a_n - P| <= C/n on the computed range
    for n, v in zip(orb.ns, orb.values):
        assert abs(v - orb.spectral) <= orb.envelope_C / n + 1e-12


def test_orbital_pressure_two_cycle():
    # two periodic points at every even period: a_n = log(2)/n, entropy 0
    sft = sd.build_sft(["a", "b"], [[0, 1], [1, 0]])
    orb = sd.orbital_pressure(sft, None, 12)
    assert orb.ns == [2, 4, 6, 8, 10, 12]
    for n, v in zip(orb.ns, orb.values):
        assert v == pytest.approx(log(2) / n, abs=1e-12)
    assert orb.spectral == pytest.approx(0.0, abs=1e-12)
    assert abs(orb.estimate) < 0.02


def test_check_symmetry_full2(full2, kappa2):
    rep = sd.check_symmetry(full2, kappa2, sd.EdgePotential.constant(full2, 0.0))
    assert rep.passed and rep.fixed_point_free


def test_check_symmetry_cancellation_free(full4, kappa4):
    A = np.ones((4, 4), dtype=int)
    for i in range(4):
        A[i, i ^ 1] = 0
    sft = sd.build_sft(["a", "A", "b", "B"], A)
    kap = sd.Involution(sft, {"a": "A", "A": "a", "b": "B", "B": "b"})
    rep = sd.check_symmetry(sft, kap, sd.EdgePotential.constant(sft, 0.0))
    assert rep.passed


def test_check_symmetry_broken_potential(full4, kappa4):
    vals = np.zeros((4, 4))
    vals[0, 2] = 1.0  # f(a,b) = 1 but f(B,A) = 0
    f = sd.EdgePotential(full4, vals)
    rep = sd.check_symmetry(full4, kappa4, f)
    assert not rep.passed
    assert ("a", "b") in [(e[0], e[1]) for e in rep.potential_failures]


def test_involution_validation(full2, full4):
    with pytest.raises(ValidationError, match="involution"):
        sd.Involution(full4, {"a": "A", "A": "b", "b": "B", "B": "a"})
    kap_fixed = sd.Involution(full2, {"a": "a", "b": "b"})
    assert not kap_fixed.fixed_point_free
    rep = sd.check_symmetry(full2, kap_fixed, None)
    assert not rep.passed
