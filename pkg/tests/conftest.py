"""Shared fixtures: the standard shifts, groups and skew products that
the examples and acceptance criteria exercise."""

import pytest

import symdyn as sd


@pytest.fixture(scope="session")
def full2():
    return sd.full_shift(2)


@pytest.fixture(scope="session")
def full4():
    return sd.full_shift(4, names=["a", "A", "b", "B"])


@pytest.fixture(scope="session")
def full6():
    return sd.full_shift(6, names=["a", "A", "b", "B", "c", "C"])


@pytest.fixture(scope="session")
def golden():
    return sd.build_sft(["a", "b"], [[1, 1], [1, 0]])


@pytest.fixture(scope="session")
def kappa2(full2):
    return sd.Involution(full2, {"a": "b", "b": "a"})


@pytest.fixture(scope="session")
def kappa4(full4):
    return sd.Involution(full4, {"a": "A", "A": "a", "b": "B", "B": "b"})


@pytest.fixture(scope="session")
def kappa6(full6):
    return sd.Involution(full6, {"a": "A", "A": "a", "b": "B", "B": "b",
                                 "c": "C", "C": "c"})


@pytest.fixture(scope="session")
def skew_z_full2(full2, kappa2):
    Z = sd.FreeAbelianGroup(1)
    coc = sd.Cocycle(full2, Z, letters={"a": (1,), "b": (-1,)})
    return sd.build_skew(full2, Z, coc, kappa=kappa2)


@pytest.fixture(scope="session")
def skew_z2_full4(full4, kappa4):
    Z2 = sd.FreeAbelianGroup(2)
    coc = sd.Cocycle(full4, Z2, letters={"a": (1, 0), "A": (-1, 0),
                                         "b": (0, 1), "B": (0, -1)})
    return sd.build_skew(full4, Z2, coc, kappa=kappa4)


@pytest.fixture(scope="session")
def skew_f2_full4(full4, kappa4):
    F2 = sd.FreeGroup(2)
    coc = sd.Cocycle(full4, F2, letters={n: n for n in ["a", "A", "b", "B"]})
    return sd.build_skew(full4, F2, coc, kappa=kappa4)


@pytest.fixture(scope="session")
def skew_c2_full2(full2, kappa2):
    C2 = sd.FiniteTableGroup.cyclic(2)
    coc = sd.Cocycle(full2, C2, letters={"a": "g", "b": "g"})
    return sd.build_skew(full2, C2, coc, kappa=kappa2)


@pytest.fixture(scope="session")
def skew_trivial_full2(full2, kappa2):
    T = sd.trivial_quotient(1)
    coc = sd.Cocycle(full2, T, letters={"a": "a", "b": "a"})
    return sd.build_skew(full2, T, coc, kappa=kappa2)


@pytest.fixture(scope="session")
def shipped_skews(skew_z_full2, skew_z2_full4, skew_f2_full4, skew_c2_full2,
                  skew_trivial_full2):
    return {
        "full2+Z": skew_z_full2,
        "full4+Z2": skew_z2_full4,
        "full4+F2": skew_f2_full4,
        "full2+C2": skew_c2_full2,
        "full2+trivial": skew_trivial_full2,
    }


@pytest.fixture(scope="session")
def schottky_pair():
    return sd.standard_pair(6.0)


@pytest.fixture(scope="session")
def schottky_triple():
    return sd.standard_triple(6.0)
