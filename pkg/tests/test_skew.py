import random
from math import log, sqrt

import numpy as np
import pytest

import symdyn as sd
from symdyn.errors import ValidationError
from symdyn.sft import periodic_sum


def test_symmetric_flag_z_cocycle(skew_z_full2):
    assert skew_z_full2.symmetric  # psi(kappa a) = psi(b) = -1 = psi(a)^-1


def test_symmetric_flag_f2_cocycle(skew_f2_full4):
    assert skew_f2_full4.symmetric


def test_broken_cocycle_reports_letter(full4, kappa4):
    F2 = sd.FreeGroup(2)
    coc = sd.Cocycle(full4, F2, letters={"a": "a", "A": "a", "b": "b", "B": "B"})
    sk = sd.build_skew(full4, F2, coc, kappa=kappa4)
    assert not sk.symmetric
    assert "a" in sk.symmetry_failures or "A" in sk.symmetry_failures


def test_missing_letters_rejected(full4):
    F2 = sd.FreeGroup(2)
    with pytest.raises(ValidationError, match="missing letters"):
        sd.Cocycle(full4, F2, letters={"a": "a", "b": "b"})


def test_holonomy_exactness_z2(skew_z2_full4):
    assert sd.holonomy_sum(skew_z2_full4, None, 2).count == 4
    assert sd.holonomy_sum(skew_z2_full4, None, 4).count == 36


def test_holonomy_exactness_f2(skew_f2_full4):
    assert sd.holonomy_sum(skew_f2_full4, None, 2).count == 4
    assert sd.holonomy_sum(skew_f2_full4, None, 4).count == 28


def test_holonomy_trivial_group_equals_periodic(skew_trivial_full2, full2):
    for n in range(1, 9):
        hs = sd.holonomy_sum(skew_trivial_full2, None, n)
        assert hs.count == periodic_sum(full2, None, n).count


def test_truncation_lossless(skew_f2_full4, skew_z2_full4):
    for sk in (skew_f2_full4, skew_z2_full4):
        for n in range(1, 11):
            tight = sd.holonomy_sum(sk, None, n)          # radius ceil(n/2)
            loose = sd.holonomy_sum(sk, None, n, radius=n)
            assert tight.count == loose.count


def test_oracle_equivalence_random_skews():
    rng = random.Random(23)
    Z2 = sd.FreeAbelianGroup(2)
    for trial in range(4):
        k = rng.choice([2, 3, 4])
        while True:
            A = np.array([[rng.random() < 0.8 for _ in range(k)] for _ in range(k)],
                         dtype=int)
            for i in range(k):
                A[i, (i + 1) % k] = 1  # guarantee a cycle through all states
            try:
                sft = sd.build_sft([chr(97 + i) for i in range(k)], A)
                break
            except ValidationError:
                continue
        vals = {}
        f_vals = {}
        for i, j in sft.edges():
            vals[(sft.alphabet[i], sft.alphabet[j])] = (rng.randint(-1, 1),
                                                        rng.randint(-1, 1))
            f_vals[(sft.alphabet[i], sft.alphabet[j])] = rng.uniform(-0.5, 0.5)
        coc = sd.Cocycle(sft, Z2, edges=vals)
        sk = sd.build_skew(sft, Z2, coc)
        f = sd.EdgePotential(sft, f_vals)
        for n in range(1, 8):
            dp = sd.holonomy_sum(sk, f, n)
            br = sd.enumerate_holonomy(sk, f, n)
            assert dp.count == br.count
            if dp.count:
                assert dp.log_sum == pytest.approx(br.log_sum, rel=1e-10, abs=1e-12)


def test_restriction_monotone(shipped_skews):
    for name, sk in shipped_skews.items():
        for n in range(1, 8):
            hs = sd.holonomy_sum(sk, None, n)
            ps = periodic_sum(sk.base, None, n)
            assert hs.count <= ps.count, name


def test_sandwich_all_skews(shipped_skews):
    for name, sk in shipped_skews.items():
        nmax = 8 if sk.base.k <= 2 else 6
        for n in range(1, nmax + 1):
            fc = sd.p_n_count(sk, n)
            assert fc.q_count <= fc.p_count <= n * fc.q_count, name


def test_p2_example(skew_z_full2):
    fc = sd.p_n_count(skew_z_full2, 2)
    assert fc.q_count == 2 and fc.p_count == 4


def test_p_n_trivial_group(skew_trivial_full2):
    for n in range(1, 7):
        fc = sd.p_n_count(skew_trivial_full2, n)
        assert fc.p_count == fc.q_count


def test_time_reversal_q_invariance(skew_f2_full4):
    sk = skew_f2_full4
    n = 6
    words = []
    from symdyn.skew import _cyclic_word_dfs
    _cyclic_word_dfs(sk, n, lambda w, p, h: words.append(w)
                     if sk.group.is_identity(h) else None)
    qset = set(words)
    kap = sk.kappa
    for w in qset:
        rev = tuple(kap(c) for c in reversed(w))
        assert rev in qset


def test_gurevich_z_cocycle(skew_z_full2):
    est = sd.gurevich_estimate(skew_z_full2, None, 24)
    assert est.ns[0] == 2
    assert est.a_n[0] == pytest.approx(0.5 * log(2))  # Q_2 = {ab, ba}
    assert est.limit == pytest.approx(log(2), abs=5e-3)
    assert all(d >= -1e-9 for d in est.deficits)


def test_gurevich_c2_cocycle(skew_c2_full2):
    # psi(a)=psi(b)=g: psi_n = g^n, so every even-length word returns
    est = sd.gurevich_estimate(skew_c2_full2, None, 16)
    for n, c in zip(est.ns, est.counts):
        assert n % 2 == 0 and c == 2 ** n
    assert est.limit == pytest.approx(log(2), abs=1e-6)


def test_gurevich_needs_enough_points(skew_z_full2):
    with pytest.raises(ValidationError, match="usable"):
        sd.gurevich_estimate(skew_z_full2, None, 6)


def test_gurevich_warns_nonsymmetric(full2):
    Z = sd.FreeAbelianGroup(1)
    coc = sd.Cocycle(full2, Z, letters={"a": (1,), "b": (-1,)})
    sk = sd.build_skew(full2, Z, coc)  # no involution given
    est = sd.gurevich_estimate(sk, None, 12)
    assert any("symmetric" in w for w in est.warnings)


def test_transitivity_certificates(skew_trivial_full2, skew_z_full2, full2, kappa2):
    assert sd.transitivity_probe(skew_trivial_full2, 1).certified
    assert sd.transitivity_probe(skew_z_full2, 3).certified
    Z = sd.FreeAbelianGroup(1)
    up = sd.Cocycle(full2, Z, letters={"a": (1,), "b": (1,)})
    sk = sd.build_skew(full2, Z, up, kappa=kappa2)
    probe = sd.transitivity_probe(sk, 4)
    assert not probe.certified
    assert (-1,) in probe.missing_values


def test_verdicts_small(skew_z2_full4, skew_f2_full4, skew_c2_full2):
    assert sd.amenability_verdict(skew_z2_full4, None, n_max=20).verdict == "equality"
    assert sd.amenability_verdict(skew_c2_full2, None, n_max=16).verdict == "equality"
    v = sd.amenability_verdict(skew_f2_full4, None, n_max=16)
    assert v.verdict == "gap"
    assert v.evidence["deficit_limit"] > 0.02


def test_verdict_requires_symmetric(full2):
    Z = sd.FreeAbelianGroup(1)
    coc = sd.Cocycle(full2, Z, letters={"a": (1,), "b": (-1,)})
    sk = sd.build_skew(full2, Z, coc)
    with pytest.raises(ValidationError, match="symmetric"):
        sd.amenability_verdict(sk, None, n_max=12)


def test_threaded_dp_matches_serial(skew_z2_full4):
    a = sd.holonomy_series(skew_z2_full4, None, 14, threads=1)
    b = sd.holonomy_series(skew_z2_full4, None, 14, threads=3)
    assert a[0] == b[0]
    for n in a[1]:
        assert a[1][n] == pytest.approx(b[1][n], abs=1e-12)


def test_skew_periodicity_identity(skew_z_full2):
    # sigma~^n(x,g) = (x,g) iff sigma^n x = x and psi_n(x) = 1, sampled
    sk = skew_z_full2
    words = [(0, 1), (1, 0), (0, 0), (1, 1), (0, 1, 0, 1)]
    for w in words:
        hol = sk.holonomy(w)
        lifts_closed = sk.group.is_identity(hol)
        assert lifts_closed == (sum(+1 if c == 0 else -1 for c in w) == 0)
