import itertools
from fractions import Fraction
from math import sqrt

import pytest

import symdyn as sd
from symdyn.errors import ValidationError


def brute_returns(group, steps, length):
    """Path enumeration oracle: counts of identity-returning words."""
    count = 0
    for word in itertools.product(steps, repeat=length):
        g = group.identity
        for s in word:
            g = group.mul(g, s)
        if g == group.identity:
            count += 1
    return count


def test_z_return_probability():
    Z = sd.FreeAbelianGroup(1)
    rs = sd.kesten_estimate(sd.uniform_walk(Z), 8)
    assert rs.probabilities[rs.ns.index(2)] == Fraction(6, 16)
    assert rs.exact


def test_f2_return_probabilities():
    F2 = sd.FreeGroup(2)
    rs = sd.kesten_estimate(sd.uniform_walk(F2), 8)
    assert rs.probabilities[rs.ns.index(1)] == Fraction(1, 4)
    assert rs.probabilities[rs.ns.index(2)] == Fraction(28, 256)


@pytest.mark.parametrize("maker", [
    lambda: sd.FreeGroup(2),
    lambda: sd.FreeAbelianGroup(2),
])
def test_dp_matches_brute_force(maker):
    group = maker()
    steps = group.generator_steps()
    rs = sd.kesten_estimate(sd.uniform_walk(group), 8)
    for n in (1, 2):
        expected = Fraction(brute_returns(group, steps, 2 * n), len(steps) ** (2 * n))
        assert rs.probabilities[rs.ns.index(n)] == expected


def test_finite_group_lambda_one():
    C3 = sd.FiniteTableGroup.cyclic(3)
    rs = sd.kesten_estimate(sd.uniform_walk(C3), 100)
    assert abs(rs.lambda_fit - 1.0) < 1e-6


def test_roots_monotone_and_bounded():
    for group in [sd.FreeGroup(2), sd.FreeAbelianGroup(1),
                  sd.FiniteTableGroup.cyclic(4), sd.LamplighterGroup()]:
        rs = sd.kesten_estimate(sd.uniform_walk(group), 24)
        assert all(r <= 1.0 + 1e-12 for r in rs.roots)
        assert all(b >= a - 1e-12 for a, b in zip(rs.roots, rs.roots[1:]))
        assert rs.lambda_fit <= 1.0


def test_float_branch_matches_exact():
    # long lamplighter walks overflow the int64 lane; the float branch
    # must produce genuine probabilities agreeing with the exact one
    LL = sd.LamplighterGroup()
    short = sd.kesten_estimate(sd.uniform_walk(LL), 28)
    long = sd.kesten_estimate(sd.uniform_walk(LL), 40)
    assert short.exact and not long.exact
    assert all(r <= 1.0 for r in long.roots)
    for i in range(len(short.ns)):
        assert float(short.probabilities[i]) == pytest.approx(
            long.probabilities[i], rel=1e-10)


def test_walk_validation():
    Z = sd.FreeAbelianGroup(1)
    with pytest.raises(ValidationError):
        sd.WalkSpec(Z, {(1,): 0.7, (-1,): 0.3})  # asymmetric
    with pytest.raises(ValidationError):
        sd.WalkSpec(Z, {(1,): 0.3, (-1,): 0.3})  # does not sum to 1
    with pytest.raises(ValidationError):
        sd.WalkSpec(sd.FreeAbelianGroup(2), {(1, 0): 0.5, (-1, 0): 0.5})  # no span


def brute_cogrowth(quotient, n):
    """All reduced words of length n with trivial image."""
    k = quotient.free_rank
    letters = list(range(2 * k))
    target = quotient.target
    images = []
    for i in range(k):
        images.append(quotient.images[i])
        images.append(target.inv(quotient.images[i]))
    count = 0
    for word in itertools.product(letters, repeat=n):
        if any(word[i] ^ 1 == word[i + 1] for i in range(n - 1)):
            continue
        g = target.identity
        for c in word:
            g = target.mul(g, images[c])
        if g == target.identity:
            count += 1
    return count


def test_cogrowth_abelianization():
    q = sd.abelianization(2)
    cg = sd.cogrowth_estimate(q, 8)
    assert cg.count(2) == 0
    assert cg.count(4) == 8
    for n in range(1, 7):
        assert cg.count(n) == brute_cogrowth(q, n)


def test_cogrowth_trivial_group():
    q = sd.trivial_quotient(2)
    cg = sd.cogrowth_estimate(q, 10)
    for n in range(1, 11):
        assert cg.count(n) == sd.reduced_word_count(2, n)
    assert abs(cg.rate_fit - 3.0) < 1e-6


def test_cogrowth_identity_quotient():
    q = sd.free_identity_quotient(2)
    cg = sd.cogrowth_estimate(q, 8)
    assert all(c == 0 for c in cg.counts)
    assert cg.rate_fit == 0.0


def test_cogrowth_bounded_by_reduced_words():
    for q in [sd.abelianization(2), sd.kill_generators(2, ["b"]),
              sd.finite_image(2, {"a": (1, 2, 0), "b": (1, 0, 2)}, 3)]:
        cg = sd.cogrowth_estimate(q, 10)
        for n, c in zip(cg.ns, cg.counts):
            assert c <= sd.reduced_word_count(q.free_rank, n)
