"""Random-walk diagnostics on groups: return probabilities and cogrowth.

The Kesten criterion reads the spectral radius of a symmetric walk off
the even return probabilities P^{2n}(e,e)^{1/2n} -> lambda; lambda = 1
characterises amenability.  Returns are computed exactly by convolution
over a ball of radius ceil(steps/2): a path of length 2n that returns to
the identity sits within distance min(m, 2n-m) <= n of it at step m, so
the truncation is lossless for every recorded return.

Only even-step returns are reported; odd returns vanish on bipartite
Cayley graphs and carry no extra information for the limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import log, exp, sqrt
from typing import Optional

import numpy as np

from .errors import ResourceLimitError, ValidationError
from .fitting import fit_tail_limit
from .groups import Group, QuotientGroup, ball

_SMALL_BALL = 4096  # below this, run the exact big-int dict DP


@dataclass
class WalkSpec:
    """Symmetric probability step distribution on a group.

    ``steps`` maps element keys to probabilities; must sum to 1, satisfy
    p(g) = p(g^-1), and its support must generate (probed by checking the
    group's own generators appear in a short product ball of the support).
    """
    group: Group
    steps: dict

    def __post_init__(self):
        total = sum(self.steps.values())
        if abs(total - 1.0) > 1e-12:
            raise ValidationError(f"step probabilities sum to {total}, not 1")
        for g, p in self.steps.items():
            if p < 0:
                raise ValidationError("negative step probability")
            gi = self.group.inv(g)
            if gi not in self.steps or self.steps[gi] != p:
                raise ValidationError("walk is not symmetric: p(g) != p(g^-1)")
        self._check_support_generates()

    def _check_support_generates(self, probe_depth: int = 6):
        support = [g for g, p in self.steps.items() if p > 0]
        if not support:
            raise ValidationError("empty walk support")
        seen = {self.group.identity}
        frontier = [self.group.identity]
        targets = set(self.group.generator_steps())
        for _ in range(probe_depth):
            targets -= seen
            if not targets:
                return
            nxt = []
            for x in frontier:
                for s in support:
                    y = self.group.mul(x, s)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        if targets - seen:
            raise ValidationError(
                "walk support does not reach all generators within the probe "
                f"depth {probe_depth}; support may not generate the group")

    @property
    def uniform_weight(self) -> Optional[int]:
        """If all probabilities are m_g / M with integer multiplicities
        (uniform over formal letters), return M; else None."""
        probs = sorted(set(self.steps.values()))
        base = probs[0]
        mults = []
        for p in self.steps.values():
            m = p / base
            if abs(m - round(m)) > 1e-9:
                return None
            mults.append(round(m))
        M = round(1.0 / base)
        if abs(sum(mults) - M) > 0 or abs(base * M - 1.0) > 1e-12:
            return None
        return M


def uniform_walk(group: Group) -> WalkSpec:
    """Uniform distribution over the 2k formal generator letters
    (duplicate letters, e.g. involutions, get their mass summed)."""
    letters = []
    for name in group.gen_names:
        g = group.generator(name)
        letters.extend([g, group.inv(g)])
    p = 1.0 / len(letters)
    steps: dict = {}
    for g in letters:
        steps[g] = steps.get(g, 0.0) + p
    return WalkSpec(group, steps)


@dataclass
class ReturnSeries:
    """Even-step returns P^{2n}(e,e) with roots and a fitted limit."""
    ns: list               # half-step indices n (P^{2n})
    probabilities: list    # Fractions when exact, floats otherwise
    roots: list
    lambda_raw: float
    lambda_fit: float
    fit_se: float
    exact: bool
    truncation_radius: int

    def root(self, n: int) -> float:
        return self.roots[self.ns.index(n)]


def _dict_walk_dp(group, weights, steps, ball_keys):
    """Exact big-int convolution on a small ball (weights are counts)."""
    cur = {group.identity: 1}
    returns = {}
    for m in range(1, steps + 1):
        nxt: dict = {}
        for x, c in cur.items():
            for s, w in weights:
                y = group.mul(x, s)
                if y in ball_keys:
                    nxt[y] = nxt.get(y, 0) + c * w
        cur = nxt
        if m % 2 == 0:
            returns[m] = cur.get(group.identity, 0)
    return returns


def _array_walk_dp(group, weights, steps, B, dtype):
    keys = list(B.keys())
    index = {k: i for i, k in enumerate(keys)}
    n = len(keys)
    tables = []
    for s, w in weights:
        t = np.full(n, -1, dtype=np.int64)
        for i, k in enumerate(keys):
            t[i] = index.get(group.mul(k, s), -1)
        tables.append((t, w))
    cur = np.zeros(n, dtype=dtype)
    e_idx = index[group.identity]
    cur[e_idx] = 1
    returns = {}
    for m in range(1, steps + 1):
        nxt = np.zeros(n, dtype=dtype)
        for t, w in tables:
            valid = t >= 0
            np.add.at(nxt, t[valid], cur[valid] * w)
        cur = nxt
        if m % 2 == 0:
            returns[m] = cur[e_idx]
    return returns


def kesten_estimate(walk: WalkSpec, steps: int, *,
                    max_elements: int = 5_000_000) -> ReturnSeries:
    """Return probabilities P^{2n}(e,e) for 2n <= steps, exact where the
    walk is uniform, with the spectral-radius estimate from the tail fit.

    ``steps`` counts single steps of the walk; the convolution is
    truncated (losslessly) to the ball of radius ceil(steps/2).
    """
    if steps < 4:
        raise ValidationError("need at least 4 steps (two even return times)")
    group = walk.group
    radius = (steps + 1) // 2
    support = sorted(walk.steps, key=repr)
    B = ball(group, radius, steps=support, max_elements=max_elements)
    M = walk.uniform_weight
    exact = M is not None
    if exact and len(B) <= _SMALL_BALL:
        weights = [(g, round(walk.steps[g] * M)) for g in support]
        counts = _dict_walk_dp(group, weights, steps, B.distance)
        probs = {m: Fraction(c, M ** m) for m, c in counts.items()}
    elif exact and steps * log(M) < 62 * log(2):
        weights = [(g, round(walk.steps[g] * M)) for g in support]
        counts = _array_walk_dp(group, weights, steps, B, np.int64)
        probs = {m: Fraction(int(c), M ** m) for m, c in counts.items()}
    else:
        exact = False
        weights = [(g, float(walk.steps[g])) for g in support]
        rets = _array_walk_dp(group, weights, steps, B, np.float64)
        probs = {m: float(r) for m, r in rets.items()}

    ns, plist, roots = [], [], []
    for m in sorted(probs):
        p = probs[m]
        if p == 0:
            continue
        ns.append(m // 2)
        plist.append(p)
        roots.append(float(p) ** (1.0 / m))
    if len(ns) < 2:
        raise ValidationError("no nonzero even returns; walk cannot return")
    fit = fit_tail_limit(ns, [log(r) for r in roots])
    lam_fit = min(exp(fit.limit), 1.0)
    return ReturnSeries(ns=ns, probabilities=plist, roots=roots,
                        lambda_raw=roots[-1], lambda_fit=lam_fit,
                        fit_se=fit.se, exact=exact, truncation_radius=radius)


# ---------------------------------------------------------------------------
# cogrowth


@dataclass
class CogrowthSeries:
    """Counts of reduced words of F_k lying in the kernel of a quotient.

    ``ns``/``counts`` cover every length 1..n_max (zeros included);
    roots and the fitted rate use the nonzero entries only.
    """
    rank: int
    ns: list
    counts: list
    roots: dict            # n -> c_n^(1/n), nonzero counts only
    rate_raw: float
    rate_fit: float
    fit_se: float
    target_rate: float     # 2k - 1

    def count(self, n: int) -> int:
        return self.counts[self.ns.index(n)]

    @property
    def reaches_target(self) -> bool:
        return abs(self.rate_fit - self.target_rate) <= 3 * max(self.fit_se, 1e-3)


def cogrowth_estimate(quotient: QuotientGroup, n_max: int, *,
                      max_elements: int = 2_000_000) -> CogrowthSeries:
    """c_n = #{reduced words of length n in F_k with trivial image}.

    Layered DP over (image key, last letter), truncated to the lossless
    image ball of radius ceil(n_max/2) * (max image length).
    """
    if n_max < 2:
        raise ValidationError("n_max must be >= 2")
    k = quotient.free_rank
    target = quotient.target
    letters = []  # (code, image) for 2k formal letters; code pairs 2i, 2i+1
    for i in range(k):
        img = quotient.images[i]
        letters.append((2 * i, img))
        letters.append((2 * i + 1, target.inv(img)))
    image_steps = sorted({img for _, img in letters} | {target.inv(img) for _, img in letters},
                         key=repr)
    image_steps = [s for s in image_steps if s != target.identity]
    radius = (n_max + 1) // 2
    if image_steps:
        B = ball(target, radius, steps=image_steps, max_elements=max_elements)
        allowed = B.distance
    else:
        allowed = {target.identity: 0}

    # state: (image key, last letter code) -> exact count
    cur = {}
    for code, img in letters:
        if img in allowed:
            cur[(img, code)] = 1
    counts = {1: sum(c for (g, _), c in cur.items() if g == target.identity)}
    for n in range(2, n_max + 1):
        nxt: dict = {}
        for (g, last), c in cur.items():
            for code, img in letters:
                if code == last ^ 1:
                    continue
                h = target.mul(g, img)
                if h in allowed:
                    key = (h, code)
                    nxt[key] = nxt.get(key, 0) + c
        cur = nxt
        counts[n] = sum(c for (g, _), c in cur.items() if g == target.identity)

    all_ns = sorted(counts)
    nonzero = [n for n in all_ns if counts[n] > 0]
    roots = {n: counts[n] ** (1.0 / n) for n in nonzero}
    if not nonzero:
        rate_raw = rate_fit = 0.0
        se = 0.0
    elif len(nonzero) >= 4:
        fit = fit_tail_limit(nonzero, [log(counts[n]) / n for n in nonzero])
        rate_raw = roots[nonzero[-1]]
        rate_fit, se = min(exp(fit.limit), 2 * k - 1), fit.se * exp(fit.limit)
    else:
        rate_raw = rate_fit = roots[nonzero[-1]]
        se = float("nan")
    return CogrowthSeries(rank=k, ns=all_ns, counts=[counts[n] for n in all_ns],
                          roots=roots, rate_raw=rate_raw, rate_fit=rate_fit,
                          fit_se=se, target_rate=2 * k - 1)


def reduced_word_count(k: int, n: int) -> int:
    """Number of reduced words of length n in F_k: 2k(2k-1)^(n-1)."""
    if n == 0:
        return 1
    return 2 * k * (2 * k - 1) ** (n - 1)
