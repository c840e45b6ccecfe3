"""Schottky groups acting on the hyperbolic plane.

Generators are 2x2 real matrices (normalised to determinant 1) whose
isometric circles |cz+d| = 1 bound pairwise disjoint closed disks; the
ping-pong argument then makes the group free and codes its boundary
dynamics by the cancellation-free shift on 2k letters (the only
forbidden transition is letter -> its own inverse).

Critical exponents are estimated two independent ways:
  * shell sums of the orbital series sum e^{-s d(o, w o)} over reduced
    words, with the abscissa located where the fitted shell growth rate
    changes sign (optionally restricted to the kernel of a quotient);
  * pressure roots of cylinder-discretised roof functions on refined
    codings, which feed the skew-product machinery.
Base point is o = i in the upper half-plane, where
cosh d(o, g o) = (a^2+b^2+c^2+d^2)/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import acosh, exp, log, sqrt
from typing import Optional

import numpy as np

from .errors import ResourceLimitError, ValidationError
from .fitting import fit_shell_slope, logsumexp
from .groups import (FiniteTableGroup, FreeAbelianGroup, FreeGroup,
                     PermutationImageGroup, QuotientGroup)
from .sft import Involution, SubshiftOfFiniteType
from .skew import Cocycle
from .zeta import RoofFunction

DEFAULT_SHELL_BUDGET = 20_000_000


class MoebiusMap:
    """Real Moebius transformation as a determinant-1 matrix."""

    def __init__(self, mat):
        M = np.asarray(mat, dtype=float).reshape(2, 2)
        det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        if det <= 1e-14:
            raise ValidationError(f"matrix determinant {det} must be positive")
        self.mat = M / sqrt(det)

    @property
    def trace(self) -> float:
        return float(self.mat[0, 0] + self.mat[1, 1])

    @property
    def is_hyperbolic(self) -> bool:
        return abs(self.trace) > 2.0 + 1e-12

    def inverse(self) -> "MoebiusMap":
        a, b, c, d = self.mat.ravel()
        return MoebiusMap([[d, -b], [-c, a]])

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap(self.mat @ other.mat)

    def __call__(self, z: complex) -> complex:
        a, b, c, d = self.mat.ravel()
        return (a * z + b) / (c * z + d)

    def fixed_points(self):
        """Fixed points on the boundary (real axis); hyperbolic only."""
        a, b, c, d = self.mat.ravel()
        if abs(c) < 1e-14:
            raise ValidationError("fixed points at infinity (c = 0)")
        disc = self.trace ** 2 - 4.0
        if disc < 0:
            raise ValidationError("elliptic map has no boundary fixed points")
        sq = sqrt(disc)
        return ((a - d + sq) / (2 * c), (a - d - sq) / (2 * c))

    def attracting_fixed_point(self) -> float:
        """The fixed point where |g'| < 1."""
        a, b, c, d = self.mat.ravel()
        z1, z2 = self.fixed_points()
        return z1 if abs(c * z1 + d) >= 1.0 else z2

    def __repr__(self):
        return f"MoebiusMap({self.mat.tolist()})"


def displacement(m: MoebiusMap) -> float:
    """Hyperbolic distance d(i, m(i)) in the upper half-plane."""
    a, b, c, d = m.mat.ravel()
    return acosh(max((a * a + b * b + c * c + d * d) / 2.0, 1.0))


def translation_length(m: MoebiusMap) -> float:
    """2 arccosh(|tr|/2); zero exactly on the parabolic boundary."""
    t = abs(m.trace)
    if t < 2.0 - 1e-12:
        raise ValidationError(f"elliptic map (|trace| = {t} < 2) has no axis")
    return 2.0 * acosh(max(t / 2.0, 1.0))


def isometric_disk(m: MoebiusMap):
    """(center, radius) of the isometric circle |cz + d| = 1."""
    a, b, c, d = m.mat.ravel()
    if abs(c) < 1e-12:
        raise ValidationError("isometric circle undefined: c = 0 "
                              "(conjugate the generator off infinity)")
    return (-d / c, 1.0 / abs(c))


@dataclass
class SchottkyGroup:
    """k hyperbolic generators with pairwise disjoint isometric disks."""
    generators: tuple            # MoebiusMap per generator
    names: tuple                 # one lowercase letter per generator
    disks: list                  # per letter (2k), aligned with letter order
    min_gap: float
    letter_maps: tuple = field(default=())   # 2k MoebiusMap, letter order

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def letters(self) -> tuple:
        out = []
        for n in self.names:
            out.extend([n, n.upper()])
        return tuple(out)

    def letter_map(self, letter_index: int) -> MoebiusMap:
        return self.letter_maps[letter_index]

    def word_map(self, letters) -> MoebiusMap:
        """Moebius map of a word given by letter indices."""
        M = np.eye(2)
        for li in letters:
            M = M @ self.letter_maps[li].mat
        return MoebiusMap(M)

    def coding_sft(self) -> SubshiftOfFiniteType:
        """Cancellation-free shift: forbid letter -> its inverse."""
        n = 2 * self.k
        A = np.ones((n, n), dtype=int)
        for i in range(n):
            A[i, i ^ 1] = 0
        return SubshiftOfFiniteType(self.letters, A)

    def coding_involution(self, sft=None) -> Involution:
        sft = sft or self.coding_sft()
        return Involution(sft, {self.letters[i]: self.letters[i ^ 1]
                                for i in range(2 * self.k)})

    def free_group(self) -> FreeGroup:
        return FreeGroup(self.k, names=self.names)


def build_schottky(maps, *, names=None, min_gap: float = 0.0) -> SchottkyGroup:
    """Validate the ping-pong configuration and assemble the group.

    Rejects non-hyperbolic generators, generators with axis through
    infinity (c = 0), and any pair of letters whose isometric disks
    overlap (the offending pair and its gap are reported).
    """
    gens = [m if isinstance(m, MoebiusMap) else MoebiusMap(m) for m in maps]
    if len(gens) < 2:
        raise ValidationError("a Schottky group needs at least 2 generators")
    names = tuple(names) if names else tuple("abcdefgh"[: len(gens)])
    if len(names) != len(gens):
        raise ValidationError("need one name per generator")
    letter_maps = []
    for g in gens:
        letter_maps.extend([g, g.inverse()])
    letters = []
    for n in names:
        letters.extend([n, n.upper()])
    disks = []
    for letter, m in zip(letters, letter_maps):
        if not m.is_hyperbolic:
            raise ValidationError(
                f"generator {letter!r} is not hyperbolic (|trace| = {abs(m.trace):.6f})")
        disks.append(isometric_disk(m))
    worst = None
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            (c1, r1), (c2, r2) = disks[i], disks[j]
            gap = abs(c2 - c1) - (r1 + r2)
            if worst is None or gap < worst[0]:
                worst = (gap, letters[i], letters[j])
    if worst[0] <= min_gap:
        raise ValidationError(
            f"isometric disks of {worst[1]!r} and {worst[2]!r} overlap or touch "
            f"(gap {worst[0]:.6f} <= required {min_gap})")
    return SchottkyGroup(generators=tuple(gens), names=names, disks=disks,
                         min_gap=worst[0], letter_maps=tuple(letter_maps))


def standard_pair(shift: float = 6.0) -> SchottkyGroup:
    """Two conjugate hyperbolics with unit isometric disks spaced by
    ``shift`` (needs shift > 2 + 2 sqrt 2 for disjointness)."""
    s2 = sqrt(2.0)
    a = MoebiusMap([[s2, 1.0], [1.0, s2]])
    T = np.array([[1.0, shift], [0.0, 1.0]])
    Ti = np.array([[1.0, -shift], [0.0, 1.0]])
    b = MoebiusMap(T @ a.mat @ Ti)
    return build_schottky([a, b])


def standard_triple(shift: float = 6.0) -> SchottkyGroup:
    s2 = sqrt(2.0)
    a = MoebiusMap([[s2, 1.0], [1.0, s2]])
    out = [a]
    for mult in (1, 2):
        T = np.array([[1.0, mult * shift], [0.0, 1.0]])
        Ti = np.array([[1.0, -mult * shift], [0.0, 1.0]])
        out.append(MoebiusMap(T @ a.mat @ Ti))
    return build_schottky(out)


def kernel_cocycle(schottky: SchottkyGroup, quotient: QuotientGroup) -> Cocycle:
    """Letter cocycle on the coding shift sending each generator letter
    to its image in the quotient (inverse letters to inverse images);
    symmetric for the case-swap involution by construction."""
    if quotient.free_rank != schottky.k:
        raise ValidationError(
            f"quotient is defined on F_{quotient.free_rank}, group has rank {schottky.k}")
    sft = schottky.coding_sft()
    target = quotient.target
    letters = {}
    for i, name in enumerate(schottky.names):
        letters[name] = quotient.images[i]
        letters[name.upper()] = target.inv(quotient.images[i])
    return Cocycle(sft, quotient, letters=letters)


# ---------------------------------------------------------------------------
# image trackers for kernel-restricted shell sums


class _TrivialTracker:
    def initial(self, n_letters):
        return np.zeros(n_letters, dtype=np.int8)

    def extend(self, img, mask, letter):
        return img[mask]

    def in_kernel(self, img):
        return np.ones(len(img), dtype=bool)


class _AbelianTracker:
    def __init__(self, images, rank):
        self.rank = rank
        self.deltas = []
        for v in images:
            self.deltas.append(np.asarray(v, dtype=np.int16))
            self.deltas.append(-np.asarray(v, dtype=np.int16))

    def initial(self, n_letters):
        return np.stack([self.deltas[i] for i in range(n_letters)])

    def extend(self, img, mask, letter):
        return img[mask] + self.deltas[letter]

    def in_kernel(self, img):
        return ~img.any(axis=1)


class _PackedFreeTracker:
    """Reduced words in a free group packed into int64: low 6 bits hold
    the length, then 2*ceil(log2) bits per letter, newest at the bottom."""

    def __init__(self, images, target: FreeGroup, max_total_letters: int):
        self.bits = max(2, (2 * target.rank - 1).bit_length())
        self.mask = (1 << self.bits) - 1
        cap = (63 - 6) // self.bits
        if max_total_letters > cap:
            raise ResourceLimitError(
                f"packed free-image tracker capacity {cap} letters exceeded "
                f"({max_total_letters} needed)", limit=cap)
        self.letter_seqs = []
        for v in images:
            self.letter_seqs.append(tuple(v))
            self.letter_seqs.append(tuple(c ^ 1 for c in reversed(v)))

    def initial(self, n_letters):
        img = np.zeros(n_letters, dtype=np.int64)
        for i in range(n_letters):
            img[i: i + 1] = self._push_seq(img[i: i + 1], self.letter_seqs[i])
        return img

    def _push_seq(self, img, seq):
        for c in seq:
            ln = img & 63
            bits = img >> 6
            can_pop = (ln > 0) & ((bits & self.mask) == (c ^ 1))
            popped = ((bits >> self.bits) << 6) | (ln - 1)
            pushed = (((bits << self.bits) | c) << 6) | (ln + 1)
            img = np.where(can_pop, popped, pushed)
        return img

    def extend(self, img, mask, letter):
        return self._push_seq(img[mask], self.letter_seqs[letter])

    def in_kernel(self, img):
        return img == 0


class _IndexedTracker:
    """Finite targets: enumerate the subgroup generated by the images and
    follow element indices through a right-multiplication table."""

    def __init__(self, images, target, max_order: int = 1_000_000):
        steps = []
        for v in images:
            steps.append(v)
            steps.append(target.inv(v))
        index = {target.identity: 0}
        order = [target.identity]
        frontier = [target.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in steps:
                    y = target.mul(x, s)
                    if y not in index:
                        index[y] = len(order)
                        order.append(y)
                        nxt.append(y)
            if len(order) > max_order:
                raise ResourceLimitError("image subgroup too large to index",
                                         limit=max_order)
            frontier = nxt
        self.table = np.zeros((len(order), len(steps)), dtype=np.int32)
        for i, x in enumerate(order):
            for li, s in enumerate(steps):
                self.table[i, li] = index[target.mul(x, s)]

    def initial(self, n_letters):
        return self.table[0, np.arange(n_letters)].astype(np.int32)

    def extend(self, img, mask, letter):
        return self.table[img[mask], letter]

    def in_kernel(self, img):
        return img == 0


def _tracker_for(quotient: Optional[QuotientGroup], k: int, max_word_len: int):
    if quotient is None:
        return None
    target = quotient.target
    if isinstance(target, FreeAbelianGroup):
        return _AbelianTracker(quotient.images, target.rank)
    if isinstance(target, FreeGroup):
        max_img = max((len(v) for v in quotient.images), default=1)
        return _PackedFreeTracker(quotient.images, target,
                                  max_word_len * max(1, max_img))
    if isinstance(target, (FiniteTableGroup, PermutationImageGroup)):
        return _IndexedTracker(quotient.images, target)
    raise ValidationError(
        f"unsupported quotient target {type(target).__name__} for shell restriction")


# ---------------------------------------------------------------------------
# shell walks


@dataclass
class ShellTable:
    """Per-shell displacement arrays (restricted to a kernel if asked)."""
    R: int
    displacements: dict          # R -> float32 array
    walked: dict                 # R -> words walked (unrestricted count)
    restricted: bool

    def counts(self):
        return {R: len(d) for R, d in self.displacements.items()}

    def log_sum(self, R: int, s: float) -> float:
        d = self.displacements[R]
        if len(d) == 0:
            return float("-inf")
        return logsumexp(-s * d.astype(np.float64))


def _disp_batch(mats: np.ndarray) -> np.ndarray:
    q = (mats[:, 0, 0] ** 2 + mats[:, 0, 1] ** 2
         + mats[:, 1, 0] ** 2 + mats[:, 1, 1] ** 2) / 2.0
    return np.arccosh(np.maximum(q, 1.0))


def shell_table(schottky: SchottkyGroup, R_max: int,
                quotient: Optional[QuotientGroup] = None, *,
                max_stored_words: int = DEFAULT_SHELL_BUDGET) -> ShellTable:
    """Walk the reduced-word tree collecting per-shell displacements.

    Stored shells must fit the word budget; one further shell is
    streamed letter-by-letter (nothing but its displacements is kept),
    so the effective depth is the largest R with shell R-1 inside the
    budget.  Determinants are re-normalised every 32 letters.
    """
    k = schottky.k
    nl = 2 * k
    if R_max < 1:
        raise ValidationError("R_max must be >= 1")

    def shell_count(R):
        return nl * (nl - 1) ** (R - 1)

    R_eff = 1
    while R_eff < R_max and shell_count(R_eff) <= max_stored_words:
        R_eff += 1
    tracker = _tracker_for(quotient, k, R_eff)
    L = np.stack([m.mat for m in schottky.letter_maps])
    mats = L.copy()
    last = np.arange(nl, dtype=np.int8)
    img = tracker.initial(nl) if tracker else None
    shells: dict = {}
    walked = {0: 1, 1: nl}

    def record(R, mats_part, img_part):
        d = _disp_batch(mats_part)
        if tracker is not None:
            d = d[tracker.in_kernel(img_part)]
        shells.setdefault(R, []).append(d.astype(np.float32))

    record(1, mats, img)
    for R in range(2, R_eff + 1):
        streaming = R == R_eff  # final shell: record and discard per letter
        new_parts = []
        for letter in range(nl):
            mask = last != (letter ^ 1)
            nm = mats[mask] @ L[letter]
            if R % 32 == 0:
                det = nm[:, 0, 0] * nm[:, 1, 1] - nm[:, 0, 1] * nm[:, 1, 0]
                nm /= np.sqrt(det)[:, None, None]
            ni = tracker.extend(img, mask, letter) if tracker else None
            record(R, nm, ni)
            if not streaming:
                new_parts.append((nm, np.full(len(nm), letter, np.int8), ni))
        walked[R] = shell_count(R)
        if streaming:
            break
        mats = np.concatenate([p[0] for p in new_parts])
        last = np.concatenate([p[1] for p in new_parts])
        if tracker is not None:
            img = np.concatenate([p[2] for p in new_parts])
    displacements = {R: np.concatenate(parts) for R, parts in shells.items()}
    return ShellTable(R=max(displacements), displacements=displacements,
                      walked=walked, restricted=tracker is not None)


@dataclass
class PoincareSeries:
    s: float
    R: int
    restricted: bool
    shell_log_sums: list      # (R, log b_R(s))
    shell_counts: list
    log_partial: float        # log of 1 + sum of shells (identity included)

    @property
    def partial(self) -> float:
        return exp(self.log_partial)


def poincare_partial(schottky: SchottkyGroup, s: float, R: int,
                     restrict: Optional[QuotientGroup] = None, *,
                     table: Optional[ShellTable] = None,
                     max_stored_words: int = DEFAULT_SHELL_BUDGET) -> PoincareSeries:
    """Partial orbital sum over words of length <= R (kernel words only
    when a quotient is given), with per-shell terms for rate fitting."""
    if R < 0:
        raise ValidationError("R must be >= 0")
    if table is None and R >= 1:
        table = shell_table(schottky, R, restrict, max_stored_words=max_stored_words)
    logs, counts = [], []
    total = [0.0]  # identity term e^{-s*0}
    if R >= 1:
        for Rc in sorted(table.displacements):
            if Rc > R:
                continue
            ls = table.log_sum(Rc, s)
            logs.append((Rc, ls))
            counts.append((Rc, len(table.displacements[Rc])))
            if ls > float("-inf"):
                total.append(ls)
    return PoincareSeries(s=s, R=R, restricted=restrict is not None,
                          shell_log_sums=logs, shell_counts=counts,
                          log_partial=logsumexp(total))


@dataclass
class DeltaEstimate:
    value: float
    uncertainty: float
    R_used: int
    capped: bool
    restricted: bool
    shells_used: list
    windows: tuple


def _shell_rate(table: ShellTable, s: float, frac: float) -> float:
    Rs = [R for R in sorted(table.displacements) if len(table.displacements[R]) > 0]
    if len(Rs) < 3:
        raise ValidationError("fewer than 3 non-empty shells; cannot fit a rate")
    top = Rs[-1]
    Rs = [R for R in Rs if R >= frac * top]
    return fit_shell_slope(Rs, [table.log_sum(R, s) for R in Rs])


def _rate_root(table, frac, xtol=1e-6) -> float:
    lo, hi = 0.0, 1.0
    while _shell_rate(table, hi, frac) > 0:
        hi *= 2.0
        if hi > 64:
            raise ValidationError("shell growth rate stays positive; no root")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if _shell_rate(table, mid, frac) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def delta_poincare(schottky: SchottkyGroup, R_max: int,
                   restrict: Optional[QuotientGroup] = None, *,
                   max_stored_words: int = DEFAULT_SHELL_BUDGET,
                   table: Optional[ShellTable] = None) -> DeltaEstimate:
    """Critical-exponent estimate: the s where the fitted per-shell
    growth rate of the (possibly kernel-restricted) orbital sums changes
    sign.  Uncertainty combines two fit windows; the word budget may cap
    the usable depth below R_max (reported via ``capped``)."""
    if R_max < 4:
        raise ValidationError("R_max must be >= 4")
    if table is None:
        table = shell_table(schottky, R_max, restrict,
                            max_stored_words=max_stored_words)
    d_half = _rate_root(table, 0.5)
    try:
        d_23 = _rate_root(table, 1.0 / 3.0)
    except ValidationError:
        d_23 = d_half
    unc = abs(d_half - d_23) + 1e-6
    shells = [R for R in sorted(table.displacements)
              if len(table.displacements[R]) > 0]
    return DeltaEstimate(value=d_half, uncertainty=unc, R_used=table.R,
                         capped=table.R < R_max, restricted=table.restricted,
                         shells_used=shells, windows=(d_half, d_23))


# ---------------------------------------------------------------------------
# cylinder roofs on refined codings


@dataclass
class RefinedCoding:
    depth: int
    sft: SubshiftOfFiniteType
    roof: RoofFunction
    blocks: list                 # tuples of letter indices
    kappa: Involution


def roof_cylinder(schottky: SchottkyGroup, depth: int, *,
                  max_blocks: int = 60_000) -> RefinedCoding:
    """Locally constant roof on the depth-m refinement of the coding.

    Symbols are allowed m-blocks; on the edge (w, w') built over the
    (m+1)-block B = w0...wm the roof is the expansion log |(g_{w0}^-1)'|
    at the attracting fixed point of the Moebius map of B.  Cyclic roof
    sums then shadow translation lengths to depth-m accuracy.
    """
    if depth < 1:
        raise ValidationError("depth must be >= 1")
    nl = 2 * schottky.k
    n_blocks = nl * (nl - 1) ** (depth - 1)
    if n_blocks > max_blocks:
        raise ResourceLimitError(f"{n_blocks} blocks at depth {depth} exceed budget",
                                 requested=n_blocks, limit=max_blocks)
    blocks = [(i,) for i in range(nl)]
    for _ in range(depth - 1):
        blocks = [b + (j,) for b in blocks for j in range(nl) if j != b[-1] ^ 1]
    bindex = {b: i for i, b in enumerate(blocks)}
    names = ["".join(schottky.letters[c] for c in b) for b in blocks]
    nb = len(blocks)
    A = np.zeros((nb, nb), dtype=int)
    roof_vals = np.zeros((nb, nb))
    L = [m.mat for m in schottky.letter_maps]
    for b in blocks:
        bi = bindex[b]
        for j in range(nl):
            if j == b[-1] ^ 1:
                continue
            b2 = b[1:] + (j,)
            A[bi, bindex[b2]] = 1
            W = L[b[0]].copy()
            for c in b[1:] + (j,):
                W = W @ L[c]
            z = MoebiusMap(W).attracting_fixed_point()
            g0 = L[b[0]]
            # (g^-1)'(z) = 1/(a - c z)^2 for g = [[a,b],[c,d]], det 1
            val = -2.0 * log(abs(g0[0, 0] - g0[1, 0] * z))
            if val <= 0:
                raise ValidationError(
                    f"non-positive roof {val:.3e} on block {names[bi]!r}: "
                    f"disk separation or depth too small")
            roof_vals[bi, bindex[b2]] = val
    sft = SubshiftOfFiniteType(names, A)
    kappa = Involution(sft, {names[bindex[b]]:
                             names[bindex[tuple(c ^ 1 for c in reversed(b))]]
                             for b in blocks})
    return RefinedCoding(depth=depth, sft=sft,
                         roof=RoofFunction(sft, roof_vals),
                         blocks=blocks, kappa=kappa)


def refined_cocycle(schottky: SchottkyGroup, quotient: QuotientGroup,
                    coding: RefinedCoding) -> Cocycle:
    """Quotient images read off the first letter of each refined block.

    Cyclic products agree with the 1-block kernel cocycle, so trivial-
    holonomy sums match; the letter-mode symmetry certificate does not
    transfer to the refinement (the gurevich estimator will warn)."""
    target = quotient.target
    letter_imgs = {}
    for i, name in enumerate(schottky.names):
        letter_imgs[2 * i] = quotient.images[i]
        letter_imgs[2 * i + 1] = target.inv(quotient.images[i])
    letters = {coding.sft.alphabet[bi]: letter_imgs[b[0]]
               for bi, b in enumerate(coding.blocks)}
    return Cocycle(coding.sft, quotient, letters=letters)
