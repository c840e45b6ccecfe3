"""Finitely generated groups with exact arithmetic on canonical hashable keys.

Every group here operates directly on small immutable keys (bytes, int
tuples, table indices) rather than wrapper objects: the skew-product and
random-walk layers push millions of keys through dict/array fibers, and
the key IS the element.  Key equality is group equality by construction.

Words are strings over single-letter generator names; an uppercase
letter is the formal inverse of the lowercase generator ("abA" = a b a^-1).

The ``known_amenable`` flag is metadata for test harnesses only; no
runtime computation branches on it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ResourceLimitError, ValidationError

DEFAULT_GEN_NAMES = "abcdefghijklmnopqrstuvwxyz"
DEFAULT_BALL_CAP = 5_000_000


class Group:
    """Base class: exact products, inverses and canonical keys.

    Subclasses set ``gen_names`` and ``known_amenable`` and implement
    ``mul``, ``inv`` and ``generator``.
    """

    name: str = "group"
    gen_names: tuple = ()
    known_amenable: Optional[bool] = None
    identity = None

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def generator(self, name: str):
        raise NotImplementedError

    def is_identity(self, a) -> bool:
        return a == self.identity

    def letter(self, ch: str):
        """Key of a single word letter (uppercase = inverse)."""
        if ch.islower():
            return self.generator(ch)
        return self.inv(self.generator(ch.lower()))

    def evaluate(self, word) -> object:
        """Product of the word's letters; empty word gives the identity."""
        out = self.identity
        for ch in word:
            out = self.mul(out, self.letter(ch))
        return out

    def generator_steps(self):
        """Ordered, de-duplicated list of generator and inverse keys."""
        steps = []
        for name in self.gen_names:
            g = self.generator(name)
            if g not in steps:
                steps.append(g)
            gi = self.inv(g)
            if gi not in steps:
                steps.append(gi)
        return steps

    def same_group(self, other) -> bool:
        """Structural interchangeability (same arithmetic on same keys)."""
        if self is other:
            return True
        if type(self) is not type(other) or self.gen_names != other.gen_names:
            return False
        if isinstance(self, FiniteTableGroup):
            return np.array_equal(self._table, other._table)
        if isinstance(self, QuotientGroup):
            return (self.images == other.images
                    and self.target.same_group(other.target))
        if isinstance(self, PermutationImageGroup):
            return self._gens == other._gens
        if isinstance(self, (FreeGroup, FreeAbelianGroup)):
            return self.rank == other.rank
        return type(self) is type(other)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name!r}>"


def _check_gen_names(names) -> tuple:
    names = tuple(names)
    for n in names:
        if not (isinstance(n, str) and len(n) == 1 and n.isalpha() and n.islower()):
            raise ValidationError(
                f"generator name {n!r} must be a single lowercase letter")
    if len(set(names)) != len(names):
        raise ValidationError("duplicate generator names")
    return names


class FreeGroup(Group):
    """Free group of rank k; keys are reduced words packed one byte per
    letter (code 2i = generator i, 2i+1 = its inverse)."""

    def __init__(self, rank: int, names: Optional[Sequence[str]] = None):
        if rank < 1:
            raise ValidationError("free group rank must be >= 1")
        self.rank = rank
        self.gen_names = _check_gen_names(names or DEFAULT_GEN_NAMES[:rank])
        if len(self.gen_names) != rank:
            raise ValidationError("need exactly one name per generator")
        self.name = f"F{rank}"
        self.identity = b""
        self.known_amenable = rank < 2  # F1 = Z
        self._codes = {n: 2 * i for i, n in enumerate(self.gen_names)}

    def generator(self, name):
        try:
            return bytes([self._codes[name]])
        except KeyError:
            raise ValidationError(f"unknown generator {name!r} in {self.name}") from None

    def mul(self, a, b):
        out = bytearray(a)
        for c in b:
            if out and (out[-1] ^ c) == 1:
                out.pop()
            else:
                out.append(c)
        return bytes(out)

    def inv(self, a):
        return bytes(c ^ 1 for c in reversed(a))

    def word_length(self, a) -> int:
        return len(a)

    def spell(self, a) -> str:
        return "".join(
            self.gen_names[c >> 1] if c % 2 == 0 else self.gen_names[c >> 1].upper()
            for c in a)


class FreeAbelianGroup(Group):
    """Z^d with integer-vector keys."""

    def __init__(self, rank: int, names: Optional[Sequence[str]] = None):
        if rank < 1:
            raise ValidationError("free-abelian rank must be >= 1")
        self.rank = rank
        self.gen_names = _check_gen_names(names or DEFAULT_GEN_NAMES[:rank])
        if len(self.gen_names) != rank:
            raise ValidationError("need exactly one name per generator")
        self.name = f"Z^{rank}"
        self.identity = (0,) * rank
        self.known_amenable = True
        self._index = {n: i for i, n in enumerate(self.gen_names)}

    def generator(self, name):
        try:
            i = self._index[name]
        except KeyError:
            raise ValidationError(f"unknown generator {name!r} in {self.name}") from None
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)


class LamplighterGroup(Group):
    """Z2 wr Z; keys are (position, sorted tuple of lit lamp offsets).

    Generators: 't' moves the lamplighter, 'a' toggles the lamp at the
    current position ('a' is its own inverse).
    """

    def __init__(self):
        self.gen_names = ("t", "a")
        self.name = "lamplighter"
        self.identity = (0, ())
        self.known_amenable = True  # solvable

    def generator(self, name):
        if name == "t":
            return (1, ())
        if name == "a":
            return (0, (0,))
        raise ValidationError(f"unknown generator {name!r} in {self.name}")

    def mul(self, a, b):
        p1, l1 = a
        p2, l2 = b
        lamps = set(l1) ^ {p1 + q for q in l2}
        return (p1 + p2, tuple(sorted(lamps)))

    def inv(self, a):
        p, lamps = a
        return (-p, tuple(sorted(q - p for q in lamps)))


class FiniteTableGroup(Group):
    """Finite group from an explicit multiplication table (keys = indices)."""

    def __init__(self, table, generators=None, name="finite"):
        T = np.asarray(table, dtype=np.int64)
        if T.ndim != 2 or T.shape[0] != T.shape[1]:
            raise ValidationError("multiplication table must be square")
        n = T.shape[0]
        if n == 0:
            raise ValidationError("empty multiplication table")
        if T.min() < 0 or T.max() >= n:
            raise ValidationError("table not closed: entries outside 0..n-1")
        ident = None
        for e in range(n):
            if all(T[e, x] == x and T[x, e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise ValidationError("table has no identity element")
        inv = np.full(n, -1, dtype=np.int64)
        for x in range(n):
            hits = np.nonzero(T[x] == ident)[0]
            if len(hits) == 0:
                raise ValidationError(f"element {x} has no inverse in table")
            inv[x] = hits[0]
        if n <= 256:
            # T[T][a,b,c] = T[T[a,b],c];  T[:,T][a,b,c] = T[a,T[b,c]]
            if not np.array_equal(T[T], T[:, T]):
                raise ValidationError("table is not associative")
        self._table = T
        self._inv = inv
        self.order = n
        self.identity = ident
        self.name = name
        self.known_amenable = True  # finite
        if generators is None:
            generators = {DEFAULT_GEN_NAMES[i]: x
                          for i, x in enumerate(range(n)) if x != ident}
            generators = dict(itertools.islice(generators.items(), 8))
        self._gens = {str(k): int(v) for k, v in dict(generators).items()}
        for nm, el in self._gens.items():
            _check_gen_names([nm])
            if not (0 <= el < n):
                raise ValidationError(f"generator {nm!r} index {el} out of range")
        self.gen_names = tuple(self._gens)

    @classmethod
    def cyclic(cls, n: int, name=None):
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls(table, generators={"g": 1 % n}, name=name or f"C{n}")

    def generator(self, name):
        try:
            return self._gens[name]
        except KeyError:
            raise ValidationError(f"unknown generator {name!r} in {self.name}") from None

    def mul(self, a, b):
        return int(self._table[a, b])

    def inv(self, a):
        return int(self._inv[a])

    def elements(self):
        return range(self.order)


class PermutationImageGroup(Group):
    """Subgroup of a symmetric group, elements stored as image tuples."""

    def __init__(self, degree: int, generators: dict, name="perm"):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.known_amenable = True  # finite
        self.name = name
        self._gens = {}
        for nm, p in generators.items():
            _check_gen_names([nm])
            p = tuple(int(x) for x in p)
            if sorted(p) != list(range(degree)):
                raise ValidationError(f"image of {nm!r} is not a permutation of 0..{degree-1}")
            self._gens[nm] = p
        self.gen_names = tuple(self._gens)

    def generator(self, name):
        try:
            return self._gens[name]
        except KeyError:
            raise ValidationError(f"unknown generator {name!r} in {self.name}") from None

    def mul(self, a, b):
        return tuple(b[a[i]] for i in range(self.degree))

    def inv(self, a):
        out = [0] * self.degree
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)


class QuotientGroup(Group):
    """A quotient F_k -> G presented by generator images.

    Words are spelled in the free generators; arithmetic happens in the
    image group.  ``target`` and ``images`` expose the homomorphism for
    cogrowth counting and kernel cocycles.
    """

    def __init__(self, free_rank: int, target: Group, images, name=None,
                 names: Optional[Sequence[str]] = None):
        if len(images) != free_rank:
            raise ValidationError("need one image per free generator")
        self.free_rank = free_rank
        self.target = target
        self.images = tuple(images)
        self.gen_names = _check_gen_names(names or DEFAULT_GEN_NAMES[:free_rank])
        self.identity = target.identity
        self.known_amenable = target.known_amenable
        self.name = name or f"F{free_rank}->{target.name}"
        self._index = {n: i for i, n in enumerate(self.gen_names)}

    def generator(self, name):
        try:
            return self.images[self._index[name]]
        except KeyError:
            raise ValidationError(f"unknown generator {name!r} in {self.name}") from None

    def mul(self, a, b):
        return self.target.mul(a, b)

    def inv(self, a):
        return self.target.inv(a)


def abelianization(rank: int, names=None) -> QuotientGroup:
    target = FreeAbelianGroup(rank)
    images = [target.generator(n) for n in target.gen_names]
    return QuotientGroup(rank, target, images, name=f"F{rank}->Z^{rank}", names=names)


def kill_generators(rank: int, killed: Iterable, names=None) -> QuotientGroup:
    """Quotient of F_k killing a subset of generators (image is free on
    the remaining ones; trivial when all are killed)."""
    names = _check_gen_names(names or DEFAULT_GEN_NAMES[:rank])
    killed = set(killed)
    for k in killed:
        if k not in names:
            raise ValidationError(f"cannot kill unknown generator {k!r}")
    surviving = [n for n in names if n not in killed]
    if not surviving:
        target = FiniteTableGroup([[0]], generators={}, name="trivial")
        images = [0] * rank
        return QuotientGroup(rank, target, images, name=f"F{rank}->1", names=names)
    target = FreeGroup(len(surviving), names=surviving)
    images = []
    for n in names:
        images.append(target.generator(n) if n in surviving else target.identity)
    return QuotientGroup(rank, target, images,
                         name=f"F{rank}->F{len(surviving)}", names=names)


def finite_image(rank: int, perm_images: dict, degree: int, names=None) -> QuotientGroup:
    """Quotient of F_k onto a permutation group given generator images."""
    names = _check_gen_names(names or DEFAULT_GEN_NAMES[:rank])
    target = PermutationImageGroup(degree, {n: perm_images[n] for n in names},
                                   name=f"perm{degree}")
    images = [target.generator(n) for n in names]
    return QuotientGroup(rank, target, images, name=f"F{rank}->S{degree}", names=names)


def trivial_quotient(rank: int, names=None) -> QuotientGroup:
    names = _check_gen_names(names or DEFAULT_GEN_NAMES[:rank])
    return kill_generators(rank, set(names), names=names)


def free_identity_quotient(rank: int, names=None) -> QuotientGroup:
    return kill_generators(rank, set(), names=names)


def make_group(spec: dict) -> Group:
    """Build a group from a declarative spec (the config-file entry point).

    kinds: free(rank), free-abelian(rank), lamplighter, cyclic(order),
    finite-table(table, generators), quotient-of-free(rank, relation).
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValidationError("group spec must be a mapping with a 'kind' field")
    kind = spec["kind"]
    if kind == "free":
        return FreeGroup(int(spec["rank"]), names=spec.get("generators"))
    if kind == "free-abelian":
        return FreeAbelianGroup(int(spec["rank"]), names=spec.get("generators"))
    if kind == "lamplighter":
        return LamplighterGroup()
    if kind == "cyclic":
        return FiniteTableGroup.cyclic(int(spec["order"]))
    if kind == "finite-table":
        return FiniteTableGroup(spec["table"], generators=spec.get("generators"),
                                name=spec.get("name", "finite"))
    if kind == "quotient-of-free":
        rank = int(spec["rank"])
        names = spec.get("generators")
        rel = spec.get("relation")
        if rel == "abelianization":
            return abelianization(rank, names=names)
        if rel == "identity":
            return free_identity_quotient(rank, names=names)
        if rel == "trivial":
            return trivial_quotient(rank, names=names)
        if isinstance(rel, dict) and "kill" in rel:
            return kill_generators(rank, rel["kill"], names=names)
        if isinstance(rel, dict) and "finite-image" in rel:
            fi = rel["finite-image"]
            return finite_image(rank, fi["images"], int(fi["degree"]), names=names)
        raise ValidationError(f"unknown relation kind {rel!r} for quotient-of-free")
    raise ValidationError(f"unknown group kind {kind!r}")


# ---------------------------------------------------------------------------
# balls and Folner diagnostics


@dataclass
class Ball:
    """Word-metric ball: every element within ``radius`` of the identity."""
    radius: int
    distance: dict
    sphere_sizes: list = field(default_factory=list)

    def __contains__(self, key):
        return key in self.distance

    def __len__(self):
        return len(self.distance)

    def keys(self):
        return self.distance.keys()


def ball(group: Group, radius: int, *, steps=None,
         max_elements: int = DEFAULT_BALL_CAP) -> Ball:
    """BFS ball of the given radius; deterministic insertion order.

    ``steps`` overrides the generating set (used by the skew layer to take
    balls in the word metric of cocycle values).  Raises
    ResourceLimitError when the ball exceeds ``max_elements``.
    """
    if radius < 0:
        raise ValidationError("radius must be >= 0")
    if steps is None:
        steps = group.generator_steps()
    dist = {group.identity: 0}
    frontier = [group.identity]
    spheres = [1]
    for r in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for s in steps:
                y = group.mul(x, s)
                if y not in dist:
                    dist[y] = r
                    nxt.append(y)
            if len(dist) > max_elements:
                raise ResourceLimitError(
                    f"ball of radius {radius} in {group.name} exceeded "
                    f"{max_elements} elements at radius {r}",
                    requested=radius, limit=max_elements)
        frontier = nxt
        spheres.append(len(nxt))
    return Ball(radius=radius, distance=dist, sphere_sizes=spheres)


def folner_defect(group: Group, F, gens) -> float:
    """max over the given generators of 1 - #(F n gF)/#F."""
    F = set(F)
    if not F:
        raise ValidationError("Folner defect of an empty set is undefined")
    worst = 0.0
    for g in gens:
        overlap = sum(1 for x in F if group.mul(g, x) in F)
        worst = max(worst, 1.0 - overlap / len(F))
    return worst


@dataclass
class FolnerResult:
    success: bool
    subset: frozenset
    defect: float
    candidates_tried: int
    note: str = ""


def _box_candidates(group, max_size):
    if isinstance(group, FreeAbelianGroup):
        d = group.rank
        L = 1
        while L ** d <= max_size:
            yield frozenset(itertools.product(range(L), repeat=d)) if d > 1 else \
                frozenset((i,) for i in range(L))
            L += 1
    elif isinstance(group, LamplighterGroup):
        m = 1
        while m * 2 ** m <= max_size:
            cells = []
            for q in range(-(m - 1), 1):
                for lamps in itertools.chain.from_iterable(
                        itertools.combinations(range(q, q + m), j) for j in range(m + 1)):
                    cells.append((q, tuple(sorted(lamps))))
            yield frozenset(cells)
            m += 1


def folner_search(group: Group, epsilon: float, gens=None, *,
                  max_radius: int = 8, max_size: int = 60_000,
                  shave_rounds: int = 200) -> FolnerResult:
    """Deterministic search for a set with Folner defect <= epsilon.

    Tries group-adapted boxes, then balls, then greedy boundary shaving
    on the best candidate.  Failure is a budget statement, never a proof
    of non-amenability: the returned object carries the best defect seen.
    """
    if not (0.0 < epsilon < 1.0):
        raise ValidationError("epsilon must lie in (0, 1)")
    if gens is None:
        gens = group.generator_steps()
    best: Optional[frozenset] = None
    best_defect = 1.1
    tried = 0

    def consider(F):
        nonlocal best, best_defect, tried
        tried += 1
        d = folner_defect(group, F, gens)
        if d < best_defect:
            best, best_defect = frozenset(F), d
        return d <= epsilon

    for F in _box_candidates(group, max_size):
        if consider(F):
            return FolnerResult(True, best, best_defect, tried)
    for r in range(1, max_radius + 1):
        try:
            B = ball(group, r, max_elements=max_size)
        except ResourceLimitError:
            break
        if consider(frozenset(B.keys())):
            return FolnerResult(True, best, best_defect, tried)
    # greedy shaving: drop the element most exposed to the generator action
    if best is not None:
        F = set(best)
        for _ in range(shave_rounds):
            if len(F) <= 2:
                break
            badness = {}
            for x in F:
                badness[x] = sum(1 for g in gens if group.mul(g, x) not in F)
            worst_x = max(F, key=lambda x: (badness[x], repr(x)))
            if badness[worst_x] == 0:
                break
            F.discard(worst_x)
            if consider(F):
                return FolnerResult(True, best, best_defect, tried)
    return FolnerResult(False, best, best_defect, tried,
                        note="budget exhausted; not evidence of non-amenability")
