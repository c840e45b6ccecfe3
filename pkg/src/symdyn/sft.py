"""Finite-state subshifts of finite type and thermodynamic pressure.

Periodic-orbit sums are trace identities: the count of period-n points
is tr(A^n) and the weighted sum is tr(M_f^n) with M_f(i,j) =
A(i,j) e^{f(i,j)} for a two-coordinate (locally constant) potential f.
Pressure comes either from the spectral radius of M_f (power iteration)
or from the orbital sums (1/n) log tr(M_f^n); both routes are exposed
and cross-checked in the tests.

Periodic sums here run over all periodic points without pinning a start
symbol; for finite irreducible shifts this matches the pinned definition
used for countable alphabets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import exp, log, gcd
from typing import Optional

import numpy as np

from .errors import ConvergenceError, ResourceLimitError, ValidationError

ENUMERATION_THRESHOLD = 10 ** 6  # enumerate words when k^n is below this


class SubshiftOfFiniteType:
    """Alphabet + 0/1 transition matrix with irreducibility metadata.

    Immutable after construction.  Reducible matrices are accepted only
    with allow_reducible=True, and the pressure operations then refuse.
    """

    def __init__(self, alphabet, matrix, *, allow_reducible: bool = False):
        self.alphabet = tuple(str(s) for s in alphabet)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValidationError("duplicate symbols in alphabet")
        A = np.asarray(matrix, dtype=np.int8)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValidationError("transition matrix must be square")
        if A.shape[0] != len(self.alphabet):
            raise ValidationError(
                f"matrix size {A.shape[0]} does not match alphabet size {len(self.alphabet)}")
        if not np.isin(A, (0, 1)).all():
            raise ValidationError("transition matrix entries must be 0 or 1")
        dead = [self.alphabet[i] for i in range(len(A))
                if A[i].sum() == 0 or A[:, i].sum() == 0]
        if dead:
            raise ValidationError(f"dead symbols (empty row or column): {dead}")
        self.matrix = A
        self.k = len(self.alphabet)
        self._index = {s: i for i, s in enumerate(self.alphabet)}
        self.irreducible = self._strongly_connected()
        if not self.irreducible and not allow_reducible:
            raise ValidationError("transition matrix is reducible "
                                  "(pass allow_reducible=True to keep it)")
        if self.irreducible:
            self.period = self._period()
            self.cyclic_classes = self._cyclic_classes(self.period)
            self.aperiodicity_witness = self._positivity_witness() if self.period == 1 else None
        else:
            self.period = 0
            self.cyclic_classes = ()
            self.aperiodicity_witness = None

    # -- structure ---------------------------------------------------------

    def _reach(self, A) -> bool:
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for u in frontier:
                for v in np.nonzero(A[u])[0]:
                    if int(v) not in seen:
                        seen.add(int(v))
                        nxt.append(int(v))
            frontier = nxt
        return len(seen) == self.k

    def _strongly_connected(self) -> bool:
        return self._reach(self.matrix) and self._reach(self.matrix.T)

    def _period(self) -> int:
        level = {0: 0}
        frontier = [0]
        p = 0
        while frontier:
            nxt = []
            for u in frontier:
                for v in np.nonzero(self.matrix[u])[0]:
                    v = int(v)
                    if v not in level:
                        level[v] = level[u] + 1
                        nxt.append(v)
            frontier = nxt
        for u in range(self.k):
            for v in np.nonzero(self.matrix[u])[0]:
                p = gcd(p, level[u] + 1 - level[int(v)])
        return max(abs(p), 1)

    def _cyclic_classes(self, p: int):
        if p == 1:
            return (tuple(range(self.k)),)
        level = {0: 0}
        frontier = [0]
        while frontier:
            nxt = []
            for u in frontier:
                for v in np.nonzero(self.matrix[u])[0]:
                    v = int(v)
                    if v not in level:
                        level[v] = level[u] + 1
                        nxt.append(v)
            frontier = nxt
        classes = [[] for _ in range(p)]
        for v in range(self.k):
            classes[level[v] % p].append(v)
        return tuple(tuple(c) for c in classes)

    def _positivity_witness(self) -> int:
        bound = (self.k - 1) ** 2 + 1
        P = self.matrix.astype(bool)
        step = self.matrix.astype(bool)
        n = 1
        while n <= bound:
            if P.all():
                return n
            P = (P.astype(np.uint8) @ step.astype(np.uint8)) > 0
            n += 1
        raise ValidationError("no positive power found below the Wielandt bound; "
                              "matrix is not aperiodic despite period 1")

    # -- helpers ------------------------------------------------------------

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise ValidationError(f"unknown symbol {symbol!r}") from None

    def edges(self):
        for i in range(self.k):
            for j in np.nonzero(self.matrix[i])[0]:
                yield i, int(j)

    @property
    def mixing(self) -> bool:
        return self.irreducible and self.period == 1

    def __repr__(self):
        return (f"<SFT k={self.k} irreducible={self.irreducible} "
                f"period={self.period or '-'}>")


def build_sft(alphabet, matrix, *, allow_reducible=False) -> SubshiftOfFiniteType:
    return SubshiftOfFiniteType(alphabet, matrix, allow_reducible=allow_reducible)


def full_shift(k: int, names=None) -> SubshiftOfFiniteType:
    alphabet = names or [chr(ord("a") + i) for i in range(k)]
    return SubshiftOfFiniteType(alphabet, np.ones((k, k), dtype=int))


class EdgePotential:
    """Locally constant (two-coordinate) real weight on allowed edges."""

    def __init__(self, sft: SubshiftOfFiniteType, values):
        self.sft = sft
        V = np.zeros((sft.k, sft.k), dtype=float)
        if isinstance(values, dict):
            seen = set()
            for key, val in values.items():
                i, j = (sft.index(key[0]), sft.index(key[1]))
                if not sft.matrix[i, j]:
                    raise ValidationError(
                        f"potential set on forbidden edge ({key[0]},{key[1]})")
                V[i, j] = float(val)
                seen.add((i, j))
            missing = [(sft.alphabet[i], sft.alphabet[j])
                       for i, j in sft.edges() if (i, j) not in seen]
            if missing:
                raise ValidationError(f"potential missing on edges: {missing}")
        else:
            V = np.asarray(values, dtype=float)
            if V.shape != (sft.k, sft.k):
                raise ValidationError("potential matrix has wrong shape")
            V = np.where(sft.matrix > 0, V, 0.0)
        self.values = V

    @classmethod
    def constant(cls, sft, c: float) -> "EdgePotential":
        return cls(sft, np.full((sft.k, sft.k), float(c)))

    def __call__(self, i: int, j: int) -> float:
        if not self.sft.matrix[i, j]:
            raise ValidationError("potential evaluated off an allowed edge")
        return float(self.values[i, j])

    def scaled(self, c: float) -> "EdgePotential":
        return EdgePotential(self.sft, self.values * c)

    def plus_constant(self, c: float) -> "EdgePotential":
        return EdgePotential(self.sft, self.values + c)

    def weight_matrix(self) -> np.ndarray:
        return self.sft.matrix * np.exp(self.values)


class Involution:
    """Alphabet permutation with kappa o kappa = id."""

    def __init__(self, sft: SubshiftOfFiniteType, mapping):
        self.sft = sft
        perm = np.full(sft.k, -1, dtype=np.int64)
        if isinstance(mapping, dict):
            for a, b in mapping.items():
                perm[sft.index(a)] = sft.index(b)
        else:
            for i, b in enumerate(mapping):
                perm[i] = sft.index(b) if isinstance(b, str) else int(b)
        if sorted(perm) != list(range(sft.k)):
            raise ValidationError("kappa is not a permutation of the alphabet")
        if not all(perm[perm[i]] == i for i in range(sft.k)):
            raise ValidationError("kappa is not an involution")
        self.perm = perm

    def __call__(self, i: int) -> int:
        return int(self.perm[i])

    @property
    def fixed_point_free(self) -> bool:
        return all(self.perm[i] != i for i in range(self.sft.k))


# ---------------------------------------------------------------------------
# periodic sums


@dataclass
class PeriodicSum:
    n: int
    count: int
    log_sum: float   # log of sum over period-n points of e^{f^n}
    method: str

    @property
    def sum(self) -> float:
        return exp(self.log_sum) if self.count else 0.0


def _int_matpow_trace(A, n: int) -> int:
    """Exact trace of the n-th power of an integer matrix."""
    M = [[int(x) for x in row] for row in A]
    k = len(M)

    def mul(X, Y):
        return [[sum(X[i][t] * Y[t][j] for t in range(k)) for j in range(k)]
                for i in range(k)]

    result = None
    base = M
    e = n
    while e:
        if e & 1:
            result = base if result is None else mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return sum(result[i][i] for i in range(k))


def _scaled_float_power(W: np.ndarray, n: int):
    """W^n as (matrix, log_scale) with matrix entries kept near 1."""
    def norm(M, s):
        m = M.max()
        if m <= 0:
            return M, s
        return M / m, s + log(m)

    result, rs = np.eye(W.shape[0]), 0.0
    base, bs = norm(W.astype(float), 0.0)
    e = n
    while e:
        if e & 1:
            result, rs = norm(result @ base, rs + bs)
        e >>= 1
        if e:
            base, bs = norm(base @ base, bs + bs)
    return result, rs


def require_same_shift(sft: SubshiftOfFiniteType, pot, what: str = "potential"):
    """Potentials/roofs carry their shift; mixing shifts is an input bug."""
    if pot is None:
        return
    other = pot.sft
    if other is sft:
        return
    if other.alphabet == sft.alphabet and np.array_equal(other.matrix, sft.matrix):
        return
    raise ValidationError(f"{what} was built for a different shift "
                          f"(alphabet {other.alphabet} vs {sft.alphabet})")


def periodic_sum(sft: SubshiftOfFiniteType, f: Optional[EdgePotential], n: int,
                 *, method: str = "auto") -> PeriodicSum:
    """Count and e^{f^n}-weighted sum over period-n points.

    method 'auto' enumerates words while k^n stays under 10^6 (cheap and
    independently checkable) and switches to log-scaled matrix powers
    beyond that; 'matrix' and 'enumerate' force a route.
    """
    if n < 1:
        raise ValidationError("period must be >= 1")
    require_same_shift(sft, f)
    if method == "auto":
        method = "enumerate" if sft.k ** n <= ENUMERATION_THRESHOLD else "matrix"
    if method == "enumerate":
        count, log_sum = _enumerate_periodic(sft, f, n)
        return PeriodicSum(n=n, count=count, log_sum=log_sum, method=method)
    if method != "matrix":
        raise ValidationError(f"unknown periodic_sum method {method!r}")
    count = _int_matpow_trace(sft.matrix, n)
    if f is None:
        log_sum = log(count) if count else float("-inf")
    else:
        M, s = _scaled_float_power(f.weight_matrix(), n)
        tr = float(np.trace(M))
        log_sum = (log(tr) + s) if tr > 0 else float("-inf")
    return PeriodicSum(n=n, count=count, log_sum=log_sum, method=method)


def _letters_array(k: int, n: int) -> np.ndarray:
    """(k^n, n) int8 array of all words; column j is letter x_j."""
    N = k ** n
    codes = np.arange(N, dtype=np.int64)
    letters = np.empty((N, n), dtype=np.int8)
    for j in range(n - 1, -1, -1):
        letters[:, j] = codes % k
        codes //= k
    return letters


def _enumerate_periodic(sft, f, n):
    if sft.k ** n > 4 * ENUMERATION_THRESHOLD:
        raise ResourceLimitError(f"k^n = {sft.k ** n} too large to enumerate",
                                 requested=sft.k ** n, limit=4 * ENUMERATION_THRESHOLD)
    letters = _letters_array(sft.k, n)
    mask = np.ones(len(letters), dtype=bool)
    for j in range(n):
        mask &= sft.matrix[letters[:, j], letters[:, (j + 1) % n]] > 0
    count = int(mask.sum())
    if f is None:
        return count, (log(count) if count else float("-inf"))
    if count == 0:
        return 0, float("-inf")
    w = np.zeros(len(letters), dtype=float)
    for j in range(n):
        w += f.values[letters[:, j], letters[:, (j + 1) % n]]
    w = w[mask]
    m = float(w.max())
    return count, m + log(float(np.exp(w - m).sum()))


# ---------------------------------------------------------------------------
# pressure


def _power_iteration(W: np.ndarray, tol: float, max_iter: int) -> float:
    """Perron root of a nonnegative irreducible matrix, l1-normalised
    iteration with period-2 oscillation damping."""
    k = W.shape[0]
    v = np.full(k, 1.0 / k)
    lams = []
    for _ in range(max_iter):
        w = W @ v
        s = float(w.sum())
        if s <= 0:
            raise ConvergenceError("iteration collapsed to zero vector", residual=s)
        v = w / s
        lams.append(s)
        if len(lams) >= 2 and abs(lams[-1] - lams[-2]) <= tol * max(1.0, s):
            return lams[-1]
        if len(lams) >= 4:
            a1 = 0.5 * (lams[-1] + lams[-2])
            a2 = 0.5 * (lams[-2] + lams[-3])
            if abs(a1 - a2) <= tol * max(1.0, s):
                return a1
    raise ConvergenceError(
        f"power iteration did not converge in {max_iter} steps",
        residual=abs(lams[-1] - lams[-2]) if len(lams) >= 2 else None)


def spectral_pressure(sft: SubshiftOfFiniteType, f: Optional[EdgePotential] = None,
                      *, tol: float = 1e-12, max_iter: int = 100_000) -> float:
    """log of the spectral radius of the weighted transition matrix.

    For period p > 1 the iteration runs on the p-step return matrix of
    one cyclic class and the result is divided by p.
    """
    if not sft.irreducible:
        raise ValidationError("pressure is defined for irreducible shifts only")
    require_same_shift(sft, f)
    W = f.weight_matrix() if f is not None else sft.matrix.astype(float)
    p = sft.period
    if p == 1:
        return log(_power_iteration(W, tol, max_iter))
    classes = sft.cyclic_classes
    M = None
    scale = 0.0
    for l in range(p):
        rows = np.array(classes[l])
        cols = np.array(classes[(l + 1) % p])
        B = W[np.ix_(rows, cols)]
        M = B if M is None else M @ B
        m = M.max()
        if m > 0:
            M = M / m
            scale += log(m)
    return (log(_power_iteration(M, tol, max_iter)) + scale) / p


@dataclass
class OrbitalPressure:
    ns: list
    values: list          # a_n = (1/n) log sum
    estimate: float       # tail-fit limit
    se: float
    spectral: float       # same quantity by the spectral route
    envelope_C: float     # fitted C with |a_n - P| <= C/n over the used n

    @property
    def agrees(self) -> bool:
        return abs(self.estimate - self.spectral) <= max(5 * self.se, 1e-6)


def orbital_pressure(sft, f: Optional[EdgePotential], n_max: int,
                     *, method: str = "auto") -> OrbitalPressure:
    """Pressure from periodic sums a_n = (1/n) log tr(M_f^n), with the
    extrapolated limit and the spectral value side by side."""
    if n_max < 2:
        raise ValidationError("n_max must be >= 2")
    from .fitting import fit_tail_limit
    ns, values = [], []
    for n in range(1, n_max + 1):
        ps = periodic_sum(sft, f, n, method=method)
        if ps.count == 0:
            continue
        ns.append(n)
        values.append(ps.log_sum / n)
    if len(ns) < 2:
        raise ValidationError("not enough non-empty periods to estimate pressure")
    fit = fit_tail_limit(ns, values)
    P = spectral_pressure(sft, f)
    C = max(abs(v - P) * n for n, v in zip(ns, values))
    return OrbitalPressure(ns=ns, values=values, estimate=fit.limit, se=fit.se,
                           spectral=P, envelope_C=C)


# ---------------------------------------------------------------------------
# symmetry validation


@dataclass
class SymmetryReport:
    involution_ok: bool
    fixed_point_free: bool
    matrix_symmetric: bool
    matrix_failures: list = field(default_factory=list)
    potential_symmetric: bool = True
    potential_failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.involution_ok and self.fixed_point_free
                and self.matrix_symmetric and self.potential_symmetric)


def check_symmetry(sft: SubshiftOfFiniteType, kappa: Involution,
                   f: Optional[EdgePotential] = None) -> SymmetryReport:
    """Validate the time-reversal structure: kappa fixed-point free,
    A(kj,ki) = A(i,j), and f(i,j) = f(kj,ki) on every edge.

    The edge condition on f is the sufficient certificate for weak
    symmetry with constant 1 (locally constant potentials).  Failures
    name the offending edges.
    """
    report = SymmetryReport(involution_ok=True,
                            fixed_point_free=kappa.fixed_point_free,
                            matrix_symmetric=True)
    A = sft.matrix
    for i in range(sft.k):
        for j in range(sft.k):
            if A[i, j] != A[kappa(j), kappa(i)]:
                report.matrix_symmetric = False
                report.matrix_failures.append((sft.alphabet[i], sft.alphabet[j]))
    if f is not None and report.matrix_symmetric:
        for i, j in sft.edges():
            if abs(f(i, j) - f(kappa(j), kappa(i))) > 1e-12:
                report.potential_symmetric = False
                report.potential_failures.append(
                    (sft.alphabet[i], sft.alphabet[j],
                     f(i, j), f(kappa(j), kappa(i))))
    return report
