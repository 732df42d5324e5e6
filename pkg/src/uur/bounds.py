"""Lower bounds on variance products of unitary operator pairs and tuples.

All bounds consume the coordinate moduli x, y of a ModulusPair. The central
construction splits the index set into a block S and its complement, applies
the Cauchy-Schwarz inequality per block, and once more across the two
blocks:

    (x . y)^2  <=  (|x_S||y_S| + |x_Sc||y_Sc|)^2  <=  |x|^2 |y|^2

The middle quantity is the split bound; maximizing it over which indices
form the block gives the best split bound. The interpolation family i_d and
the paired cross bound are transcribed comparison bounds from the
literature, kept byte-faithful to their published term structure even where
that structure has known defects (see the package tests).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import moments
from .errors import (
    DimensionTooSmall,
    IndexOutOfRange,
    InvalidSubset,
    SearchSpaceTooLarge,
    WeightOutOfRange,
)
from .moments import ModulusPair, PureState

DEFAULT_CAP = 5_000_000


@dataclass(frozen=True)
class SubsetSelection:
    """A block of 1-based indices S inside {1..n}."""

    n: int
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted(int(i) for i in self.indices))
        if self.n < 1:
            raise InvalidSubset(f"dimension must be positive, got {self.n}")
        if not idx:
            raise InvalidSubset("subset must not be empty")
        if len(set(idx)) != len(idx):
            raise InvalidSubset(f"subset has repeated indices: {idx}")
        if idx[0] < 1 or idx[-1] > self.n:
            raise InvalidSubset(f"indices {idx} out of range 1..{self.n}")
        object.__setattr__(self, "indices", idx)

    @property
    def m(self) -> int:
        return len(self.indices)

    @classmethod
    def first_block(cls, n: int, m: int) -> "SubsetSelection":
        """The leading block {1..m}."""
        if not 1 <= m <= n:
            raise InvalidSubset(f"block size {m} out of range 1..{n}")
        return cls(n=n, indices=tuple(range(1, m + 1)))


@dataclass(frozen=True)
class BoundSet:
    """Every bound for one operator pair and state, plus the variance product.

    i_d holds the full interpolation family: element k-1 is the level-(k)
    value, so i_d[0] is the variance product and i_d[-1] is lb. i_1_prime is
    None when the dimension is below 3 (its defining formula needs a third
    coordinate).
    """

    variance_product: float
    lb: float
    k_m: float
    k_m_v: float
    k_tilde_m: float
    k_tilde: float
    k_tilde_argmax: SubsetSelection
    i_d: tuple[float, ...]
    i_1_prime: float | None
    m: int
    v: float

    def validate(self, slack: float = 1e-10) -> list[str]:
        """Return chain-invariant violations (empty list when consistent)."""
        bad = []
        vp = self.variance_product

        def chain(names, vals):
            for (na, va), (nb, vb) in itertools.pairwise(zip(names, vals)):
                if va > vb + slack:
                    bad.append(f"{na} > {nb} by {va - vb:.3e}")

        chain(("lb", "k_m", "k_m_v", "variance_product"), (self.lb, self.k_m, self.k_m_v, vp))
        chain(("k_m", "k_tilde_m", "k_tilde", "variance_product"),
              (self.k_m, self.k_tilde_m, self.k_tilde, vp))
        for lev in range(1, len(self.i_d)):
            if self.i_d[lev] > self.i_d[lev - 1] + slack:
                bad.append(f"i_{lev + 1} > i_{lev} by {self.i_d[lev] - self.i_d[lev - 1]:.3e}")
        if abs(self.i_d[0] - vp) > slack:
            bad.append(f"i_1 != variance_product by {abs(self.i_d[0] - vp):.3e}")
        if abs(self.i_d[-1] - self.lb) > slack:
            bad.append(f"i_n != lb by {abs(self.i_d[-1] - self.lb):.3e}")
        return bad


def _squares(pair: ModulusPair) -> tuple[list[float], list[float]]:
    return [float(t) for t in pair.x ** 2], [float(t) for t in pair.y ** 2]


def _split_value(x2: list[float], y2: list[float], inside: frozenset[int]) -> float:
    # Sums run in ascending global index order for both blocks, so any two
    # representations of the same subset produce bit-identical results.
    xs = ys = xc = yc = 0.0
    for i in range(len(x2)):
        if i in inside:
            xs += x2[i]
            ys += y2[i]
        else:
            xc += x2[i]
            yc += y2[i]
    return (math.sqrt(xs) * math.sqrt(ys) + math.sqrt(xc) * math.sqrt(yc)) ** 2


def variance_product(pair: ModulusPair) -> float:
    """|x|^2 |y|^2, the quantity every bound here sits below."""
    return float(np.sum(pair.x ** 2) * np.sum(pair.y ** 2))


def correlation_bound(pair: ModulusPair) -> float:
    """(x . y)^2, the squared inner product of the coordinate moduli.

    This is the weakest member of the split-bound chain and doubles as the
    final level of the interpolation family.
    """
    return float(np.dot(pair.x, pair.y)) ** 2


def split_bound(pair: ModulusPair, subset: SubsetSelection) -> float:
    """Two-block Cauchy-Schwarz bound for a given index block."""
    if subset.n != pair.dim:
        raise InvalidSubset(f"subset is over {subset.n} indices, pair has {pair.dim}")
    x2, y2 = _squares(pair)
    inside = frozenset(i - 1 for i in subset.indices)
    return _split_value(x2, y2, inside)


def split_bound_blend(pair: ModulusPair, subset: SubsetSelection, v: float) -> float:
    """Convex blend v*split + (1-v)*variance_product, non-increasing in v."""
    if not 0.0 <= v <= 1.0:
        raise WeightOutOfRange(f"blend weight must lie in [0, 1], got {v}")
    return v * split_bound(pair, subset) + (1.0 - v) * variance_product(pair)


def best_split_bound(pair: ModulusPair, m: int, cap: int = DEFAULT_CAP) -> tuple[float, SubsetSelection]:
    """Maximum split bound over all blocks of size m.

    Enumerates the binomial(n, m) subsets; block membership is all that the
    split value depends on, so permutations never need to be enumerated.
    Ties resolve to the lexicographically smallest subset. Raises
    SearchSpaceTooLarge instead of silently truncating the search.
    """
    n = pair.dim
    if not 1 <= m <= n:
        raise InvalidSubset(f"block size {m} out of range 1..{n}")
    count = math.comb(n, m)
    if count > cap:
        raise SearchSpaceTooLarge(
            f"binomial({n}, {m}) = {count} subsets exceeds the cap of {cap}", count=count
        )
    x2, y2 = _squares(pair)
    best = -1.0
    best_subset: tuple[int, ...] = ()
    for combo in itertools.combinations(range(n), m):
        val = _split_value(x2, y2, frozenset(combo))
        if val > best:
            best = val
            best_subset = combo
    return best, SubsetSelection(n=n, indices=tuple(i + 1 for i in best_subset))


def best_split_bound_overall(pair: ModulusPair, cap: int = DEFAULT_CAP) -> tuple[float, int, SubsetSelection]:
    """Maximum of best_split_bound over block sizes m = 1 .. floor(n/2).

    Larger blocks are redundant: a block and its complement give the same
    split value, so sizes above n/2 repeat sizes below it.
    """
    n = pair.dim
    best = -1.0
    best_m = 1
    best_subset = SubsetSelection.first_block(n, 1)
    for m in range(1, max(1, n // 2) + 1):
        val, subset = best_split_bound(pair, m, cap)
        if val > best:
            best, best_m, best_subset = val, m, subset
    return best, best_m, best_subset


@dataclass(frozen=True)
class HeuristicBound:
    """Greedy search result, explicitly labeled so it is never mistaken
    for the exact subset maximum."""

    value: float
    subset: SubsetSelection
    label: str = "heuristic"


def greedy_split_bound(pair: ModulusPair, m: int) -> HeuristicBound:
    """Heuristic block search: hill-climb by single-index swaps.

    Starts from the leading block and keeps applying the swap with the
    largest gain. The result is a valid lower bound but not necessarily the
    maximum; use best_split_bound when the search space fits the cap.
    """
    n = pair.dim
    if not 1 <= m <= n:
        raise InvalidSubset(f"block size {m} out of range 1..{n}")
    x2, y2 = _squares(pair)
    current = set(range(m))
    value = _split_value(x2, y2, frozenset(current))
    while True:
        best_gain = 0.0
        best_swap = None
        for i in sorted(current):
            for j in sorted(set(range(n)) - current):
                trial = (current - {i}) | {j}
                val = _split_value(x2, y2, frozenset(trial))
                if val - value > best_gain:
                    best_gain = val - value
                    best_swap = (i, j)
        if best_swap is None:
            break
        current = (current - {best_swap[0]}) | {best_swap[1]}
        value += best_gain
        value = _split_value(x2, y2, frozenset(current))
    return HeuristicBound(
        value=value,
        subset=SubsetSelection(n=n, indices=tuple(i + 1 for i in sorted(current))))


def fine_grained_bound(pair: ModulusPair, level: int) -> float:
    """Level-d member of the interpolation family between the endpoints.

    Level 1 is the full variance product |x|^2 |y|^2; the top level n is
    (x . y)^2. Cross terms with both indices at or below the level enter as
    2 x_i y_i x_j y_j; the rest keep the symmetric x_i^2 y_j^2 + x_j^2 y_i^2
    form. The family is non-increasing in the level.
    """
    n = pair.dim
    if not 1 <= level <= n:
        raise IndexOutOfRange(f"level {level} out of range 1..{n}")
    x, y = pair.x, pair.y
    total = float(np.sum(pair.x ** 2 * pair.y ** 2))
    for i in range(n):
        for j in range(i + 1, n):
            if j + 1 > level:
                total += float(x[i] ** 2 * y[j] ** 2 + x[j] ** 2 * y[i] ** 2)
            else:
                total += float(2.0 * x[i] * y[i] * x[j] * y[j])
    return total


def fine_grained_sequence(pair: ModulusPair) -> tuple[float, ...]:
    """All levels 1..n of the interpolation family."""
    return tuple(fine_grained_bound(pair, lev) for lev in range(1, pair.dim + 1))


def paired_cross_bound(pair: ModulusPair) -> float:
    """Comparison bound that pairs the second and third coordinates.

    Transcribed term by term from its published form:

        sum_i x_i^2 y_i^2  +  sum_{j != 1, i != j} x_i^2 y_j^2
        +  y_1^2 sum_{i >= 4} x_i^2  +  2 y_1^2 x_2 x_3

    (1-based indices; the third term is an empty sum when n == 3). It always
    sits at or below the variance product, but can drop below level 2 of the
    fine-grained family on some states; the tests document that defect
    rather than patching the formula.
    """
    n = pair.dim
    if n < 3:
        raise DimensionTooSmall(f"paired cross bound needs dimension >= 3, got {n}")
    x, y = pair.x, pair.y
    total = float(np.sum(x ** 2 * y ** 2))
    for j in range(1, n):
        for i in range(n):
            if i != j:
                total += float(x[i] ** 2 * y[j] ** 2)
    total += float(y[0] ** 2 * np.sum(x[3:] ** 2))
    total += float(2.0 * y[0] ** 2 * x[1] * x[2])
    return total


def gram_matrix(ops, psi: PureState) -> np.ndarray:
    """Overlap matrix of (I, U_1, ..., U_l) applied to the state.

    Entry (j, k) is <U_j psi | U_k psi>; the identity is prepended as row
    and column 0. Positive semidefinite by construction, unit diagonal for
    unitary inputs.
    """
    columns = [psi.amplitudes]
    for idx, U in enumerate(ops):
        M = np.asarray(U, dtype=complex)
        moments._check_dims(M, psi)
        moments._require_unitary(M, name=f"operator {idx}")
        columns.append(M @ psi.amplitudes)
    W = np.column_stack(columns)
    return W.conj().T @ W


def triple_correlation_bound(A, B, C, psi: PureState) -> float:
    """Three-operator floor built from the pairwise correlations.

    The triple variance product minus this value equals the determinant of
    the 4x4 Gram matrix of (I, A, B, C), which is nonnegative, so the value
    never exceeds the triple variance product.
    """
    dA = moments.variance_pure(A, psi)
    dB = moments.variance_pure(B, psi)
    dC = moments.variance_pure(C, psi)
    cAB = moments.correlation(A, B, psi)
    cAC = moments.correlation(A, C, psi)
    cBC = moments.correlation(B, C, psi)
    return float(
        dA * abs(cBC) ** 2
        + dB * abs(cAC) ** 2
        + dC * abs(cAB) ** 2
        - 2.0 * np.real(cAC * np.conj(cBC) * np.conj(cAB))
    )


def geometric_mean_bound(ops, psi: PureState, m: int, v: float = 0.1,
                         flavor: str = "plain", cap: int = DEFAULT_CAP) -> float:
    """Multi-operator bound: geometric mean of the pairwise split bounds.

    For l operators the product of all l(l-1)/2 pairwise bounds is raised
    to 1/(l-1); with l = 2 this reduces to the single pairwise bound.
    flavor picks the pairwise quantity: "plain" the split bound on the
    leading block, "convex" its blend, "tilde" the best split over blocks.
    """
    ops = list(ops)
    if len(ops) < 2:
        raise ValueError(f"need at least 2 operators, got {len(ops)}")
    if flavor not in ("plain", "convex", "tilde"):
        raise ValueError(f"unknown flavor {flavor!r}")
    product = 1.0
    for U, V in itertools.combinations(ops, 2):
        pair = moments.modulus_pair(U, V, psi)
        block = SubsetSelection.first_block(pair.dim, m)
        if flavor == "plain":
            val = split_bound(pair, block)
        elif flavor == "convex":
            val = split_bound_blend(pair, block, v)
        else:
            val, _ = best_split_bound(pair, m, cap)
        product *= val
    return float(product ** (1.0 / (len(ops) - 1)))


def bound_report(A, B, psi: PureState, m: int | None = None, v: float = 0.1,
                 cap: int = DEFAULT_CAP) -> BoundSet:
    """Compute every pairwise bound for one operator pair and state.

    m defaults to floor(n/2). m = n is rejected: the complement block would
    be empty and the split degenerates to the plain variance product.
    """
    pair = moments.modulus_pair(A, B, psi)
    n = pair.dim
    if n < 2:
        raise DimensionTooSmall(f"bound reports need dimension >= 2, got {n}")
    if m is None:
        m = max(1, n // 2)
    if not 1 <= m <= n - 1:
        raise InvalidSubset(f"block size {m} out of range 1..{n - 1} (m = n is degenerate)")
    block = SubsetSelection.first_block(n, m)
    k_tilde_m_val, _ = best_split_bound(pair, m, cap)
    k_tilde_val, _, k_tilde_subset = best_split_bound_overall(pair, cap)
    return BoundSet(
        variance_product=variance_product(pair),
        lb=correlation_bound(pair),
        k_m=split_bound(pair, block),
        k_m_v=split_bound_blend(pair, block, v),
        k_tilde_m=k_tilde_m_val,
        k_tilde=max(k_tilde_val, k_tilde_m_val),
        k_tilde_argmax=k_tilde_subset,
        i_d=fine_grained_sequence(pair),
        i_1_prime=paired_cross_bound(pair) if n >= 3 else None,
        m=m,
        v=v,
    )
