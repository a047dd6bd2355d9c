"""Sumset compression machinery for the relay gap family's converse.

Works with families A_1..A_M of binary length-k vectors.  The sum map Q
adds tuples componentwise into {0..M}^k; the compression maps push each
set toward the all-zeros corner one coordinate at a time while preserving
cardinalities, which only shrinks the image of Q and leaves it downward
closed.  Together with a binomial counting bound this yields the
entropy-rate function gamma used to cap achievable rates in the relay gap
family.  Every lemma used along the way has a brute-force checker here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import BudgetExceeded, DomainError, PreconditionViolated, ValidationError

DEFAULT_PRODUCT_BUDGET = 2**22

GAMMA_TOL = 1e-12
GAMMA_MAX_ITER = 200


@dataclass(frozen=True)
class BlockFamily:
    """Family of nonempty sets of binary k-vectors (tuples of 0/1)."""

    k: int
    sets: tuple

    def __init__(self, k: int, sets):
        packed = tuple(frozenset(tuple(v) for v in s) for s in sets)
        if k < 1:
            raise ValidationError("k must be positive")
        for s in packed:
            if not s:
                raise ValidationError("every set must be nonempty")
            for v in s:
                if len(v) != k or any(b not in (0, 1) for b in v):
                    raise ValidationError(f"not a binary {k}-vector: {v}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "sets", packed)

    @property
    def M(self) -> int:
        return len(self.sets)


def q_sum(vectors) -> tuple:
    """Componentwise integer sum of equal-length vectors."""
    vectors = [tuple(v) for v in vectors]
    k = len(vectors[0])
    if any(len(v) != k for v in vectors):
        raise ValidationError("vectors must share one length")
    return tuple(sum(col) for col in zip(*vectors))


def q_sumset(family: BlockFamily, product_budget: int | None = None) -> frozenset:
    """Image of the family's product under the componentwise sum.

    Computed incrementally (set of partial sums extended one factor at a
    time), which equals the image of the full product without enumerating
    it; the budget is still stated on the product size.
    """
    budget = DEFAULT_PRODUCT_BUDGET if product_budget is None else product_budget
    size = 1
    for s in family.sets:
        size *= len(s)
        if size > budget:
            raise BudgetExceeded(f"product size exceeds {budget}")
    partial = {(0,) * family.k}
    for s in family.sets:
        partial = {
            tuple(p + a for p, a in zip(vec, add)) for vec in partial for add in s
        }
    return frozenset(partial)


def h_j(p, j: int) -> tuple:
    """Decrement component j (1-based), floored at zero."""
    p = tuple(p)
    if not 1 <= j <= len(p):
        raise ValidationError(f"component {j} outside 1..{len(p)}")
    return p[: j - 1] + (max(0, p[j - 1] - 1),) + p[j:]


def phi_j(vectors, j: int) -> frozenset:
    """Push each vector down in coordinate j unless the image is taken.

    A vector moves to its decremented copy only when that copy is not
    already in the set, which makes the map injective: cardinality is
    preserved (asserted).
    """
    s = frozenset(tuple(v) for v in vectors)
    out = set()
    for a in s:
        b = h_j(a, j)
        out.add(b if b not in s else a)
    assert len(out) == len(s)
    return frozenset(out)


def compress(family: BlockFamily) -> BlockFamily:
    """Apply the coordinate compressions 1..k in order to every set."""
    sets = []
    for s in family.sets:
        cur = s
        for j in range(1, family.k + 1):
            cur = phi_j(cur, j)
        sets.append(cur)
    return BlockFamily(family.k, sets)


def check_invariance(family: BlockFamily, upto: int | None = None) -> bool:
    """True iff each set is unchanged by every compression stage <= upto.

    Families produced by ``compress`` are invariant under all stages: a
    full pass leaves nothing movable, which also means each set is closed
    under decrementing any single coordinate.
    """
    t = family.k if upto is None else upto
    return all(
        phi_j(s, j) == s for s in family.sets for j in range(1, t + 1)
    )


def check_sumset_shrink(family: BlockFamily, product_budget=None) -> bool:
    """Compression never grows the sumset image."""
    before = len(q_sumset(family, product_budget))
    after = len(q_sumset(compress(family), product_budget))
    return before >= after


def check_downward_closure(family: BlockFamily, product_budget=None) -> bool:
    """The compressed family's sumset contains every dominated vector.

    Dominance is componentwise <= over {0..M}^k; the compressed sumset can
    be walked down by unit coordinate decrements without leaving it.
    """
    closed = q_sumset(compress(family), product_budget)
    for p in closed:
        for q_vec in product(*(range(v + 1) for v in p)):
            if q_vec not in closed:
                return False
    return True


def product_min_bound(k: int, M: int, delta) -> tuple:
    """Exhaustively minimize prod(1 + m_i) under sum(m_i) >= delta*M*k.

    Returns (lhs, rhs, holds) where lhs is the exhaustive minimum over
    m in {0..M}^k, rhs = (M+1)**(delta*k), and holds = lhs >= rhs (up to
    1e-9).  delta may be any rational in (0, 1]; the threshold comparison
    is done in exact arithmetic so grid values like 1/3 behave.
    """
    if not 0 < delta <= 1:
        raise DomainError("delta must lie in (0, 1]")
    if (M + 1) ** k > DEFAULT_PRODUCT_BUDGET:
        raise BudgetExceeded(f"(M+1)**k = {(M + 1) ** k} too large")
    threshold = Fraction(delta).limit_denominator(10**6) * M * k
    lhs = None
    for m in product(range(M + 1), repeat=k):
        if sum(m) < threshold:
            continue
        value = math.prod(1 + v for v in m)
        if lhs is None or value < lhs:
            lhs = value
    assert lhs is not None  # m = (M,...,M) is always feasible
    rhs = (M + 1) ** (float(delta) * k)
    return lhs, rhs, lhs >= rhs - 1e-9


def binary_entropy(y: float) -> float:
    """H(y) = -y log2 y - (1-y) log2 (1-y), with H(0) = H(1) = 0."""
    if not 0 <= y <= 1:
        raise DomainError("entropy argument must lie in [0, 1]")
    if y in (0.0, 1.0):
        return 0.0
    return -y * math.log2(y) - (1 - y) * math.log2(1 - y)


def entropy_inverse(target: float) -> float:
    """The unique y in [0, 1/2] with H(y) = target, by bisection."""
    if not 0 <= target <= 1:
        raise DomainError("entropy values lie in [0, 1]")
    if target == 0:
        return 0.0
    lo, hi = 0.0, 0.5
    for _ in range(GAMMA_MAX_ITER):
        mid = (lo + hi) / 2
        if binary_entropy(mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= GAMMA_TOL:
            break
    return (lo + hi) / 2


def gamma(x: float) -> float:
    """Entropy-rate function: the y in [0, 1/2] with H(y) = (1 - 1/x)/2.

    Strictly increasing on [1, inf) with gamma(1) = 0; the target never
    exceeds 1/2, so the inverse stays in [0, 1/2].
    """
    if x < 1:
        raise DomainError("gamma is defined for x >= 1")
    return entropy_inverse(0.5 * (1 - 1 / x))


def check_hamming_count(k: int, delta: float) -> tuple:
    """Binomial tail against the entropy bound, for delta <= 1/2.

    Returns (lhs, rhs, holds): lhs counts binary k-vectors of Hamming
    weight at most floor(delta*k), rhs = 2**(k*H(delta)), holds = lhs <= rhs.
    """
    if not 0 < delta <= 0.5:
        raise DomainError("delta must lie in (0, 1/2]")
    lhs = sum(math.comb(k, j) for j in range(math.floor(delta * k) + 1))
    rhs = 2 ** (k * binary_entropy(delta))
    return lhs, rhs, lhs <= rhs + 1e-9


def lemma_A2_check(
    family: BlockFamily, n: int, product_budget=None
) -> bool:
    """Sumset size against the entropy-rate floor (expected always true).

    Requires k > n and |A_i| >= 2**(k-n) for every set; then the image of
    the sum map has at least (M+1)**(gamma(k/n)*k) elements.
    """
    k, M = family.k, family.M
    if not 1 <= n < k:
        raise PreconditionViolated("need 1 <= n < k")
    floor = 2 ** (k - n)
    for s in family.sets:
        if len(s) < floor:
            raise PreconditionViolated(
                f"set of size {len(s)} below 2**(k-n) = {floor}"
            )
    lhs = len(q_sumset(family, product_budget))
    rhs = (M + 1) ** (gamma(k / n) * k)
    return lhs >= rhs - 1e-9


def random_family(rng, k: int, M: int, n: int) -> BlockFamily:
    """Random family meeting the size floor |A_i| >= 2**(k-n), for tests."""
    if not 1 <= n < k:
        raise PreconditionViolated("need 1 <= n < k")
    floor = 2 ** (k - n)
    universe = list(product((0, 1), repeat=k))
    sets = []
    for _ in range(M):
        size = rng.randint(floor, len(universe))
        sets.append(rng.sample(universe, size))
    return BlockFamily(k, sets)
