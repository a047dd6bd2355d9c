"""Target functions over {0..q-1}^s and their footprint machinery.

The footprint of a function with respect to an index set I counts the
classes of the interchangeability relation: two assignments to the I
coordinates are equivalent when swapping one for the other never changes
the function value, whatever the remaining coordinates hold.  Footprint
sizes drive both the cut-set upper bound and several lower bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .errors import (
    ArityMismatch,
    BudgetExceeded,
    NonPrimeFieldForLinear,
    OutOfAlphabet,
    ValidationError,
)

DEFAULT_STATE_BUDGET = 2**20

KINDS = (
    "identity",
    "arithmetic_sum",
    "mod_sum",
    "histogram",
    "linear",
    "maximum",
    "minimum",
    "table",
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def log_base(x, q: int) -> float:
    """log_q(x), exact for integer powers of q.

    Integer powers are detected so quantities like log_2(4) or the
    identity function's footprint exponents come out as exact floats.
    """
    if isinstance(x, int) and x >= 1:
        power, t = 1, 0
        while power < x:
            power *= q
            t += 1
        if power == x:
            return float(t)
    return math.log2(x) / math.log2(q)


class TargetFunction:
    """A total function of all s source symbols, with structural flags.

    Instances are immutable by convention; the full value table is built
    eagerly (the constructor's dependence check needs it) and cached, as
    are footprints per index set.
    """

    def __init__(
        self,
        kind: str,
        arity: int,
        alphabet_size: int,
        *,
        r: int | None = None,
        coeffs=None,
        values=None,
        divisible: bool | None = None,
        state_budget: int | None = None,
    ):
        if kind not in KINDS:
            raise ValidationError(f"unknown target function kind {kind!r}")
        if arity < 1:
            raise ValidationError("arity must be at least 1")
        if alphabet_size < 2:
            raise ValidationError("alphabet size must be at least 2")
        self.kind = kind
        self.arity = int(arity)
        self.alphabet_size = int(alphabet_size)
        self.r = None
        self.coeffs = None

        q, s = self.alphabet_size, self.arity
        if kind == "mod_sum":
            if r is None or not 2 <= r <= q:
                raise ValidationError("mod_sum needs 2 <= r <= alphabet size")
            self.r = int(r)
        elif kind == "linear":
            if not _is_prime(q):
                raise NonPrimeFieldForLinear(q)
            if coeffs is None or len(coeffs) != s:
                raise ArityMismatch("linear needs one coefficient per argument")
            self.coeffs = tuple(int(c) % q for c in coeffs)
        elif kind == "table":
            if values is None or len(values) != q**s:
                raise ArityMismatch(
                    f"table needs exactly q**s = {q**s} values"
                )
            self._values = tuple(
                tuple(v) if isinstance(v, (list, tuple)) else v for v in values
            )

        budget = DEFAULT_STATE_BUDGET if state_budget is None else state_budget
        if q**s > budget:
            raise BudgetExceeded(f"q**s = {q**s} exceeds state budget {budget}")

        self._table = tuple(
            self._raw_evaluate(x) for x in product(range(q), repeat=s)
        )
        self._check_dependence()
        self.codomain = tuple(sorted(set(self._table)))

        # Divisibility is a declared flag spot-checked by the necessary
        # condition; certifying it outright would need an existence search
        # over decompositions.
        if divisible is None:
            divisible = kind != "table"
        self.declared_divisible = bool(divisible)

        self._footprints: dict = {}

    # -- evaluation --------------------------------------------------------

    def _raw_evaluate(self, x: tuple):
        kind, q = self.kind, self.alphabet_size
        if kind == "identity":
            return x
        if kind == "arithmetic_sum":
            return sum(x)
        if kind == "mod_sum":
            return sum(x) % self.r
        if kind == "histogram":
            counts = [0] * q
            for v in x:
                counts[v] += 1
            return tuple(counts)
        if kind == "linear":
            return sum(a * v for a, v in zip(self.coeffs, x)) % q
        if kind == "maximum":
            return max(x)
        if kind == "minimum":
            return min(x)
        return self._values[self._index_of(x)]

    def _index_of(self, x: tuple) -> int:
        # Base-q numeral with x_1 as the most significant digit.
        idx = 0
        for v in x:
            idx = idx * self.alphabet_size + v
        return idx

    def evaluate(self, x):
        """Function value on x; rejects symbols outside {0..q-1}."""
        x = tuple(x)
        if len(x) != self.arity:
            raise ArityMismatch(f"expected {self.arity} arguments, got {len(x)}")
        for v in x:
            if not isinstance(v, int) or not 0 <= v < self.alphabet_size:
                raise OutOfAlphabet(v)
        return self._table[self._index_of(x)]

    __call__ = evaluate

    def _check_dependence(self):
        # The model assumes f is not constant in any single argument.
        q, s = self.alphabet_size, self.arity
        for i in range(s):
            stride = q ** (s - 1 - i)
            block = stride * q
            depends = False
            for base in range(0, q**s, block):
                for off in range(stride):
                    first = self._table[base + off]
                    if any(
                        self._table[base + off + j * stride] != first
                        for j in range(1, q)
                    ):
                        depends = True
                        break
                if depends:
                    break
            if not depends:
                raise ValidationError(
                    f"function is constant in argument {i + 1}"
                )

    def __repr__(self):
        extra = ""
        if self.kind == "mod_sum":
            extra = f", r={self.r}"
        elif self.kind == "linear":
            extra = f", coeffs={self.coeffs}"
        return (
            f"TargetFunction({self.kind}, s={self.arity}, "
            f"q={self.alphabet_size}{extra})"
        )


# -- factories ---------------------------------------------------------------

def identity(s: int, q: int) -> TargetFunction:
    return TargetFunction("identity", s, q)


def arithmetic_sum(s: int, q: int) -> TargetFunction:
    return TargetFunction("arithmetic_sum", s, q)


def mod_sum(s: int, q: int, r: int) -> TargetFunction:
    return TargetFunction("mod_sum", s, q, r=r)


def histogram(s: int, q: int) -> TargetFunction:
    return TargetFunction("histogram", s, q)


def linear(coeffs, q: int) -> TargetFunction:
    return TargetFunction("linear", len(tuple(coeffs)), q, coeffs=coeffs)


def maximum(s: int, q: int) -> TargetFunction:
    return TargetFunction("maximum", s, q)


def minimum(s: int, q: int) -> TargetFunction:
    return TargetFunction("minimum", s, q)


def table_function(s: int, q: int, values, divisible: bool = False) -> TargetFunction:
    return TargetFunction("table", s, q, values=values, divisible=divisible)


# -- footprints ---------------------------------------------------------------

@dataclass(frozen=True)
class FootprintResult:
    """Equivalence classes of assignments to the coordinates in index_set.

    class_of maps each assignment (tuple over the sorted index set) to a
    class index; indices are contiguous from 1 in first-seen order of the
    fingerprints, so the labelling is reproducible.
    """

    index_set: tuple
    class_count: int
    class_of: dict


def evaluate(f: TargetFunction, x):
    return f.evaluate(x)


def footprint(
    f: TargetFunction, index_set, state_budget: int | None = None
) -> FootprintResult:
    """Group assignments to the given coordinates by their fingerprints.

    The fingerprint of an assignment a is the tuple of f values over all
    completions with the remaining coordinates running through base-q
    numerals in ascending order; equal fingerprints = same class.  For the
    full index set this reduces to grouping by function value.
    """
    q, s = f.alphabet_size, f.arity
    index_set = tuple(sorted(set(index_set)))
    for i in index_set:
        if not 1 <= i <= s:
            raise ValidationError(f"index {i} outside 1..{s}")
    if index_set in f._footprints:
        return f._footprints[index_set]
    budget = DEFAULT_STATE_BUDGET if state_budget is None else state_budget
    if q**s > budget:
        raise BudgetExceeded(f"q**s = {q**s} exceeds state budget {budget}")

    weights = [q ** (s - 1 - pos) for pos in range(s)]
    inside = [i - 1 for i in index_set]
    outside = [pos for pos in range(s) if pos + 1 not in index_set]
    complement_offsets = [
        sum(b_val * weights[pos] for b_val, pos in zip(b, outside))
        for b in product(range(q), repeat=len(outside))
    ]

    class_of = {}
    fingerprints = {}
    for a in product(range(q), repeat=len(inside)):
        base = sum(a_val * weights[pos] for a_val, pos in zip(a, inside))
        fp = tuple(f._table[base + off] for off in complement_offsets)
        idx = fingerprints.get(fp)
        if idx is None:
            idx = len(fingerprints) + 1
            fingerprints[fp] = idx
        class_of[a] = idx

    result = FootprintResult(index_set, len(fingerprints), class_of)
    if index_set:
        # Functions depend on every argument, so any nonempty index set
        # admits at least two classes.
        assert result.class_count >= 2
    f._footprints[index_set] = result
    return result


def footprint_size(f: TargetFunction, index_set, state_budget=None) -> int:
    return footprint(f, index_set, state_budget).class_count


def footprint_table(f: TargetFunction, state_budget=None) -> dict:
    """Footprint size for every nonempty index set."""
    out = {}
    for mask in range(1, 2**f.arity):
        index_set = tuple(i + 1 for i in range(f.arity) if mask >> i & 1)
        out[index_set] = footprint_size(f, index_set, state_budget)
    return out


def range_size(f: TargetFunction, state_budget=None) -> int:
    """Number of distinct values f takes on its whole domain."""
    return len(f.codomain)


def is_symmetric(f: TargetFunction, state_budget=None) -> bool:
    """Exhaustive symmetry check.

    Adjacent transpositions generate the full symmetric group, so checking
    each of the s-1 swaps over all inputs suffices and costs (s-1) * q**s
    instead of s! passes.
    """
    q, s = f.alphabet_size, f.arity
    for i in range(s - 1):
        for x in product(range(q), repeat=s):
            if x[i] == x[i + 1]:
                continue
            y = x[:i] + (x[i + 1], x[i]) + x[i + 2 :]
            if f._table[f._index_of(x)] != f._table[f._index_of(y)]:
                return False
    return True


def lambda_exponential_index(f: TargetFunction, state_budget=None) -> float:
    """Largest lambda such that every footprint is at least q**(lambda*|I|)."""
    best = None
    for index_set, size in footprint_table(f, state_budget).items():
        value = log_base(size, f.alphabet_size) / len(index_set)
        if best is None or value < best:
            best = value
    return best


def lambda_bounded_index(f: TargetFunction, state_budget=None) -> float:
    """Smallest lambda such that every footprint is at most q**lambda."""
    best = None
    for size in footprint_table(f, state_budget).values():
        value = log_base(size, f.alphabet_size)
        if best is None or value > best:
            best = value
    return best


def min_footprint(f: TargetFunction, state_budget=None) -> int:
    """Smallest footprint size over nonempty index sets."""
    return min(footprint_table(f, state_budget).values())


def divisible_necessary_check(f: TargetFunction, state_budget=None) -> bool:
    """Necessary condition for divisibility: no footprint exceeds the range.

    A False result refutes the declared flag.  A True result does NOT
    certify divisibility; existence of consistent sub-functions is not
    searched for.
    """
    bound = range_size(f)
    return all(
        size <= bound for size in footprint_table(f, state_budget).values()
    )
