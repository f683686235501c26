"""Constructions that realize every primitive degree from 1 to (n-1)^2 + 1.

Two families cover the range for order >= dimension >= 3:

* degrees t <= n come from monomial lifts of matrices built to have exponent
  exactly t (all-positive first column, a superdiagonal path of length t-1,
  all-positive columns after t);
* degrees t = n + k come from the Wielandt lift with one extra support, the
  k-th trace state of column n-1, added to every row. That addition leaves the
  first k states of column n-1 untouched and then completes the climb in one
  step, so column n-1 resolves at k+1 and the last column, which trails it by
  n-1 steps, resolves at n+k; no other column is slower.

Every builder re-verifies the degree it claims with the analysis machinery and
raises VerificationError on disagreement rather than returning a wrong witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitsets import IndexSet
from .digraphs import PatternMatrix, matrix_gamma, wielandt_matrix
from .errors import VerificationError
from .patterns import PatternTensor, analyze, column_states, default_bound
from . import patterns


def monomial_lift(matrix: PatternMatrix, order: int) -> PatternTensor:
    """Order-m tensor positive exactly on cells (u, v, v, ..., v) with (u, v)
    positive in the matrix. Its trace states, degrees, and primitivity verdict
    coincide with the matrix's for every order >= 2."""
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    return PatternTensor.from_matrix(matrix, order)


def wielandt_tensor(order: int, dim: int) -> PatternTensor:
    """Monomial lift of the Wielandt matrix; primitive with the extremal degree
    (dim-1)^2 + 1 for every order >= 2, dim >= 3."""
    return monomial_lift(wielandt_matrix(dim), order)


def wielandt_frontier_tensor(order: int, dim: int, k: int) -> PatternTensor:
    """The Wielandt lift with its k-th column-(dim-1) state added to every row.

    Requires order >= dim >= 3 (the added set can have dim-1 members, which
    must fit in a support of size order-1) and 1 <= k <= dim^2 - 3*dim + 2
    (beyond that the state is no longer a proper subset). The result keeps the
    Wielandt majorization pattern and has primitive degree dim + k, attained by
    the last column.
    """
    if dim < 3:
        raise ValueError(f"dim must be >= 3, got {dim}")
    if order < dim:
        raise ValueError(f"order must be >= dim, got order {order} < dim {dim}")
    k_max = dim * dim - 3 * dim + 2
    if not 1 <= k <= k_max:
        raise ValueError(f"k must be in 1..{k_max} for dim {dim}, got {k}")
    base = wielandt_tensor(order, dim)
    extra = column_states(base, dim - 1, k)[-1]
    rows = tuple(fam.add(extra) for fam in base.rows)
    return PatternTensor(order, dim, rows)


def small_exponent_matrix(dim: int, target: int) -> PatternMatrix:
    """A zero-one matrix with exponent exactly ``target``, for 1 <= target <= dim.

    Column 1 is all-positive, the superdiagonal carries a path of length
    target-1, and columns target+1..dim are all-positive. In the reversed
    digraph vertex 1 and the high vertices see everything at once while
    2..target sit on a descending chain, so the slowest column needs exactly
    ``target`` steps. The exponent is re-verified before returning.
    """
    if dim < 3:
        raise ValueError(f"dim must be >= 3, got {dim}")
    if not 1 <= target <= dim:
        raise ValueError(f"target must be in 1..{dim}, got {target}")
    entries = [(i, 1) for i in range(1, dim + 1)]
    entries += [(i, i + 1) for i in range(1, target)]
    for j in range(target + 1, dim + 1):
        entries += [(i, j) for i in range(1, dim + 1)]
    matrix = PatternMatrix.from_entries(dim, entries)
    got = matrix_gamma(matrix)
    if got != target:
        raise VerificationError(
            f"small_exponent_matrix(dim={dim}, target={target}) self-check failed: "
            f"exponent is {got}"
        )
    return matrix


@dataclass(frozen=True)
class FamilySpec:
    """Recipe for one constructed tensor, recorded alongside its witnesses."""

    kind: str  # "monomial-lift" | "wielandt-lift" | "wielandt-frontier"
    order: int
    dim: int
    k: int | None = None
    t: int | None = None


def degree_witness(order: int, dim: int, degree: int) -> tuple[PatternTensor, FamilySpec]:
    """A primitive tensor of the given order/dim whose degree is exactly ``degree``.

    Degrees up to dim come from small-exponent matrix lifts; larger ones from
    the frontier family with k = degree - dim. Requires order >= dim >= 3 and
    1 <= degree <= (dim-1)^2 + 1. The built tensor is re-analyzed and a
    disagreement raises VerificationError.
    """
    if dim < 3:
        raise ValueError(f"dim must be >= 3, got {dim}")
    if order < dim:
        raise ValueError(f"order must be >= dim, got order {order} < dim {dim}")
    top = default_bound(dim)
    if not 1 <= degree <= top:
        raise ValueError(f"degree must be in 1..{top} for dim {dim}, got {degree}")
    if degree <= dim:
        tensor = monomial_lift(small_exponent_matrix(dim, degree), order)
        spec = FamilySpec("monomial-lift", order, dim, t=degree)
    else:
        tensor = wielandt_frontier_tensor(order, dim, degree - dim)
        spec = FamilySpec("wielandt-frontier", order, dim, k=degree - dim, t=degree)
    got = analyze(tensor).gamma
    if got != degree:
        raise VerificationError(
            f"degree_witness(order={order}, dim={dim}, degree={degree}) self-check "
            f"failed: analyzed degree is {got}"
        )
    return tensor, spec


@dataclass(frozen=True)
class DegreeWitness:
    degree: int
    spec: FamilySpec
    tensor: PatternTensor
    verified_gamma: int


@dataclass(frozen=True)
class ExponentSetResult:
    """Witnessed degrees for one (order, dim), against the expected full interval."""

    order: int
    dim: int
    witnesses: tuple[DegreeWitness, ...]
    failures: tuple[tuple[int, str], ...]

    @property
    def achieved(self) -> frozenset[int]:
        return frozenset(w.degree for w in self.witnesses)

    @property
    def expected(self) -> frozenset[int]:
        return frozenset(range(1, default_bound(self.dim) + 1))

    @property
    def complete(self) -> bool:
        return not self.failures and self.achieved == self.expected


def exponent_set(order: int, dim: int) -> ExponentSetResult:
    """Construct and machine-verify a witness for every degree 1..(dim-1)^2+1.

    Per-degree verification failures are recorded in ``failures`` instead of
    aborting the sweep, so a discrepancy names the degree that broke.
    """
    if dim < 3:
        raise ValueError(f"dim must be >= 3, got {dim}")
    if order < dim:
        raise ValueError(f"order must be >= dim, got order {order} < dim {dim}")
    witnesses = []
    failures = []
    for degree in range(1, default_bound(dim) + 1):
        try:
            tensor, spec = degree_witness(order, dim, degree)
        except VerificationError as e:
            failures.append((degree, str(e)))
            continue
        witnesses.append(DegreeWitness(degree, spec, tensor, degree))
    return ExponentSetResult(order, dim, tuple(witnesses), tuple(failures))


def _gamma_from_column_masks(cols: tuple[int, ...], dim: int, bound: int) -> int | None:
    """Exponent of a zero-one matrix given as column bitmasks; the same frontier
    iteration as the trace engine, kept allocation-free for bulk enumeration."""
    full = (1 << dim) - 1
    worst = 0
    for j in range(dim):
        cur = 1 << j
        seen = [cur]
        hit = None
        for k in range(1, bound + 1):
            nxt = 0
            m = cur
            while m:
                low = m & -m
                nxt |= cols[low.bit_length() - 1]
                m ^= low
            cur = nxt
            if cur == full:
                hit = k
                break
            if cur in seen:
                break
            seen.append(cur)
        if hit is None:
            return None
        if hit > worst:
            worst = hit
    return worst


def brute_force_matrix_exponent_set(dim: int) -> set[int]:
    """Exponents attained by zero-one matrices of the given dimension, by
    exhausting all 2**(dim*dim) patterns. Intentionally capped at dim <= 4
    (65536 patterns); the mask-level loop agrees with matrix_gamma, which tests
    pin exhaustively at dim 3."""
    if not 1 <= dim <= 4:
        raise ValueError(f"dim must be in 1..4, got {dim}")
    bound = default_bound(dim)
    out: set[int] = set()
    n2 = dim * dim
    for bits in range(1 << n2):
        cols = [0] * dim
        b = bits
        while b:
            low = b & -b
            pos = low.bit_length() - 1
            # bit layout: row-major, bit (i*dim + j) <-> entry (i+1, j+1)
            cols[pos % dim] |= 1 << (pos // dim)
            b ^= low
        g = _gamma_from_column_masks(tuple(cols), dim, bound)
        if g is not None and g not in out:
            out.add(g)
    return out


def _monomial_pattern_from_bits(bits: int, dim: int, order: int) -> PatternTensor:
    """Helper for enumeration tests: bit (i*dim + j) set means entry (i+1, j+1)."""
    rows = []
    for i in range(dim):
        rows.append(IndexSet((bits >> (i * dim)) & ((1 << dim) - 1), dim))
    return patterns.PatternTensor.from_matrix(PatternMatrix(dim, tuple(rows)), order)
