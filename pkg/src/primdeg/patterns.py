"""Zero-pattern tensors and the column-trace decision procedure for primitivity.

A nonnegative tensor of order m and dimension n is represented purely by its
zero pattern: row u keeps the family of index sets {i2, ..., im} (as sets, not
multisets) over its positive cells. Only set containment matters for
primitivity, so each row family is stored as an inclusion-minimal antichain.

The engine iterates, for a start column j, the reachability states

    S_1 = {u : row u has a support contained in {j}},
    S_{k+1} = {u : row u has a support contained in S_k}.

The tensor is j-primitive exactly when some S_k equals the full index set [n],
and the least such k is the column degree gamma_j. The tensor is primitive when
that holds for every column, and its primitive degree gamma is the largest
gamma_j. States evolve deterministically, so every trace either reaches [n],
revisits an earlier state (a certificate that [n] is unreachable), or runs out
of its step budget. For a primitive tensor every column reaches [n] within
(n-1)^2 + 1 steps, which is the default budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .bitsets import IndexSet, SupportFamily, _check_dim
from .digraphs import PatternMatrix


@dataclass(frozen=True)
class PatternTensor:
    """Zero pattern of a nonnegative tensor of order >= 2 on indices 1..dim.

    ``rows[u-1]`` is the antichain of supports appearing in row u. Every stored
    set has between 1 and order-1 members (a support is the set collapse of an
    (order-1)-tuple of indices).
    """

    order: int
    dim: int
    rows: tuple[SupportFamily, ...]

    def __post_init__(self) -> None:
        if self.order < 2:
            raise ValueError(f"order must be >= 2, got {self.order}")
        _check_dim(self.dim)
        if len(self.rows) != self.dim:
            raise ValueError(f"expected {self.dim} rows, got {len(self.rows)}")
        for u, fam in enumerate(self.rows, start=1):
            if fam.dim != self.dim:
                raise ValueError(f"row {u} dimension {fam.dim} does not match {self.dim}")
            if fam.max_set_size() > self.order - 1:
                raise ValueError(
                    f"row {u} holds a support of size {fam.max_set_size()}, "
                    f"limit is order-1 = {self.order - 1}"
                )

    @classmethod
    def from_matrix(cls, matrix: PatternMatrix, order: int) -> "PatternTensor":
        """Monomial tensor view of a matrix: row u holds the singleton {v} for
        every positive entry (u, v). For order 2 this is the matrix itself."""
        rows = tuple(SupportFamily.of_singletons(matrix.dim, r.mask) for r in matrix.rows)
        return cls(order, matrix.dim, rows)

    def row(self, u: int) -> SupportFamily:
        if not 1 <= u <= self.dim:
            raise ValueError(f"row {u} out of range 1..{self.dim}")
        return self.rows[u - 1]


def make_pattern(
    order: int,
    dim: int,
    entries: Iterable[tuple[int, Sequence[int]]],
) -> PatternTensor:
    """Build a PatternTensor from positive cells.

    Each entry is (row, multiset) where ``multiset`` is the (order-1)-tuple of
    trailing indices of a positive cell; it is collapsed to its underlying set
    and inserted into the row's antichain. Duplicate or dominated entries are
    absorbed.
    """
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    _check_dim(dim)
    raw: list[list[int]] = [[] for _ in range(dim)]
    for row, multiset in entries:
        if not 1 <= row <= dim:
            raise ValueError(f"row {row} out of range 1..{dim}")
        if len(multiset) != order - 1:
            raise ValueError(
                f"multiset {tuple(multiset)} has arity {len(multiset)}, expected {order - 1}"
            )
        mask = 0
        for i in multiset:
            if not 1 <= i <= dim:
                raise ValueError(f"index {i} out of range 1..{dim}")
            mask |= 1 << (i - 1)
        raw[row - 1].append(mask)
    rows = tuple(SupportFamily.from_masks(dim, masks) for masks in raw)
    return PatternTensor(order, dim, rows)


def _step_mask(tensor: PatternTensor, state: int) -> int:
    out = 0
    bit = 1
    for fam in tensor.rows:
        if fam.singles & state:
            out |= bit
        else:
            for m in fam.multis:
                if m & state == m:
                    out |= bit
                    break
        bit <<= 1
    return out


def step(tensor: PatternTensor, state: IndexSet) -> IndexSet:
    """One fixpoint step: rows whose family has some support contained in ``state``.

    Monotone in ``state`` and insensitive to antichain minimization of the rows.
    """
    if state.dim != tensor.dim:
        raise ValueError(f"dimension mismatch: state dim {state.dim} vs tensor dim {tensor.dim}")
    return IndexSet(_step_mask(tensor, state.mask), tensor.dim)


def column_states(tensor: PatternTensor, column: int, steps: int) -> tuple[IndexSet, ...]:
    """The raw orbit S_1, ..., S_steps for a start column, with no stopping rule.

    Useful for cross-checking against oracle routes that compute the same
    states by other means; :func:`column_trace` is the terminating variant.
    """
    if not 1 <= column <= tensor.dim:
        raise ValueError(f"column {column} out of range 1..{tensor.dim}")
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    cur = 1 << (column - 1)
    out = []
    for _ in range(steps):
        cur = _step_mask(tensor, cur)
        out.append(IndexSet(cur, tensor.dim))
    return tuple(out)


@dataclass(frozen=True)
class Reached:
    """The trace hit the full set [n] at the recorded step."""

    step: int


@dataclass(frozen=True)
class Cycled:
    """A state repeated before [n] appeared, so [n] is unreachable.

    ``first_repeat_at`` is the step at which the repetition was observed; the
    equal earlier state sits at step ``first_repeat_at - period``. The repeated
    state is included in the trace's state list.
    """

    first_repeat_at: int
    period: int


@dataclass(frozen=True)
class Exhausted:
    """The step budget ran out with neither [n] nor a repeat (possible only
    when the budget is below the number of distinct states)."""

    bound: int


Outcome = Reached | Cycled | Exhausted


@dataclass(frozen=True)
class ColumnTrace:
    """The recorded orbit of one start column together with its outcome.

    ``states[k-1]`` is S_k. The list ends at the step where the outcome fired.
    """

    column: int
    states: tuple[IndexSet, ...]
    outcome: Outcome


def default_bound(dim: int) -> int:
    """Step budget sufficient for any primitive tensor: (dim-1)^2 + 1."""
    return (dim - 1) ** 2 + 1


def column_trace(tensor: PatternTensor, column: int, max_steps: int | None = None) -> ColumnTrace:
    """Run the state iteration for one column until it resolves.

    Stops at the first of: the full set appears (Reached), a state repeats an
    earlier one (Cycled), or ``max_steps`` states have been generated
    (Exhausted). The default budget is (dim-1)^2 + 1, enough to certify
    j-primitivity of any primitive tensor; with that budget an Exhausted
    outcome certifies the tensor as a whole is not primitive.
    """
    if not 1 <= column <= tensor.dim:
        raise ValueError(f"column {column} out of range 1..{tensor.dim}")
    bound = default_bound(tensor.dim) if max_steps is None else max_steps
    if bound < 1:
        raise ValueError(f"max_steps must be >= 1, got {bound}")
    full = (1 << tensor.dim) - 1
    cur = 1 << (column - 1)
    states: list[int] = []
    seen: dict[int, int] = {}
    outcome: Outcome = Exhausted(bound)
    for k in range(1, bound + 1):
        cur = _step_mask(tensor, cur)
        states.append(cur)
        if cur == full:
            outcome = Reached(k)
            break
        if cur in seen:
            outcome = Cycled(first_repeat_at=k, period=k - seen[cur])
            break
        seen[cur] = k
    return ColumnTrace(
        column=column,
        states=tuple(IndexSet(m, tensor.dim) for m in states),
        outcome=outcome,
    )


def gamma_j(tensor: PatternTensor, column: int, max_steps: int | None = None) -> int | None:
    """Column degree: least k with S_k = [n], or None if the trace did not reach it."""
    outcome = column_trace(tensor, column, max_steps).outcome
    return outcome.step if isinstance(outcome, Reached) else None


@dataclass(frozen=True)
class PrimitivityReport:
    """Outcome of a full analysis: verdict, degrees, and per-column certificates.

    ``primitive`` holds exactly when every column trace reached [n] within the
    step budget; ``gamma`` is then the largest column degree. ``bound`` records
    the universal budget (dim-1)^2 + 1 and ``max_steps`` the budget actually
    used, so a caller that lowered it can tell the verdict is budget-relative.
    """

    primitive: bool
    gamma: int | None
    gamma_by_column: tuple[int | None, ...]
    traces: tuple[ColumnTrace, ...]
    bound: int
    max_steps: int


def analyze(tensor: PatternTensor, max_steps: int | None = None) -> PrimitivityReport:
    """Decide primitivity by tracing every column; gamma = max over columns."""
    traces = tuple(
        column_trace(tensor, j, max_steps) for j in range(1, tensor.dim + 1)
    )
    gammas = tuple(
        t.outcome.step if isinstance(t.outcome, Reached) else None for t in traces
    )
    primitive = all(g is not None for g in gammas)
    return PrimitivityReport(
        primitive=primitive,
        gamma=max(gammas) if primitive else None,  # type: ignore[type-var]
        gamma_by_column=gammas,
        traces=traces,
        bound=default_bound(tensor.dim),
        max_steps=default_bound(tensor.dim) if max_steps is None else max_steps,
    )


@dataclass(frozen=True)
class Violation:
    """One failed necessary condition; ``vertex`` is None for the global one."""

    code: str
    vertex: int | None
    detail: str


def check_necessary_conditions(tensor: PatternTensor) -> list[Violation]:
    """Cheap screen on the majorization pattern that primitivity requires.

    In the reversed digraph of the majorization matrix every vertex must have
    an out-arc, no vertex may have only its self-loop, and some vertex must
    have out-degree at least two. Any violation certifies the tensor is not
    primitive; an empty list proves nothing.
    """
    n = tensor.dim
    cols = [0] * n
    for u, fam in enumerate(tensor.rows):
        s = fam.singles
        while s:
            low = s & -s
            cols[low.bit_length() - 1] |= 1 << u
            s ^= low
    violations: list[Violation] = []
    branching = False
    for j in range(1, n + 1):
        col = cols[j - 1]
        if col == 0:
            violations.append(
                Violation("zero-out-degree", j, f"vertex {j} has no out-arc in the reversed digraph")
            )
        elif n > 1 and col == 1 << (j - 1):
            violations.append(
                Violation("self-loop-only", j, f"vertex {j} reaches only itself")
            )
        if bin(col).count("1") >= 2:
            branching = True
    # With a single index the state space collapses and the remaining two
    # conditions stop being necessary: a lone self-loop is already primitive.
    if not branching and n > 1:
        violations.append(
            Violation("no-branching", None, "no vertex has out-degree >= 2 in the reversed digraph")
        )
    return violations


def majorization_pattern(tensor: PatternTensor) -> PatternMatrix:
    """The matrix pattern with (u, j) positive iff cell (u, j, j, ..., j) is.

    Only singleton supports contribute; singletons always survive antichain
    minimization, so this is well defined on the stored representation.
    """
    rows = tuple(IndexSet(fam.singles, tensor.dim) for fam in tensor.rows)
    return PatternMatrix(tensor.dim, rows)
