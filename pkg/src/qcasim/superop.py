"""Superoperators over exact rationals and their action on unconditional states.

A superoperator is a finite list of operation elements E_1..E_r whose
adjoint-products sum to the identity (the completeness condition
sum_i E_i^T E_i = I).  Applying one to a register state splits the state into
one branch per element; the squared norm of a branch is its probability, and
branches are kept *unconditional* (never normalized) so everything stays
rational.  Several elements may share one outcome label: the machine then
reacts to the label while the branch bookkeeping stays element-level.  That
freedom is what lets a reset-then-operate step or a rational Bernoulli coin be
expressed as a single valid superoperator.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import (
    DimensionError,
    ONE,
    RMat,
    RVec,
    Rat,
    ZERO,
    gram_sum,
    identity,
    norm_sq,
    mat_apply,
    mat_mul,
    rat_sqrt,
    scale_vec,
)


class DegenerateBranchError(ValueError):
    """Normalization of a zero-probability branch was requested."""


@dataclass(frozen=True)
class QuantumState:
    """An unconditional register vector; its squared norm is the branch probability."""

    vector: RVec

    @property
    def dim(self) -> int:
        return len(self.vector)

    @property
    def norm_sq(self) -> Rat:
        return norm_sq(self.vector)

    def normalize(self) -> tuple[Rat, RVec]:
        """Split into (squared norm, direction).

        The direction has unit squared norm whenever the scaling factor is
        rational; otherwise the raw vector is returned alongside its squared
        norm (unit-normalizing it would require an irrational square root).
        """
        p = self.norm_sq
        if p == 0:
            raise DegenerateBranchError("cannot normalize a zero branch")
        root = rat_sqrt(p)
        if root is None:
            return p, self.vector
        return p, scale_vec(ONE / root, self.vector)


@dataclass(frozen=True)
class OutcomeBranch:
    label: str
    state: QuantumState
    probability: Rat


@dataclass(frozen=True)
class OutcomeDistribution:
    """One branch per operation element; probabilities sum to the input's squared norm."""

    branches: tuple[OutcomeBranch, ...]

    @property
    def total(self) -> Rat:
        return sum(b.probability for b in self.branches)

    def label_probability(self, label: str) -> Rat:
        return sum(b.probability for b in self.branches if b.label == label)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the completeness check; failures use 1-indexed (row, col, actual value)."""

    ok: bool
    dim: int
    failures: tuple[tuple[int, int, Rat], ...] = ()

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        cells = ", ".join(f"({i},{j})={v}" for i, j, v in self.failures)
        return f"completeness violated at {cells}"


@dataclass(frozen=True)
class Superoperator:
    """Ordered operation elements with outcome labels (labels may repeat)."""

    elements: tuple[tuple[str, RMat], ...]

    def __post_init__(self) -> None:
        if not self.elements:
            raise DimensionError("superoperator needs at least one operation element")
        d = len(self.elements[0][1])
        if any(len(m) != d or any(len(row) != d for row in m) for _, m in self.elements):
            raise DimensionError("operation elements must be square matrices of one dimension")

    @property
    def dim(self) -> int:
        return len(self.elements[0][1])

    @property
    def labels(self) -> tuple[str, ...]:
        seen: list[str] = []
        for label, _ in self.elements:
            if label not in seen:
                seen.append(label)
        return tuple(seen)


def validate(op: Superoperator) -> ValidationReport:
    """Check the completeness condition exactly; report offending entries."""
    total = gram_sum([m for _, m in op.elements])
    expected = identity(op.dim)
    failures = tuple(
        (i + 1, j + 1, total[i][j])
        for i in range(op.dim)
        for j in range(op.dim)
        if total[i][j] != expected[i][j]
    )
    return ValidationReport(ok=not failures, dim=op.dim, failures=failures)


def apply(op: Superoperator, state: QuantumState) -> OutcomeDistribution:
    """Split a state into unconditional branches, one per operation element."""
    if op.dim != state.dim:
        raise DimensionError(f"operator dimension {op.dim} != state dimension {state.dim}")
    branches = []
    for label, matrix in op.elements:
        vec = mat_apply(matrix, state.vector)
        branches.append(OutcomeBranch(label, QuantumState(vec), norm_sq(vec)))
    return OutcomeDistribution(tuple(branches))


def initialize(basis_index: int, dim: int) -> QuantumState:
    """Unit basis vector |basis_index> in a dim-dimensional register."""
    if not 0 <= basis_index < dim:
        raise IndexError(f"basis index {basis_index} out of range for dimension {dim}")
    return QuantumState(tuple(ONE if i == basis_index else ZERO for i in range(dim)))


def reset_op(dim: int, target: int = 0, label: str = "done") -> Superoperator:
    """The single-outcome initialize operator: every input collapses to |target>.

    Built from the elements |target><j| for all j; their adjoint-products sum
    to the identity, and every branch of every input is proportional to
    |target>, so observing the one label leaves the register freshly prepared.
    """
    if not 0 <= target < dim:
        raise IndexError(f"target index {target} out of range for dimension {dim}")
    elements = []
    for j in range(dim):
        m = tuple(
            tuple(ONE if (i == target and c == j) else ZERO for c in range(dim))
            for i in range(dim)
        )
        elements.append((label, m))
    return Superoperator(tuple(elements))


def reset_then(op: Superoperator, target: int = 0) -> Superoperator:
    """Compose op with a register reset to |target| in a single valid superoperator.

    Elements are E_i |target><j| carrying E_i's label, so one tape step can
    re-initialize the register and immediately feed it a symbol.  Completeness
    of the composite follows from completeness of op.
    """
    init = reset_op(op.dim, target)
    elements = []
    for label, m in op.elements:
        for _, p in init.elements:
            elements.append((label, mat_mul(m, p)))
    return Superoperator(tuple(elements))


def identity_op(dim: int, label: str = "go") -> Superoperator:
    """Single-outcome identity; used by steps that leave the register alone."""
    return Superoperator(((label, identity(dim)),))
