"""Exception hierarchy shared across the package.

Every error carries the CLI exit code it maps to: 1 for semantically
invalid inputs or verdicts, 2 for resource limits, 3 for malformed input
files (argument parsing itself is handled by argparse).
"""


class WalkcolorError(Exception):
    exit_code = 1


class InvalidPosetError(WalkcolorError):
    """Relation fails reflexivity, antisymmetry, or transitivity."""

    exit_code = 3


class CycleInCoverRelations(WalkcolorError):
    """Transitive closure of the cover relations violates antisymmetry."""

    exit_code = 3


class AntichainLimitExceeded(WalkcolorError):
    """More antichains exist than the caller's materialization cap."""

    exit_code = 2


class SizeLimitExceeded(WalkcolorError):
    """An exact solver was asked to exceed its configured bound."""

    exit_code = 2


class NotALattice(WalkcolorError):
    """Some pair of elements lacks a join or a meet."""


class NotDistributive(NotALattice):
    """Lattice whose join-irreducible representation fails to embed."""


class InvalidGraphError(WalkcolorError):
    """Digraph data contains loops, duplicates, or out-of-range ids."""

    exit_code = 3


class MalformedColoringError(WalkcolorError):
    """Walk-coloring data does not parse against its graph and poset."""

    exit_code = 3


class NotProperColoring(WalkcolorError):
    """Adjacent vertices share a color where distinct ones are required."""


class MissingColor(WalkcolorError):
    """A walk coloring is not total over the walks of its graph."""


class InvalidInputColoring(WalkcolorError):
    """A transform received a coloring that is not valid for its poset."""


class InvalidRepresentation(WalkcolorError):
    """Set representation is not an order embedding."""


class PreconditionFailed(WalkcolorError):
    """An operation's structural precondition does not hold."""


class BudgetViolated(WalkcolorError):
    """A bounded-run edge coloring exceeds some per-color length budget."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DomainCollision(WalkcolorError):
    """Internal invariant of the symmetry-breaking step was violated."""
