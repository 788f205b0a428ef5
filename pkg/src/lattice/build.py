"""Approximation lattices for linear forms in logarithms."""

from typing import List, Sequence, Tuple

from src.analytic.interval import RealInterval
from src.errors import AmbiguousFloorError, DomainError
from src.lattice.basis import LatticeBasis


def scaled_floors(etas: Sequence[RealInterval], C: int) -> List[int]:
    """
    Certified floor(C * eta_i) for each enclosure.

    Raises:
        AmbiguousFloorError: If some C * eta_i enclosure straddles an integer
    """
    floors = []
    for i, eta in enumerate(etas):
        floor = (eta * C).floor()
        if floor is None:
            raise AmbiguousFloorError(i, eta.precision_bits)
        floors.append(floor)
    return floors


def build_lattice(etas: Sequence[RealInterval], C: int) -> Tuple[LatticeBasis, List[int]]:
    """
    Lattice of the linear form sum x_i eta_i scaled by C.

    The matrix is the identity in its first dim - 1 rows and has
    floor(C * eta_i) in its last row.

    Returns:
        (basis, floors)

    Raises:
        DomainError: If fewer than two enclosures or C < 1 are given
        AmbiguousFloorError: If a floor cannot be certified at this precision
    """
    dim = len(etas)
    if dim < 2:
        raise DomainError(f"need at least two logarithms, got {dim}")
    if C < 1:
        raise DomainError(f"scale C must be positive, got {C}")
    floors = scaled_floors(etas, C)
    columns = []
    for j, floor in enumerate(floors):
        column = [0] * dim
        if j < dim - 1:
            column[j] = 1
        column[-1] = floor
        columns.append(column)
    return LatticeBasis.from_columns(columns), floors
