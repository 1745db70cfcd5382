"""Exact periodic trajectories on the double pentagon and in the pentagon
billiard: directions, periods, symbolic orbits, and a geometric oracle.
"""

from .directions import (
    BOTTOM,
    DirectionIndex,
    coordinate_of_index,
    index_of_coordinate,
    neighbor_family,
    pentagons_to_depth,
)
from .golden import GoldenNum, INFINITY, MoebiusMap, PentaNum, ProjectivePoint, R_MAP, T_MAP
from .orbits import (
    CyclicWord,
    OrbitVector,
    apply_L,
    check_M,
    enhance,
    orbit_of_index,
    reduce_word,
    roman_of_arabic,
    rotate_alphabet,
    vector_of,
)
from .periods import PeriodPair, arithmetic_family_check, child_periods, period_of_index
from .tracer import (
    IETSpec,
    PlanePoint,
    TraceResult,
    direction_of_coordinate,
    direction_of_vector,
    iet_build,
    iet_orbit,
    periodic_orbits_for_coordinate,
    trace_billiard,
    trace_surface,
)
from .analysis import (
    billiard_multiplier,
    check_conjecture_concat,
    check_conjecture_splitting,
    displacement,
    length_report,
)

__version__ = "0.1.0"
