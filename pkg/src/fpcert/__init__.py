"""Rigorous fixed-point existence certificates via interval arithmetic."""

from .certify import (
    CERTIFIED,
    INDETERMINATE,
    REFUTED,
    Certificate,
    SingleHoleError,
    UnsupportedDomainError,
    certify_cone_shell,
    certify_cylinder,
    certify_holes,
    certify_miranda,
    certify_problem,
)
from .continuation import ContinuumWitness, trace_continuum
from .degree import (
    BoundaryZeroError,
    DegreeResult,
    degree_1d,
    fixed_point_index,
    winding_degree_2d,
)
from .geometry import (
    AnnulusSpec,
    ConeShellSpec,
    CylinderSpec,
    Face,
    Functional,
    HoledBallSpec,
    RectDomain,
    clamp_projection,
    compressive_to_expansive,
    cone_retraction,
    face,
    flip_coordinates,
    parse_domain,
    shell_homeomorphism,
    shell_homeomorphism_inv,
)
from .interval import (
    Box,
    DegenerateAxisError,
    DimensionMismatchError,
    DomainError,
    Interval,
    IntervalDivisionError,
)
from .localize import (
    Enclosure,
    LocalizeResult,
    NoCrossingError,
    PathSamples,
    extract_crossing_subpath,
    localize_fixed_points,
)
from .mapdsl import (
    EvaluationError,
    MapSpec,
    ParseError,
    UnknownIdentifierError,
    parse_map,
    parse_program,
)

__version__ = "0.1.0"
