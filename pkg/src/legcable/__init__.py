"""Legendrian cable links in S^3 and torus knots in J^1(S^1).

Front diagrams with exact invariants, realizable invariant ranges, isotopy
decisions with destabilization witnesses, explicit constructions, and
numerical checks of the contactomorphism J^1(S^1) -> S^3 minus K0.
"""

from .classify import DestabilizationWitness, Outcome, Verdict, classify_cable, destabilization_witness, peak_identification
from .construct import ConstructionSpec, Family, construct
from .errors import (
    CurvesIntersect, FloorTooShallow, InvalidDiagram, LegcableError, NonCoprime, NotNormalized,
    NotRealizable, OutOfDomain, TemplateMismatch, Unsupported,
)
from .fronts import (
    Ambient, FrontComponent, FrontDiagram, classical_invariants, crossings, cusps, linking_number,
    stabilize, validate, writhe,
)
from .geometry import GeometryReport, gauss_linking, map_f, stereographic, verify_geometry
from .jet import (
    JetKnotInvariants, TransverseInvariants, classify_jet, jet_max_tb, jet_mountain_range,
    jet_to_sphere, normalize_jet, sphere_to_jet, transverse_range, transverse_realizable,
    transverse_realizable_and_classify,
)
from .ranges import (
    Case, LinkInvariants, MountainRange, Peak, case_of, max_tb2, mountain_range, normalize, peaks,
    realizable,
)

__version__ = "0.1.0"
