"""Continuous and axes closure of primary monomial ideals, with exact certificates."""

__version__ = "0.1.0"

from .poly import DimensionError, MonomialIdeal, NotPrimaryError, Polynomial  # noqa: E402
from .grammar import ParseError, parse_ideal, parse_polynomial  # noqa: E402
from .newton import (  # noqa: E402
    NewtonPolyhedron, PointLocation, PowerWitness, build_polyhedron, closure_generators,
    locate, power_witness, supporting_normal,
)
from .axes import AxesElement, CanonicalAxesIdeal, canonical_form, ideal_membership  # noqa: E402
from .closure import (  # noqa: E402
    Verdict, equal_degree_membership, monomial_membership, principal_lattice_points,
    verify_power_representation,
)
from .witness import WitnessReport, homogeneous_witness, phi_probe, psi_witness  # noqa: E402

__all__ = [
    "__version__", "DimensionError", "MonomialIdeal", "NotPrimaryError", "Polynomial",
    "ParseError", "parse_ideal", "parse_polynomial", "NewtonPolyhedron", "PointLocation",
    "PowerWitness", "build_polyhedron", "closure_generators", "locate", "power_witness",
    "supporting_normal", "AxesElement", "CanonicalAxesIdeal", "canonical_form", "ideal_membership",
    "Verdict", "equal_degree_membership", "monomial_membership", "principal_lattice_points",
    "verify_power_representation", "WitnessReport", "homogeneous_witness", "phi_probe", "psi_witness",
]
