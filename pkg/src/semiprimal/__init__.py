"""Decision procedures and functor constructions for semi-primal lattice-based algebras."""
from .core import (
    Congruence,
    FiniteAlgebra,
    Homomorphism,
    Signature,
    SubUniverse,
    congruence_generated,
    direct_product,
    enumerate_homomorphisms,
    enumerate_subuniverses,
    find_isomorphism,
    internal_isomorphisms,
    quotient,
    subuniverse_closure,
)
from .lattice import LatticeReduct, derived_unary, detect_lattice

__version__ = "0.1.0"
