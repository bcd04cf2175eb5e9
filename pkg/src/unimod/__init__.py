"""Exact certificates for unimodular rows, alternating forms and Witt residues
over finitely presented rational algebras."""

from .cycles import FramedCycle, boundary_along, differential_check, transport_cycle
from .errors import *  # noqa: F401,F403
from .forms import (
    FramedAlternatingForm,
    FramedModule,
    IsometryCertificate,
    construct_qv,
    decomposition_certificate,
    euler_form,
    hyperbolic,
    symplectic_class,
    verify_isometry,
)
from .groebner import GroebnerBasis, buchberger, lift_membership, nf
from .linalg import (
    MatrixOverRing,
    UnimodularRow,
    apply_transvections,
    check_unimodular,
    det,
    is_symplectic,
    verify_orbit_certificate,
)
from .parsing import parse_expression
from .poly import Polynomial
from .rings import PresentedRing, RingElement, RingHom, define_hom, localize, present_ring
from .scenarios import run_scenario
from .session import Session, load_session, save_session
from .witt import (
    COMPLEX,
    REAL,
    Component,
    KoszulSymbol,
    PresentedField,
    SquareWitness,
    residue_at,
    transition_matrix,
    verify_square_class,
)

__version__ = "0.1.0"
