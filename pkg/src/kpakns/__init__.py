"""Quasi-shuffle algebra identities and their images in the KP and AKNS hierarchies.

Submodules:

* ``scalar``     exact rationals and Q(z), z^2 + z + 1 = 0
* ``qshuffle``   compositions, the products prec / bullet / quasi-shuffle / hat
* ``ncpoly``     noncommutative differential polynomials and rewrite rules
* ``psido``      pseudo-differential operators, Lax tables, Phi_KP
* ``laurent``    lambda-Laurent series, AKNS tables, ell / r / Phi_AKNS
* ``reduction``  V^2 = V and V^3 = I reductions and the extracted PDEs
* ``expr``, ``cases``, ``cli``   expression language and verification runner
"""

from .errors import InsufficientDepth, VerificationError
from .qshuffle import AlgElement, P, bullet, hat_times, prec
from .ncpoly import NCPoly, parse
from .psido import LaxContext, phi_kp
from .laurent import abstract_context, phi_akns
from .cases import CaseConfig, run_case

__version__ = "0.1.0"

__all__ = [
    "AlgElement",
    "CaseConfig",
    "InsufficientDepth",
    "LaxContext",
    "NCPoly",
    "P",
    "VerificationError",
    "abstract_context",
    "bullet",
    "hat_times",
    "parse",
    "phi_akns",
    "phi_kp",
    "prec",
    "run_case",
]
