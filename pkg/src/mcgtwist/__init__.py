"""mcgtwist: twisted first homology of mapping class groups of
non-orientable surfaces, by exact integer arithmetic.

The pipeline: build the homology representation of the group on
H_1 of the surface (`surface`), form the chain-level cycle lattice and
rewrite group relations into it (`chains`, `catalog`), quotient and name
the surviving classes (`engine`), and certify lower bounds plus compare
against the closed-form answer (`certify`).  `intlin` supplies the exact
linear algebra and `cli` the command-line front end.
"""

from .certify import functionals_for, lower_bound, oracle
from .engine import compute_h1, express_class
from .errors import (
    DescentFailed,
    McgTwistError,
    NoIntegerSolution,
    NotACycle,
    RelationOutsideKernel,
    SpecInvalid,
    UnknownDerived,
    UnknownLetter,
    UnstableSampling,
)
from .surface import SurfaceSpec

__version__ = "1.0.0"

__all__ = [
    "DescentFailed",
    "McgTwistError",
    "NoIntegerSolution",
    "NotACycle",
    "RelationOutsideKernel",
    "SpecInvalid",
    "SurfaceSpec",
    "UnknownDerived",
    "UnknownLetter",
    "UnstableSampling",
    "__version__",
    "compute_h1",
    "express_class",
    "functionals_for",
    "lower_bound",
    "oracle",
]
