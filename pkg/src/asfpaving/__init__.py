"""Affine Springer fibers in equivalued regular semisimple situations.

Root data, graded representations, coinvariant algebras, Hessenberg
varieties, cell enumeration for the paving, and a finite-field lattice
counting oracle for GL(n).
"""

__version__ = "0.1.0"

from .rootdata import (  # noqa: E402
    AffineWeylElement,
    RootDatum,
    RootDatumError,
    WeylElement,
    WeylGroup,
    build_root_datum,
)
from .repweights import NEG_INF, WeightedRep, adjoint_rep, standard_rep  # noqa: E402
from .coinvariant import CoinvariantEngine, build_engine  # noqa: E402
from .torus import TorusSpec, build_torus, equivalued_admissible  # noqa: E402
from .hessenberg import HessenbergSpec, NegativeRankError, hessenberg_dim, is_empty  # noqa: E402
from .paving import Enumeration, PavingProblem, PavingReport, run_paving  # noqa: E402
from .oracle import compare_with_paving, run_oracle  # noqa: E402

__all__ = [
    "AffineWeylElement",
    "CoinvariantEngine",
    "Enumeration",
    "HessenbergSpec",
    "NEG_INF",
    "NegativeRankError",
    "PavingProblem",
    "PavingReport",
    "RootDatum",
    "RootDatumError",
    "TorusSpec",
    "WeightedRep",
    "WeylElement",
    "WeylGroup",
    "adjoint_rep",
    "build_engine",
    "build_root_datum",
    "build_torus",
    "compare_with_paving",
    "equivalued_admissible",
    "hessenberg_dim",
    "is_empty",
    "run_oracle",
    "run_paving",
    "standard_rep",
]
