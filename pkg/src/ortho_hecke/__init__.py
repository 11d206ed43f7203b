"""Exact computations with Lagrangian K[eps]-submodules and orthogonal Hecke transformations on P^1."""
from .exact_linalg import QQ, Field, Matrix, Subspace
from .dual_module import Ambient, Submodule, make_submodule, module_structure, torsion_degree
from .quad_space import QuadraticSpace, extend_form, hyperbolic_space, is_lagrangian
from .strata import (FlagDatum, SkewDatum, census, lagrangian_from_skew, skew_from_lagrangian,
                     stratum_data, submodule_from_flag)
from .tangent_dual import duality_check, skew_tangent_dim, tangent_dim
from .hecke import SplitOrthogonalBundle, hecke_curve, hecke_orthogonal, hecke_plain
from .suites import SuiteConfig, run_suite

__all__ = [
    "QQ", "Field", "Matrix", "Subspace",
    "Ambient", "Submodule", "make_submodule", "module_structure", "torsion_degree",
    "QuadraticSpace", "extend_form", "hyperbolic_space", "is_lagrangian",
    "FlagDatum", "SkewDatum", "census", "lagrangian_from_skew", "skew_from_lagrangian", "stratum_data",
    "submodule_from_flag",
    "duality_check", "skew_tangent_dim", "tangent_dim",
    "SplitOrthogonalBundle", "hecke_curve", "hecke_orthogonal", "hecke_plain",
    "SuiteConfig", "run_suite",
]
__version__ = "0.1.0"
