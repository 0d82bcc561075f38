"""Finite m-ary groupoids and quasigroups as dense tables, the superposition
operator, and the Hadamard multiary quasigroup product."""

from .core import (
    MultaryOperation,
    all_operations,
    canonical_index,
    evaluate,
    from_index,
    image,
    is_latin_transversal,
    is_quasigroup,
    make_operation,
    projection,
)
from .errors import *  # noqa: F401,F403
from .fixtures import load_fixture, transpose
from .identities import IdentityReport, has_unique_inverses, i_identity_set, identity_set, inverses
from .opfile import parse_operation_file, write_operation_file
from .orthogonality import (
    BijectionReport,
    OperationSet,
    enumerate_ort,
    enumerate_quasigroups,
    is_orthogonal_set,
    ort_contains,
    ort_count,
    solve_for_f,
    transversal_family,
    verify_bijection,
)
from .superposition import (
    LiftedGroupoid,
    constant_map,
    hadamard_product,
    is_distributive_over,
    iterate_hadamard_cycle,
    lift_operation,
    mult_set,
    self_superpose,
    superpose,
    tri_right,
    tri_symmetric,
)
from .terms import App, Var, eval_term, lifted_identity_check, parse_identity, parse_term, satisfies_identity
from .transforms import (
    ConjugationPerm,
    Isotopism,
    apply_isotopism,
    conjugate,
    find_isomorphism,
    is_isomorphism,
    post_compose,
)

__version__ = "0.1.0"
