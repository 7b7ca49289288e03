"""Finite risandles: right quasigroups, groups, presentations and diagram colorings."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .quasigroup import (
    AxiomReport,
    FiniteRightQuasigroup,
    PermutationGroup,
    canonical_form,
    check_axioms,
    closure,
    compose,
    constant_action,
    count_homomorphisms,
    direct_product,
    enumerate_risacks,
    enumerate_risandles,
    find_isomorphism,
    from_table,
    from_translations,
    invert,
    is_faithful,
    is_homomorphism,
    is_risandle,
    iter_homomorphisms,
    iter_right_quasigroups,
    relabel,
    right_identities,
    rmult_group,
    subrisandle_generated,
    substructure,
    table_from_json,
    table_to_json,
    trivial_quandle,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    are_isomorphic,
    cyclic_group,
    describe_group,
    dihedral_group,
    direct_product_group,
    effective_hom_exists,
    enumerate_group_homs,
    find_group_isomorphism,
    group_from_json,
    group_from_table,
    group_to_json,
    is_effective_hom,
    iter_group_homs,
    l_of_faithful,
    make_group,
    normal_closure,
    permutation_group_to_group,
    quaternion_group,
    r_of_group,
    symmetric_group,
)
from .todd_coxeter import CosetEnumeration, GroupPresentation, evaluate_word, free_reduce, todd_coxeter
from .words import (
    Apply,
    CongruenceClosure,
    EqualityVerdict,
    FreeGroupElt,
    Gen,
    Verdict,
    Word,
    format_word,
    gamma,
    one_gen_normal_form,
    orbit_signature,
    parse_word,
    rewrite_close,
    s,
    s_power,
    si,
    words_equal,
    x,
)
from .presentations import (
    MethodAgreement,
    Pi1Report,
    QuotientResult,
    QuotientStatus,
    RisandlePresentation,
    check_pi1_conditions,
    evaluate,
    finite_quotient,
    l_presentation,
    lens_presentation,
)
from .diagram import (
    ColoringCount,
    Crossing,
    VirtualDiagram,
    count_colorings,
    eliminate_generators,
    format_diagram,
    fundamental_presentation,
    is_coloring,
    iter_colorings,
    lens_diagram,
    parse_diagram,
)
