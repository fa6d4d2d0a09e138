"""Satisfiability in the short-circuit logics FSCL, RPSCL, CSCL, MSCL, SSCL.

Formulas with side-effecting atoms, their short-circuit evaluation trees,
path-based satisfiability under three path disciplines, valuation-algebra
semantics with norm-based witness constructors, and the corresponding axiom
systems.
"""

from .formula_core import (
    Con,
    Const,
    Dis,
    FALSE,
    Formula,
    Lit,
    Neg,
    ParseError,
    TRUE,
    atom_occurrences,
    atoms_of,
    complexity,
    enumerate_formulas,
    expand_abbreviations,
    is_constant_free,
    node_count,
    parse,
    render,
)
from .eval_tree import (
    Branch,
    EvalTree,
    Leaf,
    LeafProfile,
    TreeParseError,
    depth,
    export_dot,
    is_open,
    leaf_profile,
    parse_tree,
    render_tree,
    se,
    substitute,
)
from .paths import (
    EMPTY_PATH,
    PathDiscipline,
    PathParseError,
    ValuationPath,
    check_discipline,
    contract,
    enumerate_paths,
    is_memorizing,
    is_repetition_proof,
    norm,
    parse_path,
    render_path,
    result,
)
from .normal_form import NfClass, classify_nf, normalize
from .valuation_algebras import (
    AlgebraClass,
    CONTRACTIVE,
    FREE,
    FiniteAlgebra,
    FunctionAlgebra,
    MEMORIZING,
    REPETITION_PROOF,
    STATIC,
    StateError,
    ValuationAlgebra,
    build_cva,
    build_sva,
    build_va,
    class_check,
    congruent,
    deriv_formula,
    eval_formula,
    evaluation_path,
    fixture_algebras,
    project_static,
    random_algebra,
)
from .sat_solvers import (
    Logic,
    SatOutcome,
    check_path,
    falsify,
    sat_boolean,
    sat_brute_control,
    sat_brute_force,
    sat_direct,
    sat_open,
    solve,
    verify_witness,
)
from .axiom_suite import (
    AxiomScheme,
    SYSTEMS,
    axiom_table,
    check_fscl_soundness,
    check_model_soundness,
    instantiate,
)

__version__ = "0.1.0"
