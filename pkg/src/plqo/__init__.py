"""Probabilistic logic of quantum observations: parsing, decision
procedure with proof objects and verified countermodels, exact quantum
semantics."""

from .prop import (
    Atom,
    Impl,
    Neg,
    PropSymbol,
    Verum,
    VERUM,
    FALSUM,
    anf,
    atom,
    conj,
    disj,
    essential_symbols,
    iff,
    is_tautology,
    phi_A_U,
    print_prop,
)
from .syntax import (
    Assignment,
    ObsAtom,
    PImpl,
    PNeg,
    ProbAtom,
    eval_term,
    pconj,
    pdisj,
    piff,
    prob_ge,
    prob_gt,
    prob_le,
    term_of_fraction,
)
from .parser import parse_classical, parse_plqo, parse_term, print_plqo, print_term
from .translate import q_adams, q_obs, translate_atom, translate_formula, translate_literal
from .lra import Feasible, Infeasible, check_implication, feasible
from .hilbert import (
    Pqv,
    QuantumStructure,
    StateVector,
    adams_check,
    compatible,
    is_observable,
    load_structure,
    prob,
    satisfies,
    structure_from_json,
)
from .genmodel import (
    GenericModelSpec,
    build_generic,
    commutator_witness,
    model_from_witness,
)
from .decide import (
    Invalid,
    Proof,
    Satisfiable,
    Unsatisfiable,
    Valid,
    check_entail,
    check_proof,
    check_sat,
    check_valid,
    conservativeness_check,
    derive_schema,
)

__version__ = "0.1.0"
