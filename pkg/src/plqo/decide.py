"""The top-level decision procedure.

Validity of a formula is decided by negating it, taking the disjunctive
normal form over its atoms, and checking every disjunct against the
distribution system: a disjunct is refutable when every case-split branch
of its literal translations is infeasible together with the system.  If
all disjuncts are refutable the formula is valid and a proof object is
assembled (one RCOF/RR line pair per disjunct, a tautological glue line,
and modus ponens steps); otherwise the first feasible branch's witness is
turned into a verified finite quantum countermodel.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import SchemaPreconditionFailed
from . import prop
from .prop import Impl, Neg, atom as prop_atom, conj as prop_conj, is_tautology
from .syntax import (
    ObsAtom,
    PImpl,
    PNeg,
    PlqoLiteral,
    ProbAtom,
    ONE,
    ZERO,
    is_atom,
    nnf_dnf_literals,
    pconj_all,
    prob_ge,
    prob_formulas_of,
)
from .translate import (
    b_phi,
    q_adams,
    translate_literal,
)
from .lra import feasible
from .genmodel import model_from_witness


# -- RCOF sentences and branch feasibility -----------------------------------


@dataclass(frozen=True)
class RcofSentence:
    """The universally closed implication justifying one RR line: the
    distribution system of the derived implication, joined with the
    premise literals' translations, entails the conclusion literal's
    translation."""

    premise_literals: tuple
    conclusion: PlqoLiteral

    def formula(self):
        """The derived implication itself."""
        concl = self.conclusion.formula()
        if not self.premise_literals:
            return concl
        return PImpl(pconj_all([l.formula() for l in self.premise_literals]), concl)

    def base(self):
        return sorted(b_phi(self.formula()))

    def delta(self):
        return prob_formulas_of(self.formula())

    def q_premise(self):
        return q_adams(self.base(), self.delta())

    def holds(self):
        """Verified by refuting every branch: the premise system plus the
        premise literals plus the conclusion's complement is infeasible
        under every case split."""
        literals = list(self.premise_literals) + [self.conclusion.complement()]
        ok, _ = all_branches_infeasible(self.q_premise(), literals)
        return ok

    def __str__(self):
        q = "Q[" + ",".join(str(s) for s in self.base()) + ";" + ",".join(
            f"({a})" for a in self.delta()
        ) + "]"
        parts = [q] + [f"({l.formula()})^R" for l in self.premise_literals]
        concl = f"({self.conclusion.formula()})^R"
        return f"forall (({' & '.join(parts)}) -> {concl})"


def all_branches_infeasible(q_premise, literals):
    """Case-split each literal's translated disjunction and test every
    combination; returns (True, None) if all are infeasible, otherwise
    (False, witness) for the first feasible branch in deterministic
    order."""
    pools = [translate_literal(lit) for lit in literals]
    for branch in product(*pools):
        cs = list(q_premise)
        for part in branch:
            cs.extend(part)
        result = feasible(cs)
        if result:
            return False, result.witness
    return True, None


# -- proof objects -----------------------------------------------------------


@dataclass(frozen=True)
class ProofLine:
    number: int
    content: object  # PlqoFormula or RcofSentence
    kind: str  # TT | MP | RR | RCOF | HYP
    refs: tuple = ()

    def justification(self):
        if self.kind in ("TT", "RCOF", "HYP"):
            return self.kind
        return f"{self.kind} {','.join(str(r) for r in self.refs)}"

    def render(self):
        return f"{self.number:>3}  {self.content}  [{self.justification()}]"


@dataclass(frozen=True)
class Proof:
    lines: tuple
    hypotheses: tuple = ()

    def conclusion(self):
        return self.lines[-1].content

    def render(self):
        return "\n".join(line.render() for line in self.lines)

    def to_json(self):
        return {
            "hypotheses": [str(h) for h in self.hypotheses],
            "lines": [
                {
                    "n": line.number,
                    "formula": str(line.content),
                    "justification": line.justification(),
                }
                for line in self.lines
            ],
        }


def letters_formula(f, mapping=None):
    """Abstract a formula's atoms into fresh propositional letters, so
    tautology of the skeleton can be decided by truth tables."""
    if mapping is None:
        mapping = {}

    def conv(node):
        if is_atom(node):
            if node not in mapping:
                mapping[node] = prop_atom(len(mapping))
            return mapping[node]
        if isinstance(node, PNeg):
            return Neg(conv(node.child))
        if isinstance(node, PImpl):
            return Impl(conv(node.left), conv(node.right))
        raise TypeError(f"not a formula node: {node!r}")

    return conv(f)


def is_tautological_formula(f):
    return is_tautology(letters_formula(f))


def check_proof(proof):
    """Independent checker: TT lines by truth table over atom letters, MP
    by shape, RR by re-running the side condition's feasibility checks,
    HYP against the declared hypotheses.  Raises AssertionError on any
    bad line."""
    derived = {}
    for line in proof.lines:
        if line.kind == "RCOF":
            assert isinstance(line.content, RcofSentence), "RCOF line is not a sentence"
            assert line.content.holds(), f"side condition fails on line {line.number}"
        elif line.kind == "HYP":
            assert line.content in proof.hypotheses, "undeclared hypothesis"
        elif line.kind == "TT":
            assert is_tautological_formula(line.content), (
                f"TT line {line.number} is not tautological"
            )
        elif line.kind == "RR":
            (ref,) = line.refs
            sent = proof.lines[ref - 1].content
            assert isinstance(sent, RcofSentence), "RR must cite an RCOF line"
            assert sent.formula() == line.content, "RR formula differs from its sentence"
        elif line.kind == "MP":
            minor, major = line.refs
            impl = derived[major]
            assert isinstance(impl, PImpl), "MP major premise is not an implication"
            assert derived[minor] == impl.left, "MP minor premise mismatch"
            assert impl.right == line.content, "MP conclusion mismatch"
        else:
            raise AssertionError(f"unknown justification {line.kind}")
        if line.kind != "RCOF":
            derived[line.number] = line.content
    return True


def _assemble_proof(phi, disjuncts):
    """The completeness-recipe proof of phi, given the refuted disjuncts
    of its negation."""
    lines = []
    c_lines = []
    n = 1
    for lits in disjuncts:
        sent = RcofSentence(tuple(lits[:-1]), lits[-1].complement())
        lines.append(ProofLine(n, sent, "RCOF"))
        c_formula = sent.formula()
        lines.append(ProofLine(n + 1, c_formula, "RR", (n,)))
        c_lines.append((n + 1, c_formula))
        n += 2
    glue = phi
    for _, cf in reversed(c_lines):
        glue = PImpl(cf, glue)
    assert is_tautological_formula(glue), "glue line is not tautological"
    lines.append(ProofLine(n, glue, "TT"))
    major = n
    current = glue
    n += 1
    for cn, _ in c_lines:
        current = current.right
        lines.append(ProofLine(n, current, "MP", (cn, major)))
        major = n
        n += 1
    return Proof(tuple(lines))


# -- verdicts ----------------------------------------------------------------


@dataclass(frozen=True)
class Valid:
    proof: Proof


@dataclass(frozen=True)
class Invalid:
    structure: object
    assignment: object
    spec: object


@dataclass(frozen=True)
class Satisfiable:
    structure: object
    assignment: object
    spec: object


@dataclass(frozen=True)
class Unsatisfiable:
    proof: Proof


def check_valid(phi):
    """Valid(proof) or Invalid(countermodel); the countermodel is
    re-verified to satisfy the negation."""
    negation = PNeg(phi)
    disjuncts = nnf_dnf_literals(negation)
    base = sorted(b_phi(phi))
    delta = prob_formulas_of(phi)
    q_premise = q_adams(base, delta)
    for lits in disjuncts:
        ok, witness = all_branches_infeasible(q_premise, lits)
        if not ok:
            structure, rho, spec = model_from_witness(negation, witness)
            return Invalid(structure, rho, spec)
    proof = _assemble_proof(phi, disjuncts)
    check_proof(proof)
    return Valid(proof)


def check_sat(phi):
    """Satisfiable(model) or Unsatisfiable(proof of the negation)."""
    disjuncts = nnf_dnf_literals(phi)
    base = sorted(b_phi(phi))
    delta = prob_formulas_of(phi)
    q_premise = q_adams(base, delta)
    for lits in disjuncts:
        ok, witness = all_branches_infeasible(q_premise, lits)
        if not ok:
            structure, rho, spec = model_from_witness(phi, witness)
            return Satisfiable(structure, rho, spec)
    verdict = check_valid(PNeg(phi))
    assert isinstance(verdict, Valid), "dual consistency broke"
    return Unsatisfiable(verdict.proof)


def check_entail(gamma, phi):
    """Finite entailment, reduced to validity of the implication."""
    gamma = list(gamma)
    if not gamma:
        return check_valid(phi)
    return check_valid(PImpl(pconj_all(gamma), phi))


def conservativeness_check(alpha):
    """Whether (O alpha) -> (P(alpha) = 1) is valid; coincides with
    classical tautology of alpha."""
    starred = PImpl(ObsAtom(alpha), ProbAtom(alpha, "=", ONE))
    return isinstance(check_valid(starred), Valid)


# -- derivation schemas ------------------------------------------------------


def derive_schema(name, *args):
    if name == "fig1":
        return _schema_obs_equiv(*args)
    if name == "fig2":
        return _schema_prob_nonneg()
    if name == "obs_taut":
        return _schema_obs_verum()
    raise SchemaPreconditionFailed(f"unknown schema {name!r}")


def _schema_obs_equiv(alpha1, alpha2):
    """Seven-line derivation of (O alpha1) <-> (O alpha2) for classically
    equivalent alpha1, alpha2."""
    if not is_tautology(prop.iff(alpha1, alpha2)):
        raise SchemaPreconditionFailed("the two formulas are not classically equivalent")
    o1 = PlqoLiteral(True, ObsAtom(alpha1))
    o2 = PlqoLiteral(True, ObsAtom(alpha2))
    sent12 = RcofSentence((o1,), o2)
    sent21 = RcofSentence((o2,), o1)
    impl12 = sent12.formula()
    impl21 = sent21.formula()
    equiv = pconj_all([impl12, impl21])
    glue = PImpl(impl12, PImpl(impl21, equiv))
    proof = Proof(
        (
            ProofLine(1, sent12, "RCOF"),
            ProofLine(2, impl12, "RR", (1,)),
            ProofLine(3, sent21, "RCOF"),
            ProofLine(4, impl21, "RR", (3,)),
            ProofLine(5, glue, "TT"),
            ProofLine(6, PImpl(impl21, equiv), "MP", (2, 5)),
            ProofLine(7, equiv, "MP", (4, 6)),
        )
    )
    check_proof(proof)
    return proof


def _schema_prob_nonneg():
    """Four-line derivation of P(B1 & B2) >= 0 from the hypothesis
    O(B1 & B2)."""
    alpha = prop_conj(prop_atom(1), prop_atom(2))
    hyp = ObsAtom(alpha)
    concl_lit = PlqoLiteral(False, ProbAtom(alpha, "<", ZERO))
    sent = RcofSentence((PlqoLiteral(True, hyp),), concl_lit)
    impl = sent.formula()
    assert impl.right == prob_ge(alpha, ZERO)
    proof = Proof(
        (
            ProofLine(1, hyp, "HYP"),
            ProofLine(2, sent, "RCOF"),
            ProofLine(3, impl, "RR", (2,)),
            ProofLine(4, impl.right, "MP", (1, 3)),
        ),
        hypotheses=(hyp,),
    )
    check_proof(proof)
    return proof


def _schema_obs_verum():
    """Two-line derivation of O(T): the side condition's premise system
    over the empty base reduces to x_T = 1."""
    lit = PlqoLiteral(True, ObsAtom(prop.VERUM))
    sent = RcofSentence((), lit)
    proof = Proof(
        (
            ProofLine(1, sent, "RCOF"),
            ProofLine(2, sent.formula(), "RR", (1,)),
        )
    )
    check_proof(proof)
    return proof
