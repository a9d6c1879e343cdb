import json
import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from plqo.errors import DimMismatch, IncompatibleFamily, MissingSymbol, SpecInvalid
from plqo.genmodel import GenericModelSpec, build_generic
from plqo.hilbert import (
    Pqv,
    QuantumStructure,
    StateVector,
    adams_check,
    compatible,
    identity,
    is_observable,
    load_structure,
    mat_sub,
    mat_vec,
    inner,
    prob,
    satisfies,
    structure_from_json,
)
from plqo.prop import (
    PropSymbol,
    VERUM,
    all_valuations,
    atom,
    conj,
    disj,
    eval_formula,
    iff,
    Neg,
)
from plqo.scalars import C_ONE, C_ZERO, ComplexScalar, RadicalScalar
from plqo.syntax import (
    EMPTY_ASSIGNMENT,
    ObsAtom,
    PImpl,
    PNeg,
    ProbAtom,
    fraction,
    numeral,
)

from formgen import gen_classical


def diagonal_structure(masses, nsym):
    """nc-free generic structure: diagonal projectors, rational masses."""
    spec = GenericModelSpec.make(
        [PropSymbol(i) for i in range(1, nsym + 1)], [], masses
    )
    return build_generic(spec)


UNIFORM2 = diagonal_structure([Fraction(1, 4)] * 4, 2)


def test_state_vector_must_be_unit():
    with pytest.raises(SpecInvalid):
        StateVector(2, (C_ONE, C_ONE))
    with pytest.raises(DimMismatch):
        StateVector(3, (C_ONE, C_ZERO))


def test_pqv_must_be_projector():
    not_idempotent = ((C_ONE, C_ONE), (C_ONE, C_ONE))
    with pytest.raises(SpecInvalid):
        Pqv(not_idempotent)
    half = ComplexScalar.real(Fraction(1, 2))
    i_half = ComplexScalar(RadicalScalar.rational(0), RadicalScalar.rational(Fraction(1, 2)))
    not_hermitian = ((half, i_half), (i_half, half))
    with pytest.raises(SpecInvalid):
        Pqv(not_hermitian)
    # a genuine rank-1 projector onto (1,1)/sqrt(2)
    ok = Pqv(((half, half), (half, half)))
    assert ok.dim == 2


def test_compatible_trivia():
    p = UNIFORM2.pqv(PropSymbol(1))
    q = UNIFORM2.pqv(PropSymbol(2))
    assert compatible(p, p)
    assert compatible(p, q)
    with pytest.raises(DimMismatch):
        compatible(p, Pqv(((C_ONE,),)))


def test_is_observable_verum_and_singletons():
    assert is_observable(UNIFORM2, VERUM)
    assert is_observable(UNIFORM2, atom(1))
    assert is_observable(UNIFORM2, conj(atom(1), atom(2)))
    with pytest.raises(MissingSymbol):
        is_observable(UNIFORM2, atom(9))


def test_prob_basics():
    assert prob(UNIFORM2, VERUM) == RadicalScalar.rational(1)
    assert prob(UNIFORM2, conj(atom(1), Neg(atom(1)))) == RadicalScalar.rational(0)
    assert prob(UNIFORM2, atom(1)) == RadicalScalar.rational(Fraction(1, 2))
    assert prob(UNIFORM2, conj(atom(1), atom(2))) == RadicalScalar.rational(Fraction(1, 4))


def test_prob_uniform_single_symbol():
    s = diagonal_structure([Fraction(1, 2), Fraction(1, 2)], 1)
    assert prob(s, atom(1)) == RadicalScalar.rational(Fraction(1, 2))


def test_prob_incompatible_family_errors():
    spec = GenericModelSpec.make(
        [PropSymbol(1), PropSymbol(2)],
        [[PropSymbol(1), PropSymbol(2)]],
        [Fraction(1, 4)] * 4,
    )
    s = build_generic(spec)
    with pytest.raises(IncompatibleFamily):
        prob(s, conj(atom(1), atom(2)))


def test_prob_essential_vs_full_family():
    """An inessential symbol with an incompatible projector: the default
    satisfaction mode still evaluates over the essential family."""
    spec = GenericModelSpec.make(
        [PropSymbol(1), PropSymbol(2)],
        [[PropSymbol(1), PropSymbol(2)]],
        [Fraction(1, 2), Fraction(1, 2), Fraction(0), Fraction(0)],
    )
    s = build_generic(spec)
    # B1 & (B2 | !B2) mentions B2 but B2 is inessential
    alpha = conj(atom(1), disj(atom(2), Neg(atom(2))))
    with pytest.raises(IncompatibleFamily):
        prob(s, alpha, family="full")
    assert prob(s, alpha, family="essential") == RadicalScalar.rational(Fraction(1, 2))
    assert satisfies(
        s, EMPTY_ASSIGNMENT, ProbAtom(alpha, "=", fraction(1, 2))
    )


def test_partition_property():
    base = [PropSymbol(1), PropSymbol(2)]
    total = RadicalScalar.rational(0)
    for v in all_valuations(base):
        from plqo.prop import phi_A_U

        u = frozenset(s for s in base if v[s])
        total = total + prob(UNIFORM2, phi_A_U(base, u))
    assert total == RadicalScalar.rational(1)


def test_prob_order_independence():
    s = diagonal_structure([Fraction(k, 28) for k in (1, 2, 3, 4, 5, 6, 0, 7)], 3)
    base = [PropSymbol(1), PropSymbol(2), PropSymbol(3)]
    alpha = disj(conj(atom(1), atom(2)), atom(3))
    reference = prob(s, alpha)
    # permuting the product order leaves the value unchanged
    for perm in permutations(base):
        total = C_ZERO
        for v in all_valuations(base):
            if eval_formula(alpha, v):
                ident = identity(s.dim)
                vec = s.state.amps
                for sym in perm:
                    p = s.pqv(sym).up_projector
                    q = p if v[sym] else mat_sub(ident, p)
                    vec = mat_vec(q, vec)
                total = total + inner(s.state.amps, vec)
        assert total.im.is_zero() and total.re == reference


def test_prob_depends_only_on_truth_table():
    rng = random.Random(61)
    for _ in range(30):
        f = gen_classical(rng, [1, 2], rng.randint(1, 3))
        g = Neg(Neg(f))
        if f.symbols() == g.symbols():
            assert prob(UNIFORM2, f) == prob(UNIFORM2, g)


def test_complementarity():
    rng = random.Random(67)
    one = RadicalScalar.rational(1)
    for _ in range(30):
        f = gen_classical(rng, [1, 2], rng.randint(0, 3))
        assert prob(UNIFORM2, f) + prob(UNIFORM2, Neg(f)) == one


def test_satisfies_connectives_and_abbreviation():
    phi = ObsAtom(atom(1))
    assert satisfies(UNIFORM2, EMPTY_ASSIGNMENT, phi)
    assert not satisfies(UNIFORM2, EMPTY_ASSIGNMENT, PNeg(phi))
    # !psi is semantically the same as psi -> (P(T) < 1)
    falsum = ProbAtom(VERUM, "<", numeral(1))
    rng = random.Random(71)
    from formgen import gen_plqo

    for _ in range(40):
        psi = gen_plqo(rng, [1, 2], rng.randint(0, 2))
        assert satisfies(UNIFORM2, EMPTY_ASSIGNMENT, PNeg(psi)) == satisfies(
            UNIFORM2, EMPTY_ASSIGNMENT, PImpl(psi, falsum)
        )


def test_prob_atom_requires_observability():
    spec = GenericModelSpec.make(
        [PropSymbol(1), PropSymbol(2)],
        [[PropSymbol(1), PropSymbol(2)]],
        [Fraction(1, 4)] * 4,
    )
    s = build_generic(spec)
    alpha = conj(atom(1), atom(2))
    assert not satisfies(s, EMPTY_ASSIGNMENT, ObsAtom(alpha))
    # any probability claim on an unobservable formula is false
    for cmp, q in (("=", fraction(1, 4)), ("<", numeral(2))):
        assert not satisfies(s, EMPTY_ASSIGNMENT, ProbAtom(alpha, cmp, q))


def test_adams_principles_on_diagonal_structures():
    rng = random.Random(73)
    s = diagonal_structure([Fraction(k, 10) for k in (1, 2, 3, 4)], 2)
    samples = []
    for _ in range(25):
        samples.append(
            (gen_classical(rng, [1, 2], rng.randint(0, 3)),
             gen_classical(rng, [1, 2], rng.randint(0, 3)))
        )
    samples.append((VERUM, VERUM))
    samples.append((atom(1), Neg(atom(1))))
    samples.append((conj(atom(1), atom(2)), atom(1)))
    assert adams_check(s, samples) == []


def test_adams_check_requires_compatibility():
    spec = GenericModelSpec.make(
        [PropSymbol(1), PropSymbol(2)],
        [[PropSymbol(1), PropSymbol(2)]],
        [Fraction(1, 4)] * 4,
    )
    with pytest.raises(IncompatibleFamily):
        adams_check(build_generic(spec), [(VERUM, VERUM)])


# -- file format --------------------------------------------------------------


def test_structure_json_exact():
    doc = {
        "dim": 2,
        "state": ["1/2*sqrt(2)", "1/2*sqrt(2)"],
        "pqvs": {"B1": [["1", "0"], ["0", "0"]]},
    }
    s = structure_from_json(doc)
    assert s.tol is None
    assert prob(s, atom(1)) == RadicalScalar.rational(Fraction(1, 2))


def test_structure_json_complex_pairs():
    doc = {
        "dim": 2,
        "state": [["0", "1/2*sqrt(2)"], ["1/2*sqrt(2)", "0"]],
        "pqvs": {"B1": [["0", "0"], ["0", "1"]]},
    }
    s = structure_from_json(doc)
    assert prob(s, atom(1)) == RadicalScalar.rational(Fraction(1, 2))


def test_structure_json_float_mode():
    doc = {
        "dim": 2,
        "state": [0.7071067811865476, 0.7071067811865476],
        "pqvs": {"B1": [[1.0, 0.0], [0.0, 0.0]]},
    }
    s = structure_from_json(doc)
    assert s.tol is not None
    assert abs(prob(s, atom(1)) - 0.5) < 1e-9
    assert satisfies(s, EMPTY_ASSIGNMENT, ProbAtom(atom(1), "=", fraction(1, 2)))


def test_structure_json_generic_shorthand(tmp_path):
    doc = {
        "generic": {
            "symbols": ["B1"],
            "nc": [],
            "masses": ["1/2", "1/2"],
        }
    }
    path = tmp_path / "m.json"
    path.write_text(json.dumps(doc))
    s = load_structure(path)
    assert prob(s, atom(1)) == RadicalScalar.rational(Fraction(1, 2))


def test_structure_json_rejects_garbage():
    with pytest.raises(SpecInvalid):
        structure_from_json({"dim": 1, "state": ["1"], "pqvs": {"Q1": [["1"]]}})
    with pytest.raises(SpecInvalid):
        structure_from_json({"state": ["1"], "pqvs": {}})
