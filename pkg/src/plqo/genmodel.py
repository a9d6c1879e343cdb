"""Generic finite-dimensional structures and the witness-to-countermodel
map.

A generic structure over an ordered symbol set B' with declared
incompatible pairs nc and a mass distribution over the valuations of B'
lives in dimension 2^|B'| + 2|nc|: one basis vector per valuation of B'
plus two extra vectors per incompatible pair.  The quantum variable for a
symbol projects onto the valuation vectors satisfying it; on each
incompatible pair's two extra dimensions, the smaller-indexed symbol of
the pair gets the projector onto (|ovl> + |udl>)/sqrt(2) and the larger
gets the projector onto |udl>, which is what makes exactly the declared
pairs non-commuting.  Pairs not involving the symbol contribute the
identity on their block.

The mass normalization is stated as a unit square root of the mass sum,
which is equivalent to the masses summing to one; the latter is what the
spec stores and validates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import MissingSymbol, SpecInvalid, WitnessIncomplete
from .hilbert import (
    Pqv,
    QuantumStructure,
    StateVector,
    mat_mul,
    mat_sub,
)
from .prop import PropSymbol, phi_A_U
from .scalars import C_ONE, C_ZERO, ComplexScalar, RAD_ZERO, RadicalScalar
from .syntax import Assignment, prob_formulas_of
from .translate import (
    NumericVar,
    PairVar,
    ProbVar,
    b_phi,
    constraints_hold,
    eval_rcof,
    q_adams,
    translate_formula,
)


@dataclass(frozen=True)
class GenericModelSpec:
    """symbols: ascending tuple of PropSymbol; nc: frozenset of 2-element
    frozensets over symbols; masses: tuple of 2^|symbols| nonnegative
    rationals summing to 1, indexed by valuation code (bit j of the code
    is the value of the j-th symbol)."""

    symbols: tuple
    nc: frozenset
    masses: tuple

    def __post_init__(self):
        if list(self.symbols) != sorted(set(self.symbols)):
            raise SpecInvalid("symbols must be strictly ascending")
        if len(self.masses) != 1 << len(self.symbols):
            raise SpecInvalid(
                f"need {1 << len(self.symbols)} masses, got {len(self.masses)}"
            )
        if any(m < 0 for m in self.masses):
            raise SpecInvalid("masses must be nonnegative")
        if sum(self.masses, Fraction(0)) != 1:
            raise SpecInvalid("masses must sum to 1")
        base = set(self.symbols)
        for pair in self.nc:
            if len(pair) != 2 or not pair <= base:
                raise SpecInvalid(f"malformed nc pair {sorted(pair)}")

    @staticmethod
    def make(symbols, nc, masses):
        return GenericModelSpec(
            tuple(sorted(set(symbols))),
            frozenset(frozenset(p) for p in nc),
            tuple(Fraction(m) for m in masses),
        )


def _nc_order(spec):
    """Deterministic pair order; pair t occupies coordinates
    2^n + 2t (ovl) and 2^n + 2t + 1 (udl)."""
    return sorted(tuple(sorted(p)) for p in spec.nc)


def valuation_of_code(spec, code):
    return {s: (code >> j) & 1 for j, s in enumerate(spec.symbols)}


def build_generic(spec):
    """The structure I^{B', nc, f} with amplitudes sqrt(mass)."""
    n = len(spec.symbols)
    nc_list = _nc_order(spec)
    dim = (1 << n) + 2 * len(nc_list)
    half = ComplexScalar.real(Fraction(1, 2))

    pqvs = {}
    for j, s in enumerate(spec.symbols):
        m = [[C_ZERO] * dim for _ in range(dim)]
        for k in range(1 << n):
            if (k >> j) & 1:
                m[k][k] = C_ONE
        for t, (lo, hi) in enumerate(nc_list):
            o = (1 << n) + 2 * t
            u = o + 1
            if s == lo:
                m[o][o] = half
                m[o][u] = half
                m[u][o] = half
                m[u][u] = half
            elif s == hi:
                m[u][u] = C_ONE
            else:
                m[o][o] = C_ONE
                m[u][u] = C_ONE
        pqvs[s] = Pqv(tuple(tuple(row) for row in m))

    amps = [ComplexScalar(RadicalScalar.sqrt_of(mass), RAD_ZERO) for mass in spec.masses]
    amps += [C_ZERO] * (2 * len(nc_list))
    state = StateVector(dim, tuple(amps))
    return QuantumStructure(dim, state, pqvs)


def build_observable(spec, symbol):
    """The full observable O_j of the construction: eigenvalue +1 on
    satisfying valuation vectors, -1 on falsifying ones, and the same
    incompatible-pair blocks as the induced projector (their orthogonal
    complements carry eigenvalue 0)."""
    if symbol not in spec.symbols:
        raise MissingSymbol(f"{symbol} is not in the generic base set")
    structure = build_generic(spec)
    proj = structure.pqv(symbol).up_projector
    n = len(spec.symbols)
    j = spec.symbols.index(symbol)
    m = [list(row) for row in proj]
    for k in range(1 << n):
        if not (k >> j) & 1:
            m[k][k] = m[k][k] - C_ONE
    return tuple(tuple(row) for row in m)


def commutator_witness(structure, pair):
    """The exact commutator matrix of the pair's projectors; the zero
    matrix iff the pair is compatible."""
    s1, s2 = tuple(pair) if len(tuple(pair)) == 2 else (tuple(pair)[0],) * 2
    a = structure.pqv(s1).up_projector
    b = structure.pqv(s2).up_projector
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def spec_from_json(doc):
    try:
        symbols = doc["symbols"]
        nc = doc["nc"]
        masses = doc["masses"]
    except KeyError as e:
        raise SpecInvalid(f"generic spec missing field {e.args[0]!r}") from None

    def sym(name):
        if not (isinstance(name, str) and name.startswith("B") and name[1:].isdigit()):
            raise SpecInvalid(f"bad symbol name {name!r}")
        return PropSymbol(int(name[1:]))

    return GenericModelSpec.make(
        [sym(s) for s in symbols],
        [[sym(s) for s in p] for p in nc],
        [Fraction(m) for m in masses],
    )


def spec_to_json(spec):
    return {
        "generic": {
            "symbols": [str(s) for s in spec.symbols],
            "nc": [[str(s) for s in p] for p in _nc_order(spec)],
            "masses": [str(m) for m in spec.masses],
        }
    }


def model_from_witness(phi, witness):
    """Turn a feasible witness of the translated system into a generic
    structure (plus assignment) that satisfies phi exactly when the
    witness satisfies the translation; the equivalence is asserted.

    Returns (structure, assignment, spec).
    """
    base = sorted(b_phi(phi))
    delta = prob_formulas_of(phi)
    if not constraints_hold(q_adams(base, delta), witness):
        raise SpecInvalid("witness does not satisfy the distribution system")

    n = len(base)
    masses = []
    for code in range(1 << n):
        u = frozenset(base[j] for j in range(n) if (code >> j) & 1)
        var = ProbVar.of(phi_A_U(base, u))
        if var not in witness:
            raise WitnessIncomplete(f"witness missing mass variable {var}")
        masses.append(witness[var])
    nc = []
    for s1, s2 in combinations(base, 2):
        if witness.get(PairVar.of(s1, s2), Fraction(0)) > 0:
            nc.append((s1, s2))
    spec = GenericModelSpec.make(base, nc, masses)
    structure = build_generic(spec)
    rho = Assignment(
        {v.k: val for v, val in witness.items() if isinstance(v, NumericVar)}
    )

    from .hilbert import satisfies

    model_truth = satisfies(structure, rho, phi)
    witness_truth = eval_rcof(translate_formula(phi), witness)
    assert model_truth == witness_truth, (
        "witness-to-structure map broke the satisfaction equivalence"
    )
    return structure, rho, spec
