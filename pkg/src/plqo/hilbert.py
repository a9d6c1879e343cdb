"""Finite-dimensional quantum interpretation structures.

A structure carries a unit state vector and, per propositional symbol, a
propositional quantum variable represented by its induced projector.
Compatibility is commutation of projectors; a classical formula is
observable when its essential symbols form a pairwise-compatible family;
probabilities are expectations of ordered projector products summed over
satisfying valuations.

Scalars are exact (ComplexScalar) by default.  Structures loaded from
files with floating-point entries use builtin complex arithmetic with a
tolerance instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    DimMismatch,
    IncompatibleFamily,
    MissingSymbol,
    SpecInvalid,
)
from .prop import (
    PropSymbol,
    all_valuations,
    essential_symbols,
    eval_formula,
    is_tautology,
    conj,
    disj,
    Neg,
)
from .scalars import (
    C_ONE,
    C_ZERO,
    ComplexScalar,
    RadicalScalar,
    coerce_complex,
    parse_radical,
)
from .syntax import EMPTY_ASSIGNMENT, ObsAtom, PImpl, PNeg, ProbAtom, eval_term

DEFAULT_TOL = 1e-9


# -- small exact/float matrix helpers ---------------------------------------


def czero(exact=True):
    return C_ZERO if exact else 0j


def cone(exact=True):
    return C_ONE if exact else 1 + 0j


def identity(n, exact=True):
    z, o = czero(exact), cone(exact)
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_mul(a, b):
    n = len(a)
    m = len(b[0])
    k = len(b)
    bt = tuple(zip(*b))
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * bt[j][0]
            for t in range(1, k):
                acc = acc + a[i][t] * bt[j][t]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a, v):
    out = []
    for row in a:
        acc = row[0] * v[0]
        for x, y in zip(row[1:], v[1:]):
            acc = acc + x * y
        out.append(acc)
    return tuple(out)


def dagger(a):
    return tuple(tuple(x.conjugate() for x in col) for col in zip(*a))


def outer(u, v):
    """|u><v| as a matrix."""
    vc = tuple(x.conjugate() for x in v)
    return tuple(tuple(x * y for y in vc) for x in u)


def inner(u, v):
    """<u|v>."""
    acc = u[0].conjugate() * v[0]
    for x, y in zip(u[1:], v[1:]):
        acc = acc + x.conjugate() * y
    return acc


def scalar_is_zero(x, tol=None):
    if tol is None:
        return x.is_zero()
    return abs(x) <= tol


def matrix_is_zero(a, tol=None):
    return all(scalar_is_zero(x, tol) for row in a for x in row)


def matrices_equal(a, b, tol=None):
    return matrix_is_zero(mat_sub(a, b), tol)


# -- structures --------------------------------------------------------------


@dataclass(frozen=True)
class StateVector:
    dim: int
    amps: tuple
    tol: object = None  # None = exact scalars; a float enables tolerance mode

    def __post_init__(self):
        if len(self.amps) != self.dim:
            raise DimMismatch("state length does not match dim")
        norm = inner(self.amps, self.amps)
        one = cone(self.tol is None)
        if not scalar_is_zero(norm - one, self.tol):
            raise SpecInvalid(f"state vector is not a unit vector (|.|^2 = {norm})")


@dataclass(frozen=True)
class Pqv:
    """A propositional quantum variable, carried by its induced projector."""

    up_projector: tuple
    tol: object = None

    def __post_init__(self):
        m = self.up_projector
        if any(len(row) != len(m) for row in m):
            raise DimMismatch("projector is not square")
        if not matrices_equal(m, dagger(m), self.tol):
            raise SpecInvalid("projector is not Hermitian")
        if not matrices_equal(mat_mul(m, m), m, self.tol):
            raise SpecInvalid("projector is not idempotent")

    @property
    def dim(self):
        return len(self.up_projector)


@dataclass(frozen=True)
class QuantumStructure:
    dim: int
    state: StateVector
    pqvs: dict  # PropSymbol -> Pqv
    tol: object = None

    def __post_init__(self):
        if self.state.dim != self.dim:
            raise DimMismatch("state dimension mismatch")
        for s, p in self.pqvs.items():
            if p.dim != self.dim:
                raise DimMismatch(f"projector for {s} has wrong dimension")

    def pqv(self, symbol):
        try:
            return self.pqvs[symbol]
        except KeyError:
            raise MissingSymbol(f"structure has no quantum variable for {symbol}") from None


def compatible(y1, y2, tol=None):
    """True iff the two induced projectors commute exactly (or within
    ``tol`` in float mode)."""
    if y1.dim != y2.dim:
        raise DimMismatch("projectors of different dimension")
    a, b = y1.up_projector, y2.up_projector
    return matrices_equal(mat_mul(a, b), mat_mul(b, a), tol)


def is_observable(structure, alpha):
    """Whether alpha's essential symbols map to a pairwise-compatible
    family; vacuously true for at most one essential symbol."""
    ess = sorted(essential_symbols(alpha))
    pqvs = [structure.pqv(s) for s in ess]
    for p1, p2 in combinations(pqvs, 2):
        if not compatible(p1, p2, structure.tol):
            return False
    return True


def _projected_mass(structure, symbols, valuation):
    """<psi| Q_k ... Q_1 |psi> with Q_j the projector (or its complement)
    for the j-th symbol in ascending index order, Q_1 applied first."""
    exact = structure.tol is None
    ident = identity(structure.dim, exact)
    vec = structure.state.amps
    for s in symbols:
        p = structure.pqv(s).up_projector
        q = p if valuation[s] else mat_sub(ident, p)
        vec = mat_vec(q, vec)
    return inner(structure.state.amps, vec)


def _as_real(x, tol):
    if tol is None:
        if not x.im.is_zero():
            raise SpecInvalid(f"probability came out non-real: {x}")
        return x.re
    if abs(x.imag) > tol:
        raise SpecInvalid(f"probability came out non-real: {x}")
    return x.real


def prob(structure, alpha, family="full"):
    """Probability of alpha in the structure, summed over the satisfying
    valuations of the symbol family (``full``: every symbol occurring in
    alpha; ``essential``: essential symbols only).  Raises
    IncompatibleFamily if the family's quantum variables are not pairwise
    compatible."""
    if family == "full":
        syms = sorted(alpha.symbols())
    elif family == "essential":
        syms = sorted(essential_symbols(alpha))
    else:
        raise ValueError(f"unknown family mode {family!r}")
    pqvs = [structure.pqv(s) for s in syms]
    for p1, p2 in combinations(pqvs, 2):
        if not compatible(p1, p2, structure.tol):
            raise IncompatibleFamily(
                f"symbol family {[str(s) for s in syms]} is not pairwise compatible"
            )
    # inessential symbols cannot change the truth value, so pad the
    # valuation with zeros for them when the family leaves them out
    padding = {s: 0 for s in alpha.symbols() if s not in syms}
    total = czero(structure.tol is None)
    for v in all_valuations(syms):
        if eval_formula(alpha, v | padding):
            total = total + _projected_mass(structure, syms, v)
    return _as_real(total, structure.tol)


def _prob_compare(structure, p_value, cmp, q):
    if structure.tol is None:
        return p_value.compares(cmp, q)
    if cmp == "=":
        return abs(p_value - float(q)) <= structure.tol
    return p_value < float(q) - structure.tol


def satisfies(structure, rho, phi):
    """The satisfaction relation.  Probability atoms require observability
    of alpha, and the probability is evaluated over the essential symbol
    family (observability guarantees it is defined there)."""
    if isinstance(phi, ObsAtom):
        return is_observable(structure, phi.alpha)
    if isinstance(phi, ProbAtom):
        if not is_observable(structure, phi.alpha):
            return False
        value = prob(structure, phi.alpha, family="essential")
        return _prob_compare(structure, value, phi.cmp, eval_term(phi.term, rho))
    if isinstance(phi, PNeg):
        return not satisfies(structure, rho, phi.child)
    if isinstance(phi, PImpl):
        return (not satisfies(structure, rho, phi.left)) or satisfies(
            structure, rho, phi.right
        )
    raise TypeError(f"not a formula node: {phi!r}")


def adams_check(structure, samples):
    """Check the probability-assignment principles on the given (alpha,
    beta) formula pairs; returns a list of violation descriptions (empty
    means all principles hold).

    P1: 0 <= P(alpha) <= 1.  P2: tautologies have probability 1.
    P3: if alpha classically entails beta then P(alpha) <= P(beta).
    P4: if alpha and beta are exclusive then P(alpha|beta) = P(alpha)+P(beta).
    """
    for p1, p2 in combinations(structure.pqvs.values(), 2):
        if not compatible(p1, p2, structure.tol):
            raise IncompatibleFamily("structure has incompatible quantum variables")

    def close(x, y):
        if structure.tol is None:
            return x == y
        return abs(x - y) <= structure.tol

    def leq(x, y):
        if structure.tol is None:
            return x <= y
        return x <= y + structure.tol

    zero = RadicalScalar.rational(0) if structure.tol is None else 0.0
    one = RadicalScalar.rational(1) if structure.tol is None else 1.0
    violations = []
    for alpha, beta in samples:
        pa = prob(structure, alpha)
        pb = prob(structure, beta)
        for f, pf in ((alpha, pa), (beta, pb)):
            if not (leq(zero, pf) and leq(pf, one)):
                violations.append(f"P1: P({f}) = {pf} out of range")
            if is_tautology(f) and not close(pf, one):
                violations.append(f"P2: P({f}) = {pf} for a tautology")
        if is_tautology(Neg(conj(alpha, Neg(beta)))) and not leq(pa, pb):
            violations.append(f"P3: P({alpha}) > P({beta}) despite entailment")
        if is_tautology(Neg(conj(beta, alpha))):
            por = prob(structure, disj(beta, alpha))
            if not close(por, pb + pa):
                violations.append(
                    f"P4: P({beta} | {alpha}) = {por} but P+P = {pb + pa}"
                )
    return violations


# -- file format -------------------------------------------------------------


def _parse_scalar(raw, exact):
    """One scalar from JSON: rational/radical string or a number."""
    if isinstance(raw, str):
        value = parse_radical(raw)
        return ComplexScalar(value, parse_radical("0")) if exact else float(value)
    if isinstance(raw, (int, float)):
        if exact and isinstance(raw, int):
            return ComplexScalar.real(raw)
        return float(raw)
    raise SpecInvalid(f"not a scalar: {raw!r}")


def _parse_entry(raw, exact):
    """A complex entry: [re, im] pair or a bare real scalar."""
    if isinstance(raw, list):
        if len(raw) != 2:
            raise SpecInvalid(f"complex entry must be a [re, im] pair: {raw!r}")
        re = _parse_scalar(raw[0], exact)
        im = _parse_scalar(raw[1], exact)
        if exact:
            return ComplexScalar(re.re, im.re)
        return complex(re, im)
    value = _parse_scalar(raw, exact)
    return value if exact else complex(value, 0.0)


def _scan_for_floats(node):
    if isinstance(node, float):
        return True
    if isinstance(node, list):
        return any(_scan_for_floats(x) for x in node)
    if isinstance(node, dict):
        return any(_scan_for_floats(x) for x in node.values())
    return False


def _symbol_of(name):
    if not (name.startswith("B") and name[1:].isdigit()):
        raise SpecInvalid(f"bad symbol name {name!r}")
    return PropSymbol(int(name[1:]))


def structure_from_json(doc, tol=None):
    """Build a structure from its JSON document.  Floating-point entries
    force tolerance mode (default tolerance if none was given)."""
    if "generic" in doc:
        from .genmodel import spec_from_json, build_generic

        return build_generic(spec_from_json(doc["generic"]))
    if tol is None and _scan_for_floats(doc):
        tol = DEFAULT_TOL
    exact = tol is None
    try:
        dim = int(doc["dim"])
        state_raw = doc["state"]
        pqvs_raw = doc["pqvs"]
    except KeyError as e:
        raise SpecInvalid(f"structure file missing field {e.args[0]!r}") from None
    amps = tuple(_parse_entry(x, exact) for x in state_raw)
    state = StateVector(dim, amps, tol)
    pqvs = {}
    for name, rows in pqvs_raw.items():
        matrix = tuple(tuple(_parse_entry(x, exact) for x in row) for row in rows)
        pqvs[_symbol_of(name)] = Pqv(matrix, tol)
    return QuantumStructure(dim, state, pqvs, tol)


def load_structure(path, tol=None):
    with open(path) as fh:
        return structure_from_json(json.load(fh), tol)


def load_assignment(path):
    from .syntax import Assignment

    with open(path) as fh:
        doc = json.load(fh)
    numeric = {}
    for key, raw in doc.items():
        if not (key.startswith("x") and key[1:].isdigit()):
            raise SpecInvalid(f"bad assignment variable {key!r}")
        numeric[int(key[1:])] = Fraction(raw)
    return Assignment(numeric)
