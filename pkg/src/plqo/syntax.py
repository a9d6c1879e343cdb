"""Abstract syntax for the observation logic: ordered-field terms,
formulas over observability and probability atoms, literals, and the
NNF/DNF machinery used by the decision procedure."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceeded
from .prop import PropFormula

DEFAULT_ATOM_BUDGET = 16


# -- terms -------------------------------------------------------------------


class RcofTerm:
    __slots__ = ()

    def __add__(self, other):
        return Add(self, other)

    def __mul__(self, other):
        return Mul(self, other)

    def __neg__(self):
        return TNeg(self)

    def __str__(self):
        from .parser import print_term

        return print_term(self)

    def __repr__(self):
        return f"<RcofTerm {self}>"


@dataclass(frozen=True, repr=False)
class Zero(RcofTerm):
    __slots__ = ()


@dataclass(frozen=True, repr=False)
class One(RcofTerm):
    __slots__ = ()


@dataclass(frozen=True, repr=False)
class NumVar(RcofTerm):
    __slots__ = ("k",)
    k: int


@dataclass(frozen=True, repr=False)
class TNeg(RcofTerm):
    __slots__ = ("child",)
    child: RcofTerm


@dataclass(frozen=True, repr=False)
class Add(RcofTerm):
    __slots__ = ("left", "right")
    left: RcofTerm
    right: RcofTerm


@dataclass(frozen=True, repr=False)
class Mul(RcofTerm):
    __slots__ = ("left", "right")
    left: RcofTerm
    right: RcofTerm


@dataclass(frozen=True, repr=False)
class InvNumeral(RcofTerm):
    """The multiplicative inverse of a positive integer numeral."""

    __slots__ = ("m",)
    m: int

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError("inverse-numeral denominator must be positive")


ZERO = Zero()
ONE = One()


def numeral(m):
    """The canonical numeral term for a nonnegative integer."""
    if m < 0:
        raise ValueError("numerals are nonnegative; wrap in TNeg for negatives")
    if m == 0:
        return ZERO
    out = ONE
    for _ in range(m - 1):
        out = Add(out, ONE)
    return out


def match_numeral(t):
    """Inverse of :func:`numeral`; None if ``t`` is not canonical."""
    if isinstance(t, Zero):
        return 0
    n = 0
    while isinstance(t, Add) and isinstance(t.right, One):
        n += 1
        t = t.left
    if isinstance(t, One):
        return n + 1
    return None


def fraction(n, m):
    """The term n/m, built as the inverse numeral of m times the numeral n."""
    return Mul(InvNumeral(m), numeral(n))


def term_of_fraction(q):
    """Canonical closed term denoting the rational ``q``."""
    q = Fraction(q)
    mag = numeral(abs(q.numerator)) if q.denominator == 1 else fraction(
        abs(q.numerator), q.denominator
    )
    return TNeg(mag) if q < 0 else mag


def closed(t):
    if isinstance(t, NumVar):
        return False
    if isinstance(t, TNeg):
        return closed(t.child)
    if isinstance(t, (Add, Mul)):
        return closed(t.left) and closed(t.right)
    return True


@dataclass(frozen=True)
class Assignment:
    """Rational values for the numeric variables; unmentioned default to 0."""

    numeric: dict

    def __init__(self, numeric=None):
        object.__setattr__(
            self,
            "numeric",
            {int(k): Fraction(v) for k, v in (numeric or {}).items()},
        )

    def value(self, k):
        return self.numeric.get(k, Fraction(0))


EMPTY_ASSIGNMENT = Assignment()


def eval_term(t, rho=EMPTY_ASSIGNMENT):
    """Exact rational denotation of ``t`` under assignment ``rho``."""
    if isinstance(t, Zero):
        return Fraction(0)
    if isinstance(t, One):
        return Fraction(1)
    if isinstance(t, NumVar):
        return rho.value(t.k)
    if isinstance(t, TNeg):
        return -eval_term(t.child, rho)
    if isinstance(t, Add):
        return eval_term(t.left, rho) + eval_term(t.right, rho)
    if isinstance(t, Mul):
        return eval_term(t.left, rho) * eval_term(t.right, rho)
    if isinstance(t, InvNumeral):
        return Fraction(1, t.m)
    raise TypeError(f"not a term node: {t!r}")


# -- formulas ----------------------------------------------------------------


class PlqoFormula:
    __slots__ = ()

    def __str__(self):
        from .parser import print_plqo

        return print_plqo(self)

    def __repr__(self):
        return f"<PlqoFormula {self}>"


@dataclass(frozen=True, repr=False)
class ObsAtom(PlqoFormula):
    __slots__ = ("alpha",)
    alpha: PropFormula


@dataclass(frozen=True, repr=False)
class ProbAtom(PlqoFormula):
    """The atom asserting the probability of ``alpha`` compares to ``term``
    via ``cmp``, one of "=" or "<"."""

    __slots__ = ("alpha", "cmp", "term")
    alpha: PropFormula
    cmp: str
    term: RcofTerm

    def __post_init__(self):
        if self.cmp not in ("=", "<"):
            raise ValueError(f"primitive comparison must be = or <, got {self.cmp}")


@dataclass(frozen=True, repr=False)
class PNeg(PlqoFormula):
    __slots__ = ("child",)
    child: PlqoFormula


@dataclass(frozen=True, repr=False)
class PImpl(PlqoFormula):
    __slots__ = ("left", "right")
    left: PlqoFormula
    right: PlqoFormula


def pconj(a, b):
    return PNeg(PImpl(a, PNeg(b)))


def pdisj(a, b):
    return PImpl(PNeg(a), b)


def piff(a, b):
    return pconj(PImpl(a, b), PImpl(b, a))


def pconj_all(formulas):
    formulas = list(formulas)
    if not formulas:
        raise ValueError("empty conjunction has no canonical formula here")
    out = formulas[-1]
    for f in reversed(formulas[:-1]):
        out = pconj(f, out)
    return out


def prob_le(alpha, term):
    """P(alpha) <= p, expanded to (P(alpha) = p) | (P(alpha) < p)."""
    return pdisj(ProbAtom(alpha, "=", term), ProbAtom(alpha, "<", term))


def prob_ge(alpha, term):
    """P(alpha) >= p, expanded to !(P(alpha) < p)."""
    return PNeg(ProbAtom(alpha, "<", term))


def prob_gt(alpha, term):
    """P(alpha) > p, expanded to !(P(alpha) <= p)."""
    return PNeg(prob_le(alpha, term))


def is_atom(f):
    return isinstance(f, (ObsAtom, ProbAtom))


@dataclass(frozen=True)
class PlqoLiteral:
    positive: bool
    atom: PlqoFormula

    def __post_init__(self):
        if not is_atom(self.atom):
            raise ValueError("literal atom must be atomic")

    def complement(self):
        return PlqoLiteral(not self.positive, self.atom)

    def formula(self):
        return self.atom if self.positive else PNeg(self.atom)

    def __str__(self):
        sign = "+" if self.positive else "-"
        return f"{sign}{self.atom}"


def atoms_of(f):
    """Distinct atoms of ``f`` in first-occurrence order."""
    out = []
    seen = set()

    def walk(node):
        if is_atom(node):
            if node not in seen:
                seen.add(node)
                out.append(node)
        elif isinstance(node, PNeg):
            walk(node.child)
        elif isinstance(node, PImpl):
            walk(node.left)
            walk(node.right)
        else:
            raise TypeError(f"not a formula node: {node!r}")

    walk(f)
    return out


def prob_formulas_of(f):
    """The classical formulas alpha with a probability atom on them in ``f``,
    in first-occurrence order."""
    out = []
    seen = set()
    for a in atoms_of(f):
        if isinstance(a, ProbAtom) and a.alpha not in seen:
            seen.add(a.alpha)
            out.append(a.alpha)
    return out


def nnf_dnf_literals(f, atom_budget=DEFAULT_ATOM_BUDGET):
    """Disjunctive normal form of ``f`` over its atoms, as a list of
    literal conjunctions.  Disjuncts containing complementary literals
    are pruned; duplicate literals and duplicate disjuncts are dropped.
    Deterministic: syntax-directed expansion order."""
    n_atoms = len(atoms_of(f))
    if n_atoms > atom_budget:
        raise BudgetExceeded(f"{n_atoms} distinct atoms exceeds DNF budget {atom_budget}")

    def expand(node, positive):
        if is_atom(node):
            return [[PlqoLiteral(positive, node)]]
        if isinstance(node, PNeg):
            return expand(node.child, not positive)
        if isinstance(node, PImpl):
            if positive:
                return expand(node.left, False) + expand(node.right, True)
            out = []
            for a in expand(node.left, True):
                for b in expand(node.right, False):
                    out.append(a + b)
            return out
        raise TypeError(f"not a formula node: {node!r}")

    disjuncts = []
    seen = set()
    for raw in expand(f, True):
        lits = []
        lit_set = set()
        tautologous = False
        for lit in raw:
            if lit.complement() in lit_set:
                tautologous = True
                break
            if lit not in lit_set:
                lit_set.add(lit)
                lits.append(lit)
        if tautologous:
            continue
        key = frozenset(lit_set)
        if key in seen:
            continue
        seen.add(key)
        disjuncts.append(lits)
    return disjuncts
