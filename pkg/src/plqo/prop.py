"""Classical propositional formulas: evaluation, tautology checking,
essential symbols, algebraic normal form and valuation-identifying formulas.

Formulas are immutable trees over verum, atoms, negation and implication;
the other connectives are builders that expand into those primitives.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceeded, MissingSymbol, UNotSubset

DEFAULT_SYMBOL_BUDGET = 16


def symbol_budget():
    """Cap on |B_alpha| for operations that enumerate all valuations."""
    raw = os.environ.get("PLQO_BUDGET_SYMBOLS")
    return int(raw) if raw else DEFAULT_SYMBOL_BUDGET


@dataclass(frozen=True, order=True)
class PropSymbol:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("symbol index must be nonnegative")

    def __str__(self):
        return f"B{self.index}"


class PropFormula:
    """Base class for formula nodes.  Subclasses are frozen dataclasses."""

    __slots__ = ()

    def symbols(self):
        out = set()
        _collect_symbols(self, out)
        return frozenset(out)

    def __and__(self, other):
        return conj(self, other)

    def __or__(self, other):
        return disj(self, other)

    def __invert__(self):
        return Neg(self)

    def __rshift__(self, other):
        return Impl(self, other)

    def __str__(self):
        return print_prop(self)

    def __repr__(self):
        return f"<PropFormula {print_prop(self)}>"


@dataclass(frozen=True, repr=False)
class Verum(PropFormula):
    __slots__ = ()


@dataclass(frozen=True, repr=False)
class Atom(PropFormula):
    __slots__ = ("symbol",)
    symbol: PropSymbol


@dataclass(frozen=True, repr=False)
class Neg(PropFormula):
    __slots__ = ("child",)
    child: PropFormula


@dataclass(frozen=True, repr=False)
class Impl(PropFormula):
    __slots__ = ("left", "right")
    left: PropFormula
    right: PropFormula


VERUM = Verum()
FALSUM = Neg(VERUM)


def atom(index):
    return Atom(PropSymbol(index))


def conj(a, b):
    return Neg(Impl(a, Neg(b)))


def disj(a, b):
    return Impl(Neg(a), b)


def iff(a, b):
    return conj(Impl(a, b), Impl(b, a))


def conj_all(formulas):
    """Right-nested conjunction; verum for the empty sequence."""
    formulas = list(formulas)
    if not formulas:
        return VERUM
    out = formulas[-1]
    for f in reversed(formulas[:-1]):
        out = conj(f, out)
    return out


def _collect_symbols(f, out):
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.symbol)
        elif isinstance(node, Neg):
            stack.append(node.child)
        elif isinstance(node, Impl):
            stack.append(node.left)
            stack.append(node.right)


def eval_formula(f, valuation):
    """Truth value of ``f`` under ``valuation`` (a symbol -> {0,1} mapping)."""
    if isinstance(f, Verum):
        return 1
    if isinstance(f, Atom):
        try:
            return 1 if valuation[f.symbol] else 0
        except KeyError:
            raise MissingSymbol(f"valuation does not cover {f.symbol}") from None
    if isinstance(f, Neg):
        return 1 - eval_formula(f.child, valuation)
    if isinstance(f, Impl):
        if eval_formula(f.left, valuation) == 0:
            return 1
        return eval_formula(f.right, valuation)
    raise TypeError(f"not a formula node: {f!r}")


def all_valuations(symbols):
    """All valuations on ``symbols``, in lexicographic order by ascending index."""
    syms = sorted(symbols)
    for bits in product((0, 1), repeat=len(syms)):
        yield dict(zip(syms, bits))


def _check_budget(symbols, what):
    if len(symbols) > symbol_budget():
        raise BudgetExceeded(
            f"{what}: {len(symbols)} symbols exceeds budget {symbol_budget()}"
        )


def is_tautology(f):
    syms = f.symbols()
    _check_budget(syms, "is_tautology")
    return all(eval_formula(f, v) for v in all_valuations(syms))


def essential_symbols_bruteforce(f):
    """Reference implementation: a symbol is essential iff flipping it
    changes the truth value under some valuation."""
    syms = f.symbols()
    _check_budget(syms, "essential_symbols")
    essential = set()
    for s in syms:
        for v in all_valuations(syms - {s}):
            v0 = dict(v)
            v0[s] = 0
            v1 = dict(v)
            v1[s] = 1
            if eval_formula(f, v0) != eval_formula(f, v1):
                essential.add(s)
                break
    return frozenset(essential)


@dataclass(frozen=True)
class AnfPoly:
    """GF(2) multilinear polynomial: a set of monomials, each a set of
    symbols; the empty monomial is the constant 1."""

    monomials: frozenset

    def variables(self):
        out = set()
        for m in self.monomials:
            out |= m
        return frozenset(out)

    def evaluate(self, valuation):
        acc = 0
        for m in self.monomials:
            term = 1
            for s in m:
                try:
                    term &= 1 if valuation[s] else 0
                except KeyError:
                    raise MissingSymbol(f"valuation does not cover {s}") from None
                if term == 0:
                    break
            acc ^= term
        return acc

    def __str__(self):
        if not self.monomials:
            return "0"
        parts = []
        for m in sorted(self.monomials, key=lambda m: (len(m), sorted(m))):
            parts.append("*".join(str(s) for s in sorted(m)) if m else "1")
        return " + ".join(parts)


def anf(f):
    """Zhegalkin polynomial of ``f`` via the Moebius transform of its
    truth table.  The variables of the result are exactly the essential
    symbols of ``f``."""
    syms = sorted(f.symbols())
    _check_budget(syms, "anf")
    n = len(syms)
    table = []
    for bits in product((0, 1), repeat=n):
        table.append(eval_formula(f, dict(zip(syms, bits))))
    # in-place Moebius (xor) transform over the subset lattice
    coeffs = list(table)
    for i in range(n):
        step = 1 << (n - 1 - i)
        for j in range(1 << n):
            if j & step:
                coeffs[j] ^= coeffs[j ^ step]
    monomials = set()
    for j in range(1 << n):
        if coeffs[j]:
            monomials.add(
                frozenset(syms[i] for i in range(n) if j & (1 << (n - 1 - i)))
            )
    return AnfPoly(frozenset(monomials))


def essential_symbols(f):
    """Essential symbols of ``f``; computed from the ANF variable set."""
    return anf(f).variables()


def phi_A_U(a_set, u_set):
    """The formula identifying, among valuations on ``a_set``, the one that
    makes exactly the symbols in ``u_set`` true.  Verum when ``a_set`` is
    empty.  Conjunction order is ascending symbol index."""
    a_set = frozenset(a_set)
    u_set = frozenset(u_set)
    if not u_set <= a_set:
        raise UNotSubset(f"{sorted(u_set)} is not a subset of {sorted(a_set)}")
    if not a_set:
        return VERUM
    lits = []
    for s in sorted(a_set):
        lit = Atom(s) if s in u_set else Neg(Atom(s))
        lits.append(lit)
    return conj_all(lits)


# -- printing ----------------------------------------------------------------

# precedence levels, loosest first
_P_IFF, _P_IMPL, _P_OR, _P_AND, _P_NEG, _P_ATOM = range(6)


def _match_conj(f):
    if isinstance(f, Neg) and isinstance(f.child, Impl) and isinstance(f.child.right, Neg):
        return f.child.left, f.child.right.child
    return None


def _match_disj(f):
    if isinstance(f, Impl) and isinstance(f.left, Neg):
        return f.left.child, f.right
    return None


def _print(f, ctx, spaced):
    sep = " " if spaced else ""
    if isinstance(f, Verum):
        return "T"
    if f == FALSUM:
        return "F"
    if isinstance(f, Atom):
        return str(f.symbol)
    pair = _match_conj(f)
    if pair is not None:
        a, b = pair
        s = f"{_print(a, _P_AND, spaced)}{sep}&{sep}{_print(b, _P_NEG, spaced)}"
        return f"({s})" if ctx > _P_AND else s
    pair = _match_disj(f)
    if pair is not None:
        a, b = pair
        s = f"{_print(a, _P_OR + 1, spaced)}{sep}|{sep}{_print(b, _P_OR, spaced)}"
        return f"({s})" if ctx > _P_OR else s
    if isinstance(f, Neg):
        return f"!{_print(f.child, _P_NEG, spaced)}"
    if isinstance(f, Impl):
        # right-associative
        s = f"{_print(f.left, _P_IMPL + 1, spaced)}{sep}->{sep}{_print(f.right, _P_IMPL, spaced)}"
        return f"({s})" if ctx > _P_IMPL else s
    raise TypeError(f"not a formula node: {f!r}")


def print_prop(f, spaced=True):
    """Render a formula in the surface grammar.  Conjunction and
    disjunction sugar is re-folded so output stays readable; the result
    reparses to a structurally identical tree."""
    return _print(f, _P_IFF, spaced)


def canonical_text(f):
    """Compact, whitespace-free rendering; used as the identity of
    probability variables indexed by formulas."""
    return _print(f, _P_IFF, False)
