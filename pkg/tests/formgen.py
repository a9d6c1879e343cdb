"""Seeded random generators for classical and observation-logic
formulas, shared across test modules."""

from fractions import Fraction

from plqo.prop import Atom, Impl, Neg, PropSymbol, VERUM, conj, disj
from plqo.syntax import NumVar, ObsAtom, PImpl, PNeg, ProbAtom, term_of_fraction


def gen_classical(rng, symbols, depth):
    """A random classical formula over the given symbol indices."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.08:
            return VERUM
        return Atom(PropSymbol(rng.choice(symbols)))
    kind = rng.choice(["neg", "impl", "conj", "disj"])
    a = gen_classical(rng, symbols, depth - 1)
    if kind == "neg":
        return Neg(a)
    b = gen_classical(rng, symbols, depth - 1)
    return {"impl": Impl, "conj": conj, "disj": disj}[kind](a, b)


def gen_rational(rng, max_den=4):
    den = rng.randint(1, max_den)
    num = rng.randint(0, den)
    return Fraction(num, den)


def gen_term(rng, allow_vars=False):
    t = term_of_fraction(gen_rational(rng))
    if allow_vars and rng.random() < 0.3:
        t = t + NumVar(rng.randint(1, 3))
    return t


def gen_atom(rng, symbols, depth=2, allow_vars=False):
    alpha = gen_classical(rng, symbols, depth)
    if rng.random() < 0.5:
        return ObsAtom(alpha)
    cmp = rng.choice(["=", "<"])
    return ProbAtom(alpha, cmp, gen_term(rng, allow_vars))


def gen_plqo(rng, symbols, depth, atom_depth=2, allow_vars=False):
    """A random observation-logic formula."""
    if depth == 0 or rng.random() < 0.3:
        return gen_atom(rng, symbols, atom_depth, allow_vars)
    if rng.random() < 0.4:
        return PNeg(gen_plqo(rng, symbols, depth - 1, atom_depth, allow_vars))
    return PImpl(
        gen_plqo(rng, symbols, depth - 1, atom_depth, allow_vars),
        gen_plqo(rng, symbols, depth - 1, atom_depth, allow_vars),
    )


def random_feasible_point(rng, base, delta, extra_pairs_positive=False):
    """A feasible point of q_adams(base, delta), built independently of
    the solver: draw a random joint distribution over the base and derive
    every marginal, formula and pair variable from it."""
    from itertools import combinations

    from plqo.prop import all_valuations, eval_formula
    from plqo.translate import PairVar, ProbVar, mass_var

    base = sorted(base)
    n = len(base)
    weights = [Fraction(rng.randint(0, 5)) for _ in range(1 << n)]
    if sum(weights) == 0:
        weights[0] = Fraction(1)
    total = sum(weights)
    joint = {}
    for code in range(1 << n):
        u = frozenset(base[j] for j in range(n) if (code >> j) & 1)
        joint[u] = weights[code] / total
    values = {}
    for r in range(n + 1):
        for a_sub in combinations(base, r):
            a_sub = frozenset(a_sub)
            for r2 in range(len(a_sub) + 1):
                for u_sub in combinations(sorted(a_sub), r2):
                    u_sub = frozenset(u_sub)
                    values[mass_var(a_sub, u_sub)] = sum(
                        (m for u, m in joint.items() if u & a_sub == u_sub),
                        Fraction(0),
                    )
    for alpha in delta:
        b_alpha = frozenset(alpha.symbols())
        acc = Fraction(0)
        for v in all_valuations(b_alpha):
            if eval_formula(alpha, v):
                u = frozenset(s for s in b_alpha if v[s])
                acc += values[mass_var(b_alpha, u)]
        values[ProbVar.of(alpha)] = acc
    for s1, s2 in combinations(base, 2):
        if extra_pairs_positive and rng.random() < 0.5:
            values[PairVar.of(s1, s2)] = Fraction(rng.randint(1, 3), 2)
        else:
            values[PairVar.of(s1, s2)] = Fraction(0)
    return values
