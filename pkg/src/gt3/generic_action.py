"""Generator action on generic blocks, plus the bracket-relation checker.

Every non-Cartan generator moves a tableau along at most two shift
directions, with a coefficient that factors into linear forms in the six
entries divided by (w21 - w22).  The table below is the single source of
truth for those factorizations; the singular module reuses it and applies
the evaluation/derivation calculus to the same forms, which is what keeps
the two actions consistent.

A factor (a21, a22, a11, z1, z2, z3, c0) stands for the linear form
a21*w21 + a22*w22 + a11*w11 + z1*w31 + z2*w32 + z3*w33 + c0.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .core import (GENERIC, REGULAR, BlockSpec, SparseVector, Tableau,
                   canonicalize, entries_of, gamma_entries)

# shift directions: delta21 = (1,0,0), delta22 = (0,1,0), delta11 = (0,0,1)

_F_2111 = (1, 0, -1, 0, 0, 0, 0)   # w21 - w11
_F_2211 = (0, 1, -1, 0, 0, 0, 0)   # w22 - w11


def _top_minus(col, s):
    # w3{col} - w2{s}  (s = 1 -> w21, s = 2 -> w22)
    f = [0, 0, 0, 0, 0, 0, 0]
    f[0 if s == 1 else 1] = -1
    f[2 + col] = 1
    return tuple(f)


def _neg(f):
    return tuple(-x for x in f)


# TERMS[g] = list of (delta, sign, factors, has_denominator)
# where the coefficient is sign * prod(factors) / (w21 - w22)**has_denominator
TERMS = {
    'E21': [((0, 0, -1), 1, (), 0)],
    'E12': [((0, 0, 1), -1, (_F_2111, _F_2211), 0)],
    'E32': [((-1, 0, 0), 1, (_F_2111,), 1),
            ((0, -1, 0), -1, (_F_2211,), 1)],
    'E23': [((1, 0, 0), 1, tuple(_top_minus(i, 1) for i in (1, 2, 3)), 1),
            ((0, 1, 0), -1, tuple(_top_minus(i, 2) for i in (1, 2, 3)), 1)],
    'E13': [((1, 0, 1), 1,
             tuple(_neg(_top_minus(i, 1)) for i in (1, 2, 3)) + (_F_2211,), 1),
            ((0, 1, 1), 1,
             tuple(_top_minus(i, 2) for i in (1, 2, 3)) + (_F_2111,), 1)],
    'E31': [((-1, 0, -1), 1, (), 1),
            ((0, -1, -1), -1, (), 1)],
}

E_GENERATORS = ('E12', 'E21', 'E23', 'E32', 'E13', 'E31')
CARTAN = ('H1', 'H2', 'E11', 'E22', 'E33')
GENERATORS = E_GENERATORS + CARTAN


def factor_value(f, entries) -> Fraction:
    a, b, c, w21, w22, w11 = entries
    return (f[0] * w21 + f[1] * w22 + f[2] * w11
            + f[3] * a + f[4] * b + f[5] * c + f[6])


def diagonal_value(g: str, entries) -> Fraction:
    a, b, c, w21, w22, w11 = entries
    if g == 'E11':
        return Fraction(w11)
    if g == 'E22':
        return w21 + w22 + 1 - w11
    if g == 'E33':
        return a + b + c + 2 - (w21 + w22)
    if g == 'H1':
        return 2 * w11 - (w21 + w22 + 1)
    if g == 'H2':
        return 2 * (w21 + w22 + 1) - w11 - (a + b + c + 3)
    raise ValueError('not a diagonal generator: %r' % g)


@lru_cache(maxsize=64)
def _denominator_scale(block: BlockSpec) -> int:
    from math import lcm
    return lcm(*(x.denominator for x in block.base))


@lru_cache(maxsize=1 << 18)
def _moves_scaled(block: BlockSpec, shift) -> dict:
    """Transitions {g: ((delta, num, den), ...)} with exact integer pairs.

    Entries are scaled by the lcm of the base denominators so factor values
    become integers; coefficients are kept unreduced, which avoids a gcd on
    every multiply in the relation sweeps.
    """
    L = _denominator_scale(block)
    a, b, c, w21, w22, w11 = (int(x * L) for x in entries_of(block, shift))
    d = w21 - w22
    out = {}
    for g, terms in TERMS.items():
        evaluated = []
        for delta, sign, factors, has_den in terms:
            num = sign
            for f in factors:
                num *= (f[0] * w21 + f[1] * w22 + f[2] * w11
                        + f[3] * a + f[4] * b + f[5] * c + f[6] * L)
            den = L ** len(factors)
            if has_den:
                num *= L
                den *= d
            if den < 0:
                num, den = -num, -den
            if num:
                evaluated.append((delta, num, den))
        out[g] = tuple(evaluated)
    diag = {
        'E11': (w11, L),
        'E22': (w21 + w22 + L - w11, L),
        'E33': (a + b + c + 2 * L - w21 - w22, L),
        'H1': (2 * w11 - w21 - w22 - L, L),
        'H2': (2 * (w21 + w22 + L) - w11 - (a + b + c + 3 * L), L),
    }
    for g, (num, den) in diag.items():
        out[g] = (((0, 0, 0), num, den),) if num else ()
    return out


@lru_cache(maxsize=1 << 18)
def _moves(block: BlockSpec, shift) -> dict:
    """Evaluated transitions {g: ((delta, coeff), ...)} at one lattice point."""
    return {g: tuple((delta, Fraction(num, den)) for delta, num, den in terms)
            for g, terms in _moves_scaled(block, shift).items()}


def _check_block(v: SparseVector):
    blocks = {t.block for t in v}
    if len(blocks) > 1:
        raise ValueError('mixed blocks in one vector')
    if blocks and next(iter(blocks)).kind != GENERIC:
        raise ValueError('generic action applied to a singular block')


def act(g: str, v: SparseVector) -> SparseVector:
    """Apply one generator to a vector supported on a single generic block."""
    _check_block(v)
    out = SparseVector()
    for t, c in v.items():
        for delta, coeff in _moves(t.block, t.shift)[g]:
            out.iadd_term(t.shifted(*delta), c * coeff)
    return out


def act_word(word, v: SparseVector) -> SparseVector:
    """Compose generators left-to-right, rightmost acting first."""
    for g in reversed(word):
        v = act(g, v)
    return v


def gamma_act(r: int, s: int, v: SparseVector) -> SparseVector:
    """The commuting family acts diagonally by the symmetric polynomials."""
    _check_block(v)
    idx = {(1, 1): 0, (2, 1): 1, (2, 2): 2, (3, 1): 3, (3, 2): 4, (3, 3): 5}[(r, s)]
    out = SparseVector()
    for t, c in v.items():
        out.iadd_term(t, c * gamma_entries(entries_of(t.block, t.shift))[idx])
    return out


# ---------------------------------------------------------------------------
# bracket bookkeeping

def _as_matrix(g: str):
    mat = [[Fraction(0)] * 3 for _ in range(3)]
    if g.startswith('E') and len(g) == 3:
        i, j = int(g[1]) - 1, int(g[2]) - 1
        mat[i][j] = Fraction(1)
    elif g == 'H1':
        mat[0][0], mat[1][1] = Fraction(1), Fraction(-1)
    elif g == 'H2':
        mat[1][1], mat[2][2] = Fraction(1), Fraction(-1)
    else:
        raise ValueError('unknown generator %r' % g)
    return mat


def gl3_bracket(g1: str, g2: str) -> dict:
    """[g1, g2] expanded over the eleven named generators, as {name: coeff}."""
    a, b = _as_matrix(g1), _as_matrix(g2)
    comm = [[sum(a[i][t] * b[t][j] - b[i][t] * a[t][j] for t in range(3))
             for j in range(3)] for i in range(3)]
    out = {}
    for i in range(3):
        for j in range(3):
            if comm[i][j]:
                out['E%d%d' % (i + 1, j + 1)] = comm[i][j]
    return out


def _apply_fast(block, g, vec):
    out = {}
    for shift, c in vec.items():
        for delta, coeff in _moves(block, shift)[g]:
            key = (shift[0] + delta[0], shift[1] + delta[1], shift[2] + delta[2])
            newc = out.get(key, 0) + c * coeff
            if newc:
                out[key] = newc
            else:
                out.pop(key, None)
    return out


def _residual_at(block, g1, g2, expected, shift):
    res = {}
    mv = _moves_scaled(block, shift)
    m, n, k = shift

    def acc(key, num, den):
        cur = res.get(key)
        if cur is None:
            res[key] = (num, den)
        else:
            cn, cd = cur
            res[key] = (cn * den + num * cd, cd * den)

    for d2, n2, den2 in mv[g2]:
        s2 = (m + d2[0], n + d2[1], k + d2[2])
        for d1, n1, den1 in _moves_scaled(block, s2)[g1]:
            acc((s2[0] + d1[0], s2[1] + d1[1], s2[2] + d1[2]), n2 * n1, den2 * den1)
    for d1, n1, den1 in mv[g1]:
        s1 = (m + d1[0], n + d1[1], k + d1[2])
        for d2, n2, den2 in _moves_scaled(block, s1)[g2]:
            acc((s1[0] + d2[0], s1[1] + d2[1], s1[2] + d2[2]), -n1 * n2, den1 * den2)
    for g, coef in expected.items():
        for d, num, den in mv[g]:
            acc((m + d[0], n + d[1], k + d[2]),
                -coef.numerator * num, coef.denominator * den)
    return {key: Fraction(num, den) for key, (num, den) in res.items() if num}


def bracket_residual(block: BlockSpec, g1: str, g2: str, expected=None, radius: int = 4):
    """[g1,g2] - expected on every window tableau; returns the violation list.

    expected may be None (zero), a generator name, or {name: coeff}.  The
    result is a list of dicts, one per window point with a nonzero residual;
    relation suites assert it is empty.
    """
    if block.kind != GENERIC:
        raise ValueError('bracket_residual sweeps generic blocks')
    if expected is None:
        expected = {}
    elif isinstance(expected, str):
        expected = {expected: Fraction(1)}
    violations = []
    rng = range(-radius, radius + 1)
    for m in rng:
        for n in rng:
            for k in rng:
                res = _residual_at(block, g1, g2, expected, (m, n, k))
                if res:
                    violations.append({
                        'at': [m, n, k],
                        'bracket': [g1, g2],
                        'residual': {str(s): str(c) for s, c in sorted(res.items())},
                    })
    return violations


def relation_suite(block: BlockSpec, radius: int = 4, generators=GENERATORS):
    """All pairwise bracket identities on a window; empty list means all hold."""
    violations = []
    gens = list(generators)
    for i, g1 in enumerate(gens):
        for g2 in gens[i + 1:]:
            expected = gl3_bracket(g1, g2)
            violations.extend(bracket_residual(block, g1, g2, expected, radius))
    return violations


def tableau(block: BlockSpec, m: int, n: int, k: int) -> SparseVector:
    """Convenience: the basis vector at one lattice point."""
    sign, t = canonicalize(block, (m, n, k), REGULAR)
    return SparseVector([(t, Fraction(sign))])
