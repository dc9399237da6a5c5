"""Generator action on 1-singular blocks.

The basis mixes regular tableaux T and derivative tableaux DT.  Every
coefficient of the generic action is a rational function of the two row-2
variables (v21, v22); here those functions get evaluated at the diagonal
point v21 = v22 together with their derivative D = (d/dv21 - d/dv22)/2,
and the action of a generator on T/DT mixes evaluation and derivative
according to whether the shift is critical (m = n), regular (m < n for T)
or derivative (m > n for DT):

  * regular T, m != n:   plain evaluation of both transition coefficients;
  * critical T, m == n:  apply D to (v21 - v22) * coefficient, which clears
                         the vanishing denominator; the D-part lands on T
                         and the evaluation part on DT;
  * derivative DT:       Leibniz -- D(coefficient) lands on T and the
                         evaluation on DT.

The fast path below works with the factored linear forms shared with the
generic table.  `closed_form_oracle` recomputes the same action along an
independent route (explicit per-case formulas, and full polynomial
expansion with the quotient rule for E13/E31) so transcription mistakes in
either path show up as disagreements.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .core import (DERIVATIVE, REGULAR, SINGULAR, BlockSpec, SparseVector,
                   Tableau, canonicalize, entries_of, scalar)
from .generic_action import CARTAN, TERMS, diagonal_value, gl3_bracket

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# exact bivariate rational functions in (v21, v22)

class Poly2:
    """Polynomial in v21, v22 with Fraction coefficients, {(i, j): c}."""

    __slots__ = ('c',)

    def __init__(self, coeffs=None):
        self.c = {}
        if coeffs:
            for key, val in coeffs.items():
                val = scalar(val)
                if val:
                    self.c[key] = val

    @classmethod
    def const(cls, value):
        return cls({(0, 0): value})

    @classmethod
    def v21(cls):
        return cls({(1, 0): 1})

    @classmethod
    def v22(cls):
        return cls({(0, 1): 1})

    def __add__(self, other):
        if not isinstance(other, Poly2):
            other = Poly2.const(other)
        out = dict(self.c)
        for key, val in other.c.items():
            s = out.get(key, 0) + val
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        p = Poly2()
        p.c = out
        return p

    def __neg__(self):
        p = Poly2()
        p.c = {key: -val for key, val in self.c.items()}
        return p

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly2):
            other = Poly2.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            other = Poly2.const(other)
        out = {}
        for (i, j), u in self.c.items():
            for (p, q), w in other.c.items():
                key = (i + p, j + q)
                s = out.get(key, 0) + u * w
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        r = Poly2()
        r.c = out
        return r

    __rmul__ = __mul__

    def partial(self, var: int) -> 'Poly2':
        """d/dv21 for var=1, d/dv22 for var=2."""
        out = {}
        for (i, j), u in self.c.items():
            if var == 1 and i:
                out[(i - 1, j)] = out.get((i - 1, j), 0) + i * u
            elif var == 2 and j:
                out[(i, j - 1)] = out.get((i, j - 1), 0) + j * u
        p = Poly2()
        p.c = {key: val for key, val in out.items() if val}
        return p

    def __call__(self, p21, p22):
        p21, p22 = scalar(p21), scalar(p22)
        total = Fraction(0)
        for (i, j), u in self.c.items():
            total += u * p21 ** i * p22 ** j
        return total

    def is_zero(self):
        return not self.c

    def __eq__(self, other):
        return isinstance(other, Poly2) and self.c == other.c

    def __repr__(self):
        return 'Poly2(%r)' % (self.c,)


class RatFunc:
    """Quotient of two Poly2, kept unreduced; evaluation is exact."""

    __slots__ = ('num', 'den')

    def __init__(self, num, den=None):
        if not isinstance(num, Poly2):
            num = Poly2.const(num)
        if den is None:
            den = Poly2.const(1)
        elif not isinstance(den, Poly2):
            den = Poly2.const(den)
        if den.is_zero():
            raise ZeroDivisionError('zero denominator polynomial')
        self.num = num
        self.den = den

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(other)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def partial(self, var: int) -> 'RatFunc':
        return RatFunc(self.num.partial(var) * self.den
                       - self.num * self.den.partial(var),
                       self.den * self.den)

    def __call__(self, p21, p22):
        d = self.den(p21, p22)
        if not d:
            raise ZeroDivisionError('denominator vanishes at the point')
        return self.num(p21, p22) / d

    def __repr__(self):
        return 'RatFunc(%r, %r)' % (self.num, self.den)


class DOp:
    """Evaluation and the half-difference derivative at v21 = v22 = point."""

    __slots__ = ('point',)

    def __init__(self, point):
        self.point = scalar(point)

    def ev(self, f) -> Fraction:
        return f(self.point, self.point)

    def d(self, f) -> Fraction:
        if isinstance(f, Poly2):
            g = f.partial(1) - f.partial(2)
        else:
            g = f.partial(1) - f.partial(2)
        return HALF * g(self.point, self.point)


# ---------------------------------------------------------------------------
# fast path: factored linear forms

def _require_singular(block: BlockSpec):
    if block.kind != SINGULAR:
        raise ValueError('singular action applied to a generic block')


@lru_cache(maxsize=1 << 17)
def _sing_moves(block: BlockSpec, shift, kind: str) -> dict:
    """Literal transitions {g: ((shift', kind', coeff), ...)}, canonical targets.

    Computed at the given shift as written; canonicalizing the inputs is the
    caller's job (and the two must agree -- that is a property test).
    """
    _require_singular(block)
    a3 = block.base[:3]
    x = block.base[3]
    z = block.base[5]
    m, n, k = shift
    c = m - n
    out = {}
    for g, terms in TERMS.items():
        acc = {}

        def put(tshift, tkind, coeff):
            if not coeff:
                return
            sign, tab = canonicalize(block, tshift, tkind)
            if tab is None:
                return
            key = (tab.shift, tab.kind)
            val = acc.get(key, 0) + sign * coeff
            if val:
                acc[key] = val
            else:
                acc.pop(key, None)

        if kind == DERIVATIVE and c == 0:
            out[g] = ()
            continue
        for delta, sgn, factors, has_den in terms:
            tgt = (m + delta[0], n + delta[1], k + delta[2])
            evs = []
            dvs = []
            for f in factors:
                a0 = (f[0] * m + f[1] * n + f[2] * (z + k)
                      + f[3] * a3[0] + f[4] * a3[1] + f[5] * a3[2] + f[6])
                evs.append(a0 + (f[0] + f[1]) * x)
                dvs.append(Fraction(f[0] - f[1], 2))
            p0 = Fraction(sgn)
            for e in evs:
                p0 *= e
            p1 = Fraction(0)
            for i, dv in enumerate(dvs):
                if dv:
                    term = dv
                    for j, e in enumerate(evs):
                        if j != i:
                            term *= e
                    p1 += term
            p1 *= sgn
            if kind == REGULAR:
                if c:
                    put(tgt, REGULAR, p0 / c if has_den else p0)
                elif has_den:
                    # (v21 - v22) * coefficient is the plain factor product
                    put(tgt, REGULAR, p1)
                    put(tgt, DERIVATIVE, p0)
                else:
                    put(tgt, REGULAR, p0)
            else:
                if has_den:
                    evf = p0 / c
                    dvf = (p1 * c - p0) / (c * c)
                else:
                    evf = p0
                    dvf = p1
                put(tgt, REGULAR, dvf)
                put(tgt, DERIVATIVE, evf)
        out[g] = tuple((s, kd, co) for (s, kd), co in sorted(acc.items()))
    entries = entries_of(block, shift)
    for g in CARTAN:
        val = diagonal_value(g, entries)
        out[g] = (((m, n, k), kind, val),) if val else ()
    return out


def act_singular(g: str, v: SparseVector) -> SparseVector:
    """Apply one generator to a vector supported on a single singular block."""
    out = SparseVector()
    for t, coeff in v.items():
        _require_singular(t.block)
        sign, tc = canonicalize(t.block, t.shift, t.kind)
        if tc is None:
            continue
        coeff = coeff * sign
        for tshift, tkind, tco in _sing_moves(t.block, tc.shift, tc.kind)[g]:
            out.iadd_term(Tableau(t.block, tshift, tkind), coeff * tco)
    return out


def act_word_singular(word, v: SparseVector) -> SparseVector:
    for g in reversed(word):
        v = act_singular(g, v)
    return v


# ---------------------------------------------------------------------------
# Gamma action

@lru_cache(maxsize=1 << 17)
def _gamma_pair(block: BlockSpec, shift, idx: int):
    """(eigenvalue, derivative part) of the idx-th commuting generator."""
    w21 = Poly2.v21() + shift[0]
    w22 = Poly2.v22() + shift[1]
    a, b, c3 = block.base[:3]
    w11 = Poly2.const(block.base[5] + shift[2])
    if idx == 0:
        poly = w11
    elif idx == 1:
        poly = w21 + w22 + 1
    elif idx == 2:
        poly = w21 * w21 + w22 * w22 + w21 + w22
    else:
        s1 = a + b + c3
        s2 = a * a + b * b + c3 * c3
        s3 = a ** 3 + b ** 3 + c3 ** 3
        e2 = a * b + a * c3 + b * c3
        vals = {3: s1 + 3, 4: s2 + 2 * s1 + 1, 5: s3 + 4 * s2 - e2 - 6 + s1}
        poly = Poly2.const(vals[idx])
    dop = DOp(block.base[3])
    return dop.ev(poly), dop.d(poly)


def gamma_act_singular(r: int, s: int, v: SparseVector) -> SparseVector:
    """The commuting family on a singular block: upper triangular on (DT, T)."""
    idx = {(1, 1): 0, (2, 1): 1, (2, 2): 2, (3, 1): 3, (3, 2): 4, (3, 3): 5}[(r, s)]
    out = SparseVector()
    for t, coeff in v.items():
        _require_singular(t.block)
        sign, tc = canonicalize(t.block, t.shift, t.kind)
        if tc is None:
            continue
        coeff = coeff * sign
        ev, dv = _gamma_pair(t.block, tc.shift, idx)
        out.iadd_term(tc, coeff * ev)
        if tc.kind == DERIVATIVE and dv:
            out.iadd_term(Tableau(t.block, tc.shift, REGULAR), coeff * dv)
    return out


# ---------------------------------------------------------------------------
# independent recomputation paths

def _classical_ratfuncs(g: str, block: BlockSpec, shift):
    """The generic transition coefficients as explicit RatFuncs in (v21, v22)."""
    m, n, k = shift
    a, b, c3 = block.base[:3]
    w21 = Poly2.v21() + m
    w22 = Poly2.v22() + n
    w11 = block.base[5] + k
    den = w21 - w22
    one = Poly2.const(1)
    if g == 'E21':
        return [((0, 0, -1), RatFunc(one))]
    if g == 'E12':
        return [((0, 0, 1), RatFunc(-1 * (w21 - w11) * (w22 - w11)))]
    if g == 'E32':
        return [((-1, 0, 0), RatFunc(w21 - w11, den)),
                ((0, -1, 0), RatFunc(-1 * (w22 - w11), den))]
    if g == 'E23':
        pm = (a - w21) * (b - w21) * ((c3 - w21))
        pn = (a - w22) * (b - w22) * ((c3 - w22))
        return [((1, 0, 0), RatFunc(pm, den)),
                ((0, 1, 0), RatFunc(-1 * pn, den))]
    if g == 'E13':
        pm = (w21 - a) * (w21 - b) * (w21 - c3)
        pn = (a - w22) * (b - w22) * (c3 - w22)
        return [((1, 0, 1), RatFunc(pm * (w22 - w11), den)),
                ((0, 1, 1), RatFunc(pn * (w21 - w11), den))]
    if g == 'E31':
        return [((-1, 0, -1), RatFunc(one, den)),
                ((0, -1, -1), RatFunc(-1 * one, den))]
    raise ValueError('no transition table for %r' % g)


def _universal(g: str, block: BlockSpec, shift, kind: str):
    """Evaluation/derivation applied to full polynomial expansions."""
    m, n, k = shift
    dop = DOp(block.base[3])
    moves = []
    for delta, f in _classical_ratfuncs(g, block, shift):
        tgt = (m + delta[0], n + delta[1], k + delta[2])
        if kind == REGULAR and m != n:
            moves.append((tgt, REGULAR, dop.ev(f)))
        elif kind == REGULAR:
            # denominator is exactly v21 - v22 here, so it cancels
            num = f.num
            moves.append((tgt, REGULAR, dop.d(num)))
            moves.append((tgt, DERIVATIVE, dop.ev(num)))
        else:
            if m == n:
                continue
            moves.append((tgt, REGULAR, dop.d(f)))
            moves.append((tgt, DERIVATIVE, dop.ev(f)))
    return moves


def closed_form_oracle(g: str, t: Tableau) -> SparseVector:
    """Case-by-case closed formulas for the singular action.

    Transcribed independently of the factored fast path; E13 and E31 go
    through the polynomial-expansion route in `_universal`.  Used by tests
    to cross-check `act_singular` term by term.
    """
    _require_singular(t.block)
    sign0, tc = canonicalize(t.block, t.shift, t.kind)
    if tc is None:
        return SparseVector()
    block = t.block
    m, n, k = tc.shift
    kind = tc.kind
    a, b, c3 = block.base[:3]
    x = block.base[3]
    z = block.base[5]
    em = x + m - z - k
    en = x + n - z - k
    am = (a - x - m) * (b - x - m) * (c3 - x - m)
    an = (a - x - n) * (b - x - n) * (c3 - x - n)
    sm = ((a - x - m) * (b - x - m) + (a - x - m) * (c3 - x - m)
          + (b - x - m) * (c3 - x - m))
    sn = ((a - x - n) * (b - x - n) + (a - x - n) * (c3 - x - n)
          + (b - x - n) * (c3 - x - n))
    c = m - n
    out = SparseVector()

    def put(dm, dn, dk, tkind, coeff):
        if not coeff:
            return
        sign, tab = canonicalize(block, (m + dm, n + dn, k + dk), tkind)
        if tab is not None:
            out.iadd_term(tab, sign0 * sign * coeff)

    if g in CARTAN:
        put(0, 0, 0, kind, diagonal_value(g, entries_of(block, tc.shift)))
        return out
    if g == 'E21':
        put(0, 0, -1, kind, Fraction(1))
        return out
    if g == 'E12':
        put(0, 0, 1, kind, -em * en)
        if kind == DERIVATIVE:
            put(0, 0, 1, REGULAR, Fraction(c, 2))
        return out
    if g == 'E32':
        if kind == REGULAR and c == 0:
            put(-1, 0, 0, REGULAR, Fraction(1))
            put(-1, 0, 0, DERIVATIVE, 2 * em)
        elif kind == REGULAR:
            put(-1, 0, 0, REGULAR, em / c)
            put(0, -1, 0, REGULAR, -en / c)
        else:
            put(-1, 0, 0, DERIVATIVE, em / c)
            put(0, -1, 0, DERIVATIVE, -en / c)
            put(-1, 0, 0, REGULAR, HALF * (Fraction(1, c) - 2 * em / (c * c)))
            put(0, -1, 0, REGULAR, HALF * (Fraction(1, c) + 2 * en / (c * c)))
        return out
    if g == 'E23':
        if kind == REGULAR and c == 0:
            put(0, 1, 0, REGULAR, -sm)
            put(0, 1, 0, DERIVATIVE, -2 * am)
        elif kind == REGULAR:
            put(1, 0, 0, REGULAR, am / c)
            put(0, 1, 0, REGULAR, -an / c)
        else:
            put(1, 0, 0, DERIVATIVE, am / c)
            put(0, 1, 0, DERIVATIVE, -an / c)
            put(1, 0, 0, REGULAR, -HALF * sm / c - am / (c * c))
            put(0, 1, 0, REGULAR, -HALF * sn / c + an / (c * c))
        return out
    if g in ('E13', 'E31'):
        for tshift, tkind, coeff in _universal(g, block, tc.shift, kind):
            if coeff:
                sign, tab = canonicalize(block, tshift, tkind)
                if tab is not None:
                    out.iadd_term(tab, sign0 * sign * coeff)
        return out
    raise ValueError('unknown generator %r' % g)


# ---------------------------------------------------------------------------
# bracket sweep

def bracket_residual_singular(block: BlockSpec, g1: str, g2: str,
                              expected=None, radius: int = 3):
    """Residuals of [g1,g2] - expected on all canonical window tableaux."""
    _require_singular(block)
    if expected is None:
        expected = {}
    elif isinstance(expected, str):
        expected = {expected: Fraction(1)}
    violations = []
    rng = range(-radius, radius + 1)
    for m in rng:
        for n in rng:
            for k in rng:
                # one canonical basis vector per point: T if m <= n, DT if m > n
                kind = REGULAR if m <= n else DERIVATIVE
                res = _residual_singular_at(block, g1, g2, expected,
                                            (m, n, k), kind)
                if res:
                    violations.append({
                        'at': [m, n, k],
                        'kind': kind,
                        'bracket': [g1, g2],
                        'residual': {str(key): str(val)
                                     for key, val in sorted(res.items())},
                    })
    return violations


def _residual_singular_at(block, g1, g2, expected, shift, kind):
    res = {}

    def acc(key, num, den):
        cur = res.get(key)
        if cur is None:
            res[key] = (num, den)
        else:
            cn, cd = cur
            res[key] = (cn * den + num * cd, cd * den)

    first = _sing_moves(block, shift, kind)
    for s2, k2, c2 in first[g2]:
        for s1, k1, c1 in _sing_moves(block, s2, k2)[g1]:
            acc((s1, k1), c2.numerator * c1.numerator,
                c2.denominator * c1.denominator)
    for s1, k1, c1 in first[g1]:
        for s2, k2, c2 in _sing_moves(block, s1, k1)[g2]:
            acc((s2, k2), -c1.numerator * c2.numerator,
                c1.denominator * c2.denominator)
    for g, coef in expected.items():
        for s0, k0, c0 in first[g]:
            acc((s0, k0), -coef.numerator * c0.numerator,
                coef.denominator * c0.denominator)
    return {key: Fraction(num, den) for key, (num, den) in res.items() if num}


def relation_suite_singular(block: BlockSpec, radius: int = 3,
                            generators=None):
    """All pairwise bracket identities on a singular block window."""
    from .generic_action import GENERATORS
    gens = list(generators or GENERATORS)
    violations = []
    for i, g1 in enumerate(gens):
        for g2 in gens[i + 1:]:
            violations.extend(bracket_residual_singular(
                block, g1, g2, gl3_bracket(g1, g2), radius))
    return violations


def singular_tableau(block: BlockSpec, m: int, n: int, k: int,
                     kind: str = REGULAR) -> SparseVector:
    """The canonical basis vector at a lattice point (zero if it collapses)."""
    sign, t = canonicalize(block, (m, n, k), kind)
    if t is None:
        return SparseVector()
    return SparseVector([(t, Fraction(sign))])
