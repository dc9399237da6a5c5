"""Exact data model for Gelfand-Tsetlin tableaux of gl(3)/sl(3).

A tableau is a triangular array with rows of lengths 3, 2, 1:

        v31  v32  v33
          v21  v22
            v11

The top row is frozen; the three lower entries move on an integer lattice.
A *block* fixes a base tableau; every basis vector is the base shifted by
(m, n, k), meaning (v21+m, v22+n, v11+k).  All arithmetic is over exact
rationals (``fractions.Fraction``): every case distinction in the theory is
an integrality condition on entry differences, so rationals suffice.

Blocks come in two kinds.  *Generic*: v21 - v22 is not an integer, and the
shift lattice indexes a plain basis T(w).  *Singular*: v21 = v22 (bases with
an integral nonzero difference are normalized here, absorbing the difference
into the m-shift).  A singular block carries two species of basis vectors,
regular tableaux T and derivative tableaux DT, glued by the relations

    T(v + z) = T(v + tau(z)),      DT(v + z) = -DT(v + tau(z)),

where tau swaps the two row-2 shifts.  Canonical representatives: T with
m <= n, DT with m > n (DT with m = n is zero).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

GENERIC = 'generic'
SINGULAR = 'singular'

REGULAR = 'regular'
DERIVATIVE = 'derivative'


def scalar(x) -> Fraction:
    """Coerce ints, 'p/q' strings, or Fractions to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError('refusing float %r: use an int or a p/q string' % (x,))
    return Fraction(x)


def fmt_scalar(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else '%d/%d' % (q.numerator, q.denominator)


class Shift(NamedTuple):
    m: int
    n: int
    k: int

    def plus(self, dm: int, dn: int, dk: int) -> 'Shift':
        return Shift(self.m + dm, self.n + dn, self.k + dk)


def tau(z) -> Shift:
    """Swap the two row-2 shift coordinates."""
    m, n, k = z
    return Shift(n, m, k)


class Weight(NamedTuple):
    h1: Fraction
    h2: Fraction


class GTCharacter(NamedTuple):
    g11: Fraction
    g21: Fraction
    g22: Fraction
    g31: Fraction
    g32: Fraction
    g33: Fraction


@dataclass(frozen=True, eq=False)
class BlockSpec:
    """A shift lattice of tableaux sharing a fixed base.

    base is stored normalized: either v21 - v22 is a non-integer (generic)
    or v21 == v22 exactly (singular).  Use block_and_shift() to build one
    from a raw tableau and recover the lattice offset of that tableau.
    """
    base: Tuple[Fraction, Fraction, Fraction, Fraction, Fraction, Fraction]
    kind: str
    sl3_mode: bool = False

    # Blocks sit inside every Tableau dict key, so hashing must not redo
    # six Fraction hashes per lookup.
    def __post_init__(self):
        object.__setattr__(self, '_hash', hash((self.base, self.kind, self.sl3_mode)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, BlockSpec):
            return NotImplemented
        return (self.base, self.kind, self.sl3_mode) == (other.base, other.kind, other.sl3_mode)

    def int_diff(self, x: Fraction, y: Fraction) -> Optional[int]:
        """x - y if it is an integer, else None.  Drives case classification."""
        d = x - y
        return int(d) if d.denominator == 1 else None

    @property
    def top(self):
        return self.base[:3]


def block_and_shift(raw_base, sl3: Optional[bool] = None):
    """Normalize a raw 6-tuple of entries to (BlockSpec, offset Shift).

    If v21 - v22 is a nonzero integer d, the base is rewritten with
    v21 = v22 and the tableau itself becomes the lattice point (d, 0, 0)
    of the normalized block.
    """
    b = tuple(scalar(x) for x in raw_base)
    if len(b) != 6:
        raise ValueError('base must have 6 entries, got %d' % len(b))
    d = b[3] - b[4]
    offset = Shift(0, 0, 0)
    if d.denominator == 1:
        kind = SINGULAR
        if d != 0:
            offset = Shift(int(d), 0, 0)
            b = b[:3] + (b[4], b[4], b[5])
    else:
        kind = GENERIC
    trace_ok = b[0] + b[1] + b[2] + 3 == 0
    if sl3 is None:
        sl3 = trace_ok
    elif sl3 and not trace_ok:
        raise ValueError('sl3 base must satisfy v31+v32+v33+3 = 0')
    return BlockSpec(base=b, kind=kind, sl3_mode=bool(sl3)), offset


def make_block(raw_base, sl3: Optional[bool] = None) -> BlockSpec:
    block, _ = block_and_shift(raw_base, sl3)
    return block


@dataclass(frozen=True)
class Tableau:
    block: BlockSpec
    shift: Shift
    kind: str = REGULAR

    def __post_init__(self):
        if not isinstance(self.shift, Shift):
            object.__setattr__(self, 'shift', Shift(*self.shift))

    def shifted(self, dm, dn, dk) -> 'Tableau':
        return Tableau(self.block, self.shift.plus(dm, dn, dk), self.kind)


def entries_of(block: BlockSpec, shift) -> tuple:
    """Numeric entries (v31, v32, v33, v21+m, v22+n, v11+k)."""
    m, n, k = shift
    b = block.base
    return (b[0], b[1], b[2], b[3] + m, b[4] + n, b[5] + k)


def canonicalize(block: BlockSpec, shift, kind: str):
    """Resolve a raw (shift, kind) against the gluing relations.

    Returns (sign, Tableau) with sign in {+1, -1}, or (0, None) for the
    vanishing derivative tableaux on the diagonal m = n.
    """
    if not isinstance(shift, Shift):
        shift = Shift(*shift)
    if block.kind == GENERIC:
        if kind != REGULAR:
            raise ValueError('generic blocks have no derivative tableaux')
        return 1, Tableau(block, shift, REGULAR)
    m, n, _ = shift
    if kind == REGULAR:
        if m > n:
            return 1, Tableau(block, tau(shift), REGULAR)
        return 1, Tableau(block, shift, REGULAR)
    if kind == DERIVATIVE:
        if m == n:
            return 0, None
        if m < n:
            return -1, Tableau(block, tau(shift), DERIVATIVE)
        return 1, Tableau(block, shift, DERIVATIVE)
    raise ValueError('unknown tableau kind %r' % (kind,))


def is_critical(t: Tableau) -> bool:
    """True on the diagonal m = n of a singular block (the tau-fixed tableaux)."""
    return t.block.kind == SINGULAR and t.kind == REGULAR and t.shift.m == t.shift.n


class SparseVector(dict):
    """Finite formal sum of canonical tableaux with nonzero Fraction weights.

    Plain dict Tableau -> Fraction; zero coefficients are never stored.
    """

    def __init__(self, data=()):
        super().__init__()
        items = data.items() if isinstance(data, dict) else data
        for t, c in items:
            self.iadd_term(t, c)

    def iadd_term(self, t: Tableau, c) -> 'SparseVector':
        if c == 0:
            return self
        c = c if isinstance(c, Fraction) else Fraction(c)
        new = self.get(t, 0) + c
        if new == 0:
            self.pop(t, None)
        else:
            self[t] = new
        return self

    def __add__(self, other):
        out = SparseVector(self)
        for t, c in other.items():
            out.iadd_term(t, c)
        return out

    def __sub__(self, other):
        out = SparseVector(self)
        for t, c in other.items():
            out.iadd_term(t, -c)
        return out

    def __neg__(self):
        return SparseVector((t, -c) for t, c in self.items())

    def scaled(self, a) -> 'SparseVector':
        if a == 0:
            return SparseVector()
        return SparseVector((t, c * a) for t, c in self.items())

    def __rmul__(self, a):
        return self.scaled(a)

    @staticmethod
    def unit(t: Tableau) -> 'SparseVector':
        return SparseVector([(t, Fraction(1))])


def weight_of(t: Tableau) -> Weight:
    _, _, _, w21, w22, w11 = entries_of(t.block, t.shift)
    return Weight(2 * w11 - (w21 + w22 + 1), 2 * (w21 + w22 + 1) - w11)


def gamma_entries(entries) -> GTCharacter:
    """The six symmetric polynomials cutting out a Gelfand-Tsetlin character."""
    a, b, c, p, q, u = entries
    return GTCharacter(
        g11=u,
        g21=(p + q) + 1,
        g22=(p * p + q * q) + (p + q),
        g31=(a + b + c) + 3,
        g32=(a * a + b * b + c * c) + 2 * (a + b + c) + 1,
        g33=(a ** 3 + b ** 3 + c ** 3) + 4 * (a * a + b * b + c * c)
            - (a * b + a * c + b * c) - 6 + (a + b + c),
    )


def gamma_of(t: Tableau) -> GTCharacter:
    return gamma_entries(entries_of(t.block, t.shift))


def block_to_json(block: BlockSpec) -> str:
    return json.dumps({'base': [fmt_scalar(x) for x in block.base],
                       'sl3': block.sl3_mode}, sort_keys=True)


def block_from_json(text):
    obj = json.loads(text) if isinstance(text, str) else text
    return make_block(obj['base'], sl3=obj.get('sl3'))
