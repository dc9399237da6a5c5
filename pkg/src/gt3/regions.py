"""Difference-constraint regions over the shift lattice Z^3.

A *cell* is a conjunction of atoms ``X - Y <= c`` with X, Y drawn from
{m, n, k, 0} and c an integer ('0' is the constant-zero pseudo-variable, so
``m <= -2`` is the atom m - 0 <= -2).  Strict atoms are folded into <= over
the integers.  A *region* is a finite union of cells.

Cells are tiny difference-constraint systems on four nodes, so everything
is decided exactly: Floyd-Warshall closure gives a canonical matrix form,
feasibility is the absence of a negative diagonal, and subtraction works
atom-by-atom.  No windowed approximations here; windows show up only in
tests as paranoia cross-checks.

Text form (round-trippable):  ``{m<=0, k<=m, n>-2} | {0<m}``.  Chained
comparisons like ``-2<m<=0`` are accepted on input and split into atoms.
"""

from __future__ import annotations

import re
from itertools import product

VARS = ('m', 'n', 'k', '0')
_VIDX = {v: i for i, v in enumerate(VARS)}
INF = 10 ** 15  # safely above any sum of 4 atom constants we will ever see


def _fw(mat):
    """Floyd-Warshall in place; returns False if some diagonal goes negative."""
    rng = range(4)
    for t in rng:
        row_t = mat[t]
        for x in rng:
            d = mat[x][t]
            if d >= INF:
                continue
            row_x = mat[x]
            for y in rng:
                leg = row_t[y]
                if leg >= INF:
                    continue
                alt = d + leg
                if alt < row_x[y]:
                    row_x[y] = alt
    return all(mat[i][i] >= 0 for i in rng)


class Cell:
    """Nonempty conjunction of difference atoms, stored as its closure matrix.

    The closure matrix is canonical: two cells describe the same subset of
    Z^3 iff their matrices are equal.  Use ``cell(...)`` to build one (it
    returns None for infeasible atom sets).
    """

    __slots__ = ('cl', '_hash', '_min')

    def __init__(self, cl):
        self.cl = cl
        self._hash = hash(cl)
        self._min = None

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Cell) and self.cl == other.cl

    def closure_atoms(self):
        """Every finite bound of the closure matrix (complete, not minimal)."""
        cl = self.cl
        return [(VARS[x], VARS[y], cl[x][y])
                for x in range(4) for y in range(4)
                if x != y and cl[x][y] < INF]

    def atoms(self):
        """A minimal atom list with the same closure (greedy removal).

        Plain transitive reduction is wrong on equality cycles (m=n=k makes
        every bound implied by the other two), so each removal is verified
        by recomputing the closure.
        """
        if self._min is not None:
            return self._min
        keep = self.closure_atoms()
        i = 0
        while i < len(keep):
            trial = keep[:i] + keep[i + 1:]
            if _closure_of(trial) == self.cl:
                keep = trial
            else:
                i += 1
        self._min = keep
        return keep

    def contains(self, pt):
        m, n, k = pt
        vals = (m, n, k, 0)
        cl = self.cl
        return all(cl[x][y] >= INF or vals[x] - vals[y] <= cl[x][y]
                   for x in range(4) for y in range(4) if x != y)

    def implies_atom(self, atom):
        x, y, c = atom
        return self.cl[_VIDX[x]][_VIDX[y]] <= c

    def subset_of(self, other: 'Cell') -> bool:
        cl, ocl = self.cl, other.cl
        return all(cl[x][y] <= ocl[x][y] for x in range(4) for y in range(4))

    def witness(self):
        """Some integer point of the cell (Bellman-Ford potentials)."""
        dist = [0, 0, 0, 0]
        edges = [(_VIDX[y], _VIDX[x], c) for x, y, c in self.closure_atoms()]
        for _ in range(5):
            changed = False
            for y, x, c in edges:
                if dist[y] + c < dist[x]:
                    dist[x] = dist[y] + c
                    changed = True
            if not changed:
                break
        z = dist[3]
        return (dist[0] - z, dist[1] - z, dist[2] - z)

    def is_unconstrained(self):
        return not self.closure_atoms()


def _closure_of(atoms):
    """Closure matrix of an atom list, or None when infeasible."""
    mat = [[0 if i == j else INF for j in range(4)] for i in range(4)]
    for x, y, c in atoms:
        xi, yi = _VIDX[x], _VIDX[y]
        if xi == yi:
            if c < 0:
                return None
            continue
        if c < mat[xi][yi]:
            mat[xi][yi] = c
    if not _fw(mat):
        return None
    return tuple(tuple(min(v, INF) for v in row) for row in mat)


def cell(atoms):
    """Build a Cell from (x, y, c) atoms; None if the conjunction is empty."""
    cl = _closure_of(atoms)
    return None if cl is None else Cell(cl)


def _cell_and_atoms(c: Cell, atoms):
    return cell(c.closure_atoms() + list(atoms))


def negate_atom(atom):
    x, y, c = atom
    return (y, x, -c - 1)


class Region:
    """Finite union of cells; set algebra is exact over Z^3."""

    __slots__ = ('cells',)

    def __init__(self, cells=()):
        uniq = []
        for c in cells:
            if c is None:
                continue
            if any(c.subset_of(d) for d in uniq):
                continue
            uniq = [d for d in uniq if not d.subset_of(c)]
            uniq.append(c)
        uniq.sort(key=lambda c: c.cl)
        self.cells = tuple(uniq)

    # -- predicates ---------------------------------------------------

    def is_empty(self):
        return not self.cells

    def contains(self, pt):
        return any(c.contains(pt) for c in self.cells)

    __contains__ = contains

    def subset_of(self, other: 'Region') -> bool:
        return self.subtract(other).is_empty()

    def __eq__(self, other):
        if not isinstance(other, Region):
            return NotImplemented
        if self.cells == other.cells:
            return True
        return self.subset_of(other) and other.subset_of(self)

    def __hash__(self):
        # semantic equality with a structural hash would be wrong; regions
        # are not meant to be dict keys
        raise TypeError('Region is unhashable; compare with ==')

    # -- set algebra ---------------------------------------------------

    def union(self, other: 'Region') -> 'Region':
        return Region(self.cells + other.cells)

    __or__ = union

    def intersect(self, other: 'Region') -> 'Region':
        out = []
        for c in self.cells:
            for d in other.cells:
                out.append(_cell_and_atoms(c, d.atoms()))
        return Region(out)

    __and__ = intersect

    def subtract(self, other: 'Region') -> 'Region':
        pieces = list(self.cells)
        for d in other.cells:
            nxt = []
            datoms = d.atoms()
            for c in pieces:
                if not datoms:
                    continue  # d is all of Z^3
                acc = c
                for i, a in enumerate(datoms):
                    piece = _cell_and_atoms(acc, [negate_atom(a)])
                    if piece is not None:
                        nxt.append(piece)
                    acc = _cell_and_atoms(acc, [a])
                    if acc is None:
                        break
            pieces = nxt
        return Region(pieces)

    __sub__ = subtract

    # -- geometry ------------------------------------------------------

    def coalesce(self) -> 'Region':
        """Merge cells pairwise when their hull adds no points to the union.

        The hull of two closure matrices is their entrywise max (still
        closed); replacing a pair by its hull is safe exactly when the hull
        sticks inside the whole region.  Purely cosmetic: the result is the
        same set with fewer, rounder cells.
        """
        cells = list(self.cells)
        changed = True
        while changed and len(cells) > 1:
            changed = False
            for i in range(len(cells)):
                for j in range(i + 1, len(cells)):
                    hull = Cell(tuple(
                        tuple(max(cells[i].cl[x][y], cells[j].cl[x][y])
                              for y in range(4)) for x in range(4)))
                    if Region([hull]).subtract(self).is_empty():
                        cells = [c for t, c in enumerate(cells)
                                 if t != i and t != j] + [hull]
                        changed = True
                        break
                if changed:
                    break
        return Region(cells)

    def translate(self, dm, dn, dk) -> 'Region':
        delta = {'m': dm, 'n': dn, 'k': dk, '0': 0}
        return Region(cell([(x, y, c + delta[x] - delta[y]) for x, y, c in cl.atoms()])
                      for cl in self.cells)

    def swap_mn(self) -> 'Region':
        ren = {'m': 'n', 'n': 'm', 'k': 'k', '0': '0'}
        return Region(cell([(ren[x], ren[y], c) for x, y, c in cl.atoms()])
                      for cl in self.cells)

    def split_by_atom(self, atom):
        """(region AND atom, region AND NOT atom) — a disjoint partition."""
        yes = Region(_cell_and_atoms(c, [atom]) for c in self.cells)
        no = Region(_cell_and_atoms(c, [negate_atom(atom)]) for c in self.cells)
        return yes, no

    def k_upward_closure(self) -> 'Region':
        """Union of the region with all its +k translates (the D12 direction).

        Dropping every upper bound on k from the *closed* constraint matrix
        is exact: the closure already carries each implied lower<=upper
        combination as an m/n constraint.
        """
        ki = _VIDX['k']
        out = []
        for c in self.cells:
            kept = [(VARS[x], VARS[y], c.cl[x][y])
                    for x in range(4) for y in range(4)
                    if x != y and x != ki and c.cl[x][y] < INF]
            out.append(cell(kept))
        return Region(out)

    def closed_under_k_step(self, step: int) -> bool:
        """True iff pt in region implies pt + (0,0,step) in region."""
        return self.translate(0, 0, step).subset_of(self)

    def line_count(self, anchor):
        """|{i : anchor + i*(1,-1,0) in region}| — an int or None for infinite."""
        m0, n0, k0 = anchor
        base = {'m': m0, 'n': n0, 'k': k0, '0': 0}
        slope = {'m': 1, 'n': -1, 'k': 0, '0': 0}
        intervals = []
        for c in self.cells:
            lo, hi = -INF, INF
            ok = True
            for x, y, cc in c.atoms():
                a = slope[x] - slope[y]
                b = cc - (base[x] - base[y])
                if a == 0:
                    if b < 0:
                        ok = False
                        break
                elif a > 0:
                    hi = min(hi, b // a)
                else:
                    lo = max(lo, -(b // -a))  # ceil(b/a) for a < 0
            if ok and lo <= hi:
                intervals.append((lo, hi))
        if not intervals:
            return 0
        if any(lo <= -INF or hi >= INF for lo, hi in intervals):
            return None
        intervals.sort()
        total = 0
        cur_lo, cur_hi = intervals[0]
        for lo, hi in intervals[1:]:
            if lo > cur_hi + 1:
                total += cur_hi - cur_lo + 1
                cur_lo, cur_hi = lo, hi
            else:
                cur_hi = max(cur_hi, hi)
        total += cur_hi - cur_lo + 1
        return total

    def window(self, radius, center=(0, 0, 0)):
        cm, cn, ck = center
        span = range(-radius, radius + 1)
        return [(cm + a, cn + b, ck + c) for a, b, c in product(span, span, span)
                if self.contains((cm + a, cn + b, ck + c))]

    def witness(self):
        if not self.cells:
            raise ValueError('empty region has no points')
        return self.cells[0].witness()

    # -- text form -------------------------------------------------------

    def __repr__(self):
        return 'Region(%s)' % format_region(self)

    def __str__(self):
        return format_region(self)


ALL = Region([cell([])])
EMPTY = Region([])


def region_from_atoms(*atom_lists) -> Region:
    return Region(cell(list(atoms)) for atoms in atom_lists)


# ---------------------------------------------------------------------------
# text form

_SIDE = re.compile(r'^\s*(?:([mnk])\s*(?:([+-])\s*(\d+))?|([+-]?\d+))\s*$')
_OPS = re.compile(r'(<=|>=|==|<|>|=)')


def _parse_side(text):
    mt = _SIDE.match(text)
    if not mt:
        raise ValueError('cannot parse %r as m/n/k(+-int) or integer' % text)
    if mt.group(4) is not None:
        return '0', int(mt.group(4))
    off = 0
    if mt.group(2):
        off = int(mt.group(3))
        if mt.group(2) == '-':
            off = -off
    return mt.group(1), off


def _atoms_of_comparison(lhs, op, rhs):
    (xv, xo), (yv, yo) = lhs, rhs
    if op in ('>', '>='):
        (xv, xo), (yv, yo) = (yv, yo), (xv, xo)
        op = '<' if op == '>' else '<='
    c = yo - xo
    if op in ('=', '=='):
        return [(xv, yv, c), (yv, xv, -c)]
    if op == '<':
        c -= 1
    return [(xv, yv, c)]


def parse_cell(text):
    text = text.strip()
    if not (text.startswith('{') and text.endswith('}')):
        raise ValueError('cell must be wrapped in braces: %r' % text)
    inner = text[1:-1].strip()
    if not inner:
        return cell([])
    atoms = []
    for chunk in inner.split(','):
        parts = _OPS.split(chunk)
        if len(parts) < 3 or len(parts) % 2 == 0:
            raise ValueError('bad comparison %r' % chunk)
        sides = [_parse_side(p) for p in parts[0::2]]
        ops = parts[1::2]
        for i, op in enumerate(ops):
            atoms.extend(_atoms_of_comparison(sides[i], op, sides[i + 1]))
    return cell(atoms)


def parse_region(text) -> Region:
    text = text.strip()
    if not text:
        return EMPTY
    return Region(parse_cell(part) for part in text.split('|'))


def _fmt_atom(atom):
    x, y, c = atom
    if y == '0':
        return '%s<=%d' % (x, c)
    if x == '0':
        return '%d<=%s' % (-c, y)
    if c == 0:
        return '%s<=%s' % (x, y)
    if c == -1:
        return '%s<%s' % (x, y)
    return '%s<=%s%+d' % (x, y, c)


def format_region(r: Region) -> str:
    if r.is_empty():
        return '{0<0}'
    parts = []
    for c in r.cells:
        atoms = sorted(c.atoms(), key=lambda a: (_VIDX[a[0]], _VIDX[a[1]], a[2]))
        parts.append('{%s}' % ', '.join(_fmt_atom(a) for a in atoms))
    return ' | '.join(parts)
