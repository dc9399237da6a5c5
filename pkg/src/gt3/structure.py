"""Submodule structure: Omega+ bookkeeping, generated submodules, and the
block decomposition into simple subquotients.

Everything here reduces statements about infinite tableau families to exact
set algebra over difference-constraint regions of the shift lattice:

  * Omega+ of a tableau records which adjacent-row entry differences are
    nonnegative integers; it is constant on each simple subquotient.
  * For a generic block, the submodule generated by a tableau has basis
    {Omega+ superset}, a single conjunction of atoms, and the simple
    subquotients are the Omega+ level sets.
  * For a 1-singular block the lattice is cut into finitely many cells fine
    enough that every generator transition (target cell and coefficient
    vanishing) is constant per cell; the submodule generated by a tableau is
    then the reachable set in the induced cell digraph, and the simple
    subquotients are its strongly connected components.

The cell digraph is built straight from the exact singular action rather
than from the printed one-step drop shapes: the derivative tableaux carry a
(m-n)/2 regular term under E12 that the shape list misses, and the digraph
inherits every such transition from the formulas themselves.

The decomposition report lists the simple subquotients in socle order with
exact regions; downstream code (catalog, localization replay) consumes it.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Tuple

from .core import (DERIVATIVE, GENERIC, REGULAR, SINGULAR, BlockSpec,
                   Tableau, canonicalize, entries_of, tau)
from .regions import ALL, EMPTY, INF, VARS, Cell, Region, cell

_AXI = {v: i for i, v in enumerate(VARS)}
_BIG = INF // 2

OMEGA_TRIPLES = ((3, 1, 1), (3, 2, 1), (3, 3, 1),
                 (3, 1, 2), (3, 2, 2), (3, 3, 2),
                 (2, 1, 1), (2, 2, 1))

_EDGE_GENERATORS = ('E12', 'E21', 'E23', 'E32')


def _nonneg_int(x: Fraction) -> bool:
    return x.denominator == 1 and x >= 0


def omega_plus(t: Tableau) -> FrozenSet[tuple]:
    """The set of triples (r, s, p) with entry(r,s) - entry(r-1,p) in Z>=0.

    For derivative tableaux the shift is tau-normalized first, matching the
    convention that their invariant is read off the mirrored regular point.
    """
    shift = t.shift if t.kind == REGULAR else tau(t.shift)
    u = entries_of(t.block, shift)
    out = set()
    for i in range(3):
        if _nonneg_int(u[i] - u[3]):
            out.add((3, i + 1, 1))
        if _nonneg_int(u[i] - u[4]):
            out.add((3, i + 1, 2))
    if _nonneg_int(u[3] - u[5]):
        out.add((2, 1, 1))
    if _nonneg_int(u[4] - u[5]):
        out.add((2, 2, 1))
    return frozenset(out)


def pattern_atoms(block: BlockSpec) -> Dict[tuple, Optional[tuple]]:
    """Map each Omega+ triple to its region atom, or None if never integral."""
    base = block.base
    out = {}
    for i in range(3):
        ci1 = block.int_diff(base[i], base[3])
        ci2 = block.int_diff(base[i], base[4])
        out[(3, i + 1, 1)] = ('m', '0', ci1) if ci1 is not None else None
        out[(3, i + 1, 2)] = ('n', '0', ci2) if ci2 is not None else None
    d1 = block.int_diff(base[3], base[5])
    d2 = block.int_diff(base[4], base[5])
    out[(2, 1, 1)] = ('k', 'm', d1) if d1 is not None else None
    out[(2, 2, 1)] = ('k', 'n', d2) if d2 is not None else None
    return out


def _pattern_region(block: BlockSpec, pattern) -> Region:
    atoms = pattern_atoms(block)
    want = []
    for triple in pattern:
        atom = atoms[triple]
        if atom is None:
            return EMPTY
        want.append(atom)
    c = cell(want)
    return Region([c]) if c is not None else EMPTY


def _equality_region(block: BlockSpec, pattern) -> Region:
    from .regions import negate_atom
    atoms = pattern_atoms(block)
    want = []
    for triple, atom in atoms.items():
        if triple in pattern:
            if atom is None:
                return EMPTY
            want.append(atom)
        elif atom is not None:
            want.append(negate_atom(atom))
    c = cell(want)
    return Region([c]) if c is not None else EMPTY


def simple_basis_generic(t: Tableau) -> Region:
    """Basis region of the simple subquotient through t: its Omega+ level set."""
    if t.block.kind != GENERIC:
        raise ValueError('simple_basis_generic needs a generic block')
    return _equality_region(t.block, omega_plus(t))


def exception_type(t: Tableau) -> str:
    """Which, if any, one-step Omega+ drop shape the tableau matches.

    Read literally off the entries at the tableau's own shift: 'TypeI' when
    the row-1 entry equals the first row-2 entry and m >= n; 'TypeII<i>'
    when the i-th top entry equals the first row-2 entry, the other two top
    entries differ from it, and m >= n.  'None' otherwise.
    """
    u = entries_of(t.block, t.shift)
    m, n, _ = t.shift
    if m >= n:
        if u[3] == u[5]:
            return 'TypeI'
        for i in range(3):
            if u[i] == u[3] and all(u[j] != u[3] for j in range(3) if j != i):
                return 'TypeII%d' % (i + 1)
    return 'None'


class SingularStructure:
    """Cell decomposition of Z^3 plus the action-derived transition digraph.

    Cells are the joint level sets of every wall predicate together with its
    one-step shifts.  Transitions are read off the exact action at probe
    points chosen so that every way a unit move can exit a cell is witnessed:
    for each move direction and each neighbouring cell, the sub-cell of
    points whose step lands there (directly or through the m<->n glue) is
    computed exactly as a difference-constraint slab and probed at a couple
    of points.  Two probes with distinct m (and n) per slab are enough,
    because every linear coefficient factor is constant-vanishing per cell
    by construction and the one quadratic factor per axis has at most one
    integer root strictly between consecutive walls.
    """

    def __init__(self, block: BlockSpec):
        if block.kind != SINGULAR:
            raise ValueError('SingularStructure needs a singular block')
        self.block = block
        self.p_atoms = pattern_atoms(block)
        self._build_cells()
        self._build_edges()
        self._condense()

    # -- cell construction ------------------------------------------------
    def _build_cells(self):
        walls: Dict[Tuple[str, str], set] = {}
        for a in self.p_atoms.values():
            if a is not None:
                walls.setdefault((a[0], a[1]), set()).add(a[2])
        walls.setdefault(('m', 'n'), set()).add(0)
        self.axes = []
        for (x, y), consts in sorted(walls.items()):
            cuts = sorted({c + o for c in consts for o in (-1, 0, 1)})
            self.axes.append((x, y, tuple(cuts)))
        # every feasible vector of per-axis zones is one cell
        partial = [((), [])]
        for x, y, cuts in self.axes:
            nxt = []
            for zones, atoms in partial:
                for z in range(len(cuts) + 1):
                    more = list(atoms)
                    if z < len(cuts):
                        more.append((x, y, cuts[z]))
                    if z > 0:
                        more.append((y, x, -cuts[z - 1] - 1))
                    if cell(more) is not None:
                        nxt.append((zones + (z,), more))
            partial = nxt
        self.cells: List[Cell] = []
        self._zone_index: Dict[tuple, int] = {}
        for zones, atoms in partial:
            self._zone_index[zones] = len(self.cells)
            self.cells.append(cell(atoms))
        self.witness = [c.witness() for c in self.cells]
        self.sign = []
        self.patterns = []
        for w in self.witness:
            m, n, _ = w
            self.sign.append('<' if m < n else ('=' if m == n else '>'))
            kind = REGULAR if m <= n else DERIVATIVE
            self.patterns.append(omega_plus(Tableau(self.block, w, kind)))

    def cell_of(self, point) -> int:
        coords = {'m': point[0], 'n': point[1], 'k': point[2], '0': 0}
        zones = tuple(bisect_left(cuts, coords[x] - coords[y])
                      for x, y, cuts in self.axes)
        return self._zone_index[zones]

    # -- transition digraph -------------------------------------------------
    def _image_cell(self, cid: int, delta, glued: bool) -> Cell:
        """Constraint system of the one-step targets {p + delta : p in cell},
        reflected through the m<->n glue when ``glued``."""
        off = {'m': delta[0], 'n': delta[1], 'k': delta[2], '0': 0}
        atoms = [(x, y, c + off[x] - off[y])
                 for x, y, c in self.cells[cid].closure_atoms()]
        if glued:
            ren = {'m': 'n', 'n': 'm', 'k': 'k', '0': '0'}
            atoms = [(ren[x], ren[y], c) for x, y, c in atoms]
        return cell(atoms)

    def _probes(self, cid: int):
        """Points of the cell witnessing every possible cell-exit of a move."""
        w0 = self.witness[cid]
        got = {w0}
        c = self.cells[cid]
        for dm, dn, dk in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)):
            p = (w0[0] + dm, w0[1] + dn, w0[2] + dk)
            if c.contains(p):
                got.add(p)
        deltas = ((1, 0, 0), (-1, 0, 0), (0, 1, 0),
                  (0, -1, 0), (0, 0, 1), (0, 0, -1))
        for delta in deltas:
            for glued in (False, True):
                img = self._image_cell(cid, delta, glued)
                cand = []
                for x, y, cuts in self.axes:
                    xi, yi = _AXI[x], _AXI[y]
                    hi = img.cl[xi][yi]
                    lo = -img.cl[yi][xi]
                    z0 = 0 if lo <= -_BIG else bisect_left(cuts, lo)
                    z1 = len(cuts) if hi >= _BIG else bisect_left(cuts, hi)
                    cand.append(range(z0, z1 + 1))
                for zv in product(*cand):
                    tcid = self._zone_index.get(zv)
                    if tcid is None:
                        continue
                    slab = cell(img.closure_atoms()
                                + self.cells[tcid].closure_atoms())
                    if slab is None:
                        continue
                    w = slab.witness()
                    pts = [w]
                    for d2 in ((1, 0, 0), (0, 1, 0)):
                        q = (w[0] + d2[0], w[1] + d2[1], w[2] + d2[2])
                        if slab.contains(q):
                            pts.append(q)
                    for q in pts:
                        if glued:
                            q = (q[1], q[0], q[2])
                        got.add((q[0] - delta[0], q[1] - delta[1],
                                 q[2] - delta[2]))
        return got

    def _build_edges(self):
        from .singular_action import _sing_moves
        self.edges: List[set] = [set() for _ in self.cells]
        for cid in range(len(self.cells)):
            for p in self._probes(cid):
                kind = REGULAR if p[0] <= p[1] else DERIVATIVE
                moves = _sing_moves(self.block, p, kind)
                for g in _EDGE_GENERATORS:
                    for tshift, _tkind, _tco in moves[g]:
                        j = self.cell_of(tshift)
                        if j != cid:
                            self.edges[cid].add(j)

    def _condense(self):
        n = len(self.cells)
        index = [0] * n
        low = [0] * n
        on = [False] * n
        comp = [-1] * n
        stack = []
        counter = [1]
        comps: List[List[int]] = []
        for root in range(n):
            if index[root]:
                continue
            work = [(root, iter(sorted(self.edges[root])))]
            index[root] = low[root] = counter[0]
            counter[0] += 1
            stack.append(root)
            on[root] = True
            while work:
                v, it = work[-1]
                advanced = False
                for w in it:
                    if not index[w]:
                        index[w] = low[w] = counter[0]
                        counter[0] += 1
                        stack.append(w)
                        on[w] = True
                        work.append((w, iter(sorted(self.edges[w]))))
                        advanced = True
                        break
                    if on[w]:
                        low[v] = min(low[v], index[w])
                if advanced:
                    continue
                work.pop()
                if work:
                    pv = work[-1][0]
                    low[pv] = min(low[pv], low[v])
                if low[v] == index[v]:
                    group = []
                    while True:
                        w = stack.pop()
                        on[w] = False
                        comp[w] = len(comps)
                        group.append(w)
                        if w == v:
                            break
                    comps.append(sorted(group))
        self.comp = comp
        self.comps = comps
        succ = [set() for _ in comps]
        for v in range(n):
            for w in self.edges[v]:
                if comp[v] != comp[w]:
                    succ[comp[v]].add(comp[w])
        self.comp_succ = [frozenset(s) for s in succ]
        self._layer = [0] * len(comps)
        self._reach: List[Optional[frozenset]] = [None] * len(comps)
        # Tarjan emits components in reverse topological order, so every
        # successor is finished before its predecessors
        for ci in range(len(comps)):
            kids = self.comp_succ[ci]
            self._layer[ci] = 1 + max((self._layer[j] for j in kids), default=0)
            acc = {ci}
            for j in kids:
                acc |= self._reach[j]
            self._reach[ci] = frozenset(acc)

    # -- queries ------------------------------------------------------------
    def component_of(self, point) -> int:
        return self.comp[self.cell_of(point)]

    def closure_cells(self, point) -> FrozenSet[int]:
        """Cells of the submodule generated by the canonical tableau at point."""
        out = set()
        for ci in self._reach[self.component_of(point)]:
            out.update(self.comps[ci])
        return frozenset(out)

    def layer_of(self, ci: int) -> int:
        return self._layer[ci]

    def region_of(self, cids) -> Region:
        return Region([self.cells[i] for i in cids]).coalesce()


def _structure_cache(block: BlockSpec) -> SingularStructure:
    s = getattr(block, '_structure', None)
    if s is None:
        s = SingularStructure(block)
        object.__setattr__(block, '_structure', s)
    return s


def generated_basis(t: Tableau) -> Region:
    """Basis region of the submodule generated by one canonical tableau."""
    if t.block.kind == GENERIC:
        return _pattern_region(t.block, omega_plus(t))
    sign, tc = canonicalize(t.block, t.shift, t.kind)
    if tc is None:
        return EMPTY
    s = _structure_cache(t.block)
    return s.region_of(s.closure_cells(tc.shift))


# ---------------------------------------------------------------------------
# decomposition into simple subquotients

@dataclass
class SubquotientEntry:
    label: str
    region: Region
    layer: int
    anchor: Tableau

    def to_json(self):
        from .regions import format_region
        return {
            'label': self.label,
            'region': format_region(self.region),
            'layer': self.layer,
            'anchor': {'shift': list(self.anchor.shift), 'kind': self.anchor.kind},
        }


@dataclass
class SubquotientReport:
    block: BlockSpec
    entries: List[SubquotientEntry] = field(default_factory=list)

    def layer_sizes(self) -> List[int]:
        if not self.entries:
            return []
        top = max(e.layer for e in self.entries)
        return [sum(1 for e in self.entries if e.layer == i)
                for i in range(1, top + 1)]

    def labels_by_layer(self) -> List[List[str]]:
        if not self.entries:
            return []
        top = max(e.layer for e in self.entries)
        return [[e.label for e in self.entries if e.layer == i]
                for i in range(1, top + 1)]

    def region(self, label: str) -> Region:
        for e in self.entries:
            if e.label == label:
                return e.region
        raise KeyError(label)

    def to_json(self):
        return {
            'kind': self.block.kind,
            'count': len(self.entries),
            'layers': self.labels_by_layer(),
            'entries': [e.to_json() for e in self.entries],
        }


def _decompose_generic(block: BlockSpec) -> SubquotientReport:
    atoms = pattern_atoms(block)
    live = [tr for tr, a in atoms.items() if a is not None]
    found = []
    for mask in range(1 << len(live)):
        pattern = frozenset(tr for b, tr in enumerate(live) if mask >> b & 1)
        reg = _equality_region(block, pattern)
        if not reg.is_empty():
            found.append((pattern, reg))
    report = SubquotientReport(block)
    sizes = sorted({len(p) for p, _ in found}, reverse=True)
    idx = 1
    for layer, size in enumerate(sizes, start=1):
        group = [(reg.witness(), pattern, reg)
                 for pattern, reg in found if len(pattern) == size]
        for wit, pattern, reg in sorted(group, key=lambda g: g[0]):
            report.entries.append(SubquotientEntry(
                'L%d' % idx, reg, layer, Tableau(block, wit, REGULAR)))
            idx += 1
    return report


def _anchor_of(s: SingularStructure, ci: int) -> Tableau:
    """Deterministic representative: maximal Omega+, regular first, then
    smallest witness."""
    best = min(s.comps[ci],
               key=lambda i: (-len(s.patterns[i]), s.sign[i] == '>',
                              s.witness[i]))
    kind = DERIVATIVE if s.sign[best] == '>' else REGULAR
    return Tableau(s.block, s.witness[best], kind)


def _decompose_singular(block: BlockSpec) -> SubquotientReport:
    s = _structure_cache(block)
    pieces = []
    for ci in range(len(s.comps)):
        pieces.append((s.layer_of(ci), _anchor_of(s, ci),
                       s.region_of(s.comps[ci])))
    pieces.sort(key=lambda p: (p[0], p[1].shift, p[1].kind))
    report = SubquotientReport(block)
    for idx, (layer, anchor, reg) in enumerate(pieces, start=1):
        report.entries.append(SubquotientEntry('L%d' % idx, reg, layer, anchor))
    return report


def decompose_block(block: BlockSpec) -> SubquotientReport:
    """All simple subquotients of a block, socle layer by socle layer."""
    if block.kind == GENERIC:
        return _decompose_generic(block)
    return _decompose_singular(block)


def loewy_layers_generic(block: BlockSpec) -> List[List[str]]:
    """Socle-first grouping of the generic simple subquotients by |Omega+|."""
    if block.kind != GENERIC:
        raise ValueError('loewy_layers_generic needs a generic block')
    return decompose_block(block).labels_by_layer()


def weight_multiplicity(region: Region, anchor: Tableau):
    """Number of basis tableaux in the region sharing the anchor's weight.

    Weights are constant exactly along the (1, -1, 0) shift lines, so this
    is a lattice line count; math.inf signals an unbounded family.
    """
    if not region.contains(tuple(anchor.shift)):
        raise ValueError('anchor outside region')
    count = region.line_count(tuple(anchor.shift))
    return math.inf if count is None else count


_WT_DIR = {'m': 1, 'n': -1, 'k': 0, '0': 0}


def _cell_direction_class(cl, d) -> str:
    """Growth class of lattice line counts of one cell along direction d.

    A direction u lies in the recession cone iff u[x]-u[y] <= 0 for every
    finite closure bound x-y <= c.  Line counts are infinite iff +-d itself
    recedes, and unbounded iff some u and u-d both recede, which is a plain
    difference-constraint feasibility check (no negative cycle).
    """
    n = len(VARS)
    for sgn in (1, -1):
        if all(cl[i][j] >= INF or sgn * (d[VARS[i]] - d[VARS[j]]) <= 0
               for i in range(n) for j in range(n)):
            return 'infinite'
    w = [[INF] * n for _ in range(n)]
    for i in range(n):
        w[i][i] = 0
        for j in range(n):
            if cl[i][j] < INF:
                w[i][j] = min(0, d[VARS[i]] - d[VARS[j]])
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = w[i][k] + w[k][j]
                if via < w[i][j]:
                    w[i][j] = via
    if all(w[i][i] >= 0 for i in range(n)):
        return 'unbounded'
    return 'finite'


def multiplicity_profile(region: Region) -> str:
    """Coarse weight-multiplicity class over a region: 'finite' when the
    line counts along (1, -1, 0) are bounded, 'unbounded' when finite but
    arbitrarily large, 'infinite' when some line is contained entirely."""
    best = 'finite'
    rank = {'finite': 0, 'unbounded': 1, 'infinite': 2}
    for c in region.cells:
        got = _cell_direction_class(c.cl, _WT_DIR)
        if rank[got] > rank[best]:
            best = got
        if best == 'infinite':
            break
    return best
