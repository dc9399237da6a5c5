"""Catalog of the thirty base patterns a block can realize.

Every block through a base tableau falls, by the integral-linkage pattern
of its entries, into one of sixteen generic and fourteen singular cases.
For each case the catalog stores the base template over anchor letters and
gap parameters (t, s), the simple subquotient supports as difference-bound
regions whose constants are affine in (t, s), their Loewy layers and
weight-multiplicity growth classes, isomorphism pairs, the labels on which
E21 acts injectively, and the localization recipes that realize every
simple from an E21-injective one.

The data file was generated by decomposing each case at well-separated
parameter values, fitting the affine constants exactly, and re-verifying
the fitted regions against fresh decompositions at held-out parameters.
``reference_*`` fields preserve the companion classification tables this
catalog was checked against, verbatim, even where the computed structure
disagrees; the deviations are asserted one by one in the test suite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .core import GENERIC, SINGULAR, BlockSpec, block_and_shift, make_block
from .regions import EMPTY, Region, region_from_atoms

ANCHORS = {
    'a': Fraction(0),
    'b': Fraction(1, 3),
    'c': Fraction(5, 7),
    'x': Fraction(1, 5),
    'y': Fraction(9, 11),
    'z': Fraction(1, 13),
}


def _entry(tmpl: str, t: int, s: int) -> Fraction:
    """Evaluate a base-template entry like 'a', 'a-t', or 'b-t'."""
    if '-' in tmpl:
        letter, gap = tmpl.split('-')
        return ANCHORS[letter] - {'t': t, 's': s}[gap]
    return ANCHORS[tmpl]


@dataclass(frozen=True)
class PieceTemplate:
    label: str
    layer: int
    multiplicity: str          # 'finite' | 'unbounded' | 'infinite'
    cells: tuple               # cell -> atoms (x, y, (c0, ct, cs))

    def region(self, t: int = 0, s: int = 0) -> Region:
        reg = EMPTY
        for cell_atoms in self.cells:
            atoms = [(x, y, c0 + ct * t + cs * s)
                     for x, y, (c0, ct, cs) in cell_atoms]
            reg = reg.union(region_from_atoms(atoms))
        return reg


@dataclass(frozen=True)
class CaseEntry:
    label: str
    family: str                # 'generic' | 'singular'
    arity: int                 # number of gap parameters (0, 1 or 2)
    base: Tuple[str, ...]
    count: int
    reference_count: int
    pieces: Tuple[PieceTemplate, ...]
    layers: Tuple[Tuple[str, ...], ...]
    reference_series: Tuple[Tuple[str, ...], ...]
    iso_pairs: Tuple[Tuple[str, str], ...]
    iso_classes: int
    e21_injective: Optional[Tuple[str, ...]]
    reference_view: Optional[Dict[str, Tuple[str, ...]]]

    def piece(self, label: str) -> PieceTemplate:
        for p in self.pieces:
            if p.label == label:
                return p
        raise KeyError('%s has no piece %s' % (self.label, label))

    def check_params(self, t: Optional[int], s: Optional[int]) -> Tuple[int, int]:
        if self.arity == 0:
            if t is not None or s is not None:
                raise ValueError('%s takes no gap parameters' % self.label)
            return 0, 0
        if self.arity == 1:
            if t is None or s is not None:
                raise ValueError('%s takes exactly one parameter t' % self.label)
            if not (isinstance(t, int) and t > 0):
                raise ValueError('t must be a positive integer')
            return t, 0
        if t is None or s is None:
            raise ValueError('%s takes two parameters t < s' % self.label)
        if not (isinstance(t, int) and isinstance(s, int) and 0 < t < s):
            raise ValueError('need integers 0 < t < s')
        return t, s

    def instantiate(self, t: Optional[int] = None, s: Optional[int] = None):
        """Concrete (block, [(label, region, layer), ...]) at the parameters."""
        t, s = self.check_params(t, s)
        block = make_block(tuple(_entry(e, t, s) for e in self.base))
        return block, [(p.label, p.region(t, s), p.layer) for p in self.pieces]


@dataclass(frozen=True)
class Realization:
    case: str
    target: str
    op: str                    # 'qd12' | 'd12_twist'
    source_case: str
    source: str
    quot: Tuple[str, ...]
    socle: bool
    quot_after_socle: Tuple[str, ...]
    twist: Optional[str]       # anchor-letter difference, e.g. 'z-y'


def _freeze_piece(p: dict) -> PieceTemplate:
    cells = tuple(tuple((x, y, (c[0], c[1], c[2])) for x, y, c in cell)
                  for cell in p['cells'])
    return PieceTemplate(p['label'], p['layer'], p['multiplicity'], cells)


@lru_cache(maxsize=1)
def load_catalog() -> Dict[str, CaseEntry]:
    doc = json.loads((Path(__file__).parent / 'catalog.json').read_text())
    out = {}
    for label, c in doc['cases'].items():
        out[label] = CaseEntry(
            label=label,
            family=c['family'],
            arity=c['arity'],
            base=tuple(c['base']),
            count=c['count'],
            reference_count=c['reference_count'],
            pieces=tuple(_freeze_piece(p) for p in c['pieces']),
            layers=tuple(tuple(g) for g in c['layers']),
            reference_series=tuple(tuple(g) for g in c['reference_series']),
            iso_pairs=tuple((a, b) for a, b in c['iso_pairs']),
            iso_classes=c['iso_classes'],
            e21_injective=(tuple(c['e21_injective'])
                           if c['e21_injective'] is not None else None),
            reference_view=({k: tuple(v) for k, v in c['reference_view'].items()}
                            if 'reference_view' in c else None),
        )
    return out


@lru_cache(maxsize=1)
def load_realizations() -> Tuple[Realization, ...]:
    doc = json.loads((Path(__file__).parent / 'catalog.json').read_text())
    return tuple(Realization(case=r['case'], target=r['target'], op=r['op'],
                             source_case=r['source_case'], source=r['source'],
                             quot=tuple(r['quot']), socle=r['socle'],
                             quot_after_socle=tuple(r['quot_after_socle']),
                             twist=r['twist'])
                 for r in doc['realizations'])


def case_labels() -> List[str]:
    def key(lab):
        return (lab[0], int(lab[1:]))
    return sorted(load_catalog(), key=key)


def get_case(label: str) -> CaseEntry:
    cases = load_catalog()
    if label not in cases:
        raise KeyError('unknown case %r; expected G1..G16 or C1..C14' % label)
    return cases[label]


_GENERIC_SIG = {
    (0, 0, 'none'): 'G1', (0, 0, 'hi'): 'G2',
    (1, 0, 'none'): 'G3', (1, 0, 'lo'): 'G4', (1, 0, 'hi'): 'G5',
    (1, 1, 'hi'): 'G6', (1, 1, 'none'): 'G7',
    (2, 0, 'none'): 'G8', (2, 0, 'hi'): 'G9', (2, 0, 'lo'): 'G10',
    (2, 1, 'hi'): 'G11', (2, 1, 'lo'): 'G12', (2, 1, 'none'): 'G13',
    (3, 0, 'hi'): 'G14', (3, 0, 'lo'): 'G15', (3, 0, 'none'): 'G16',
}

_SINGULAR_SIG = {
    (): ('C1', 'C2'),
    (1,): ('C3', 'C4'),
    (1, 1): ('C6', 'C5'),
    (2,): ('C8', 'C7'),
    (1, 1, 1): ('C9', 'C10'),
    (2, 1): ('C12', 'C11'),
    (3,): ('C14', 'C13'),
}


def classify_block(base_or_block) -> str:
    """Case label of the block through a base, by integral-linkage pattern.

    Generic blocks are keyed by how many top entries are integrally linked
    to each row-2 entry and which row-2 entry (if any) the bottom entry is
    linked to; the two row-2 entries are interchangeable, so the signature
    is normalized with the more-linked one first.  Singular blocks are
    keyed by the multiset of equal-value groups among the linked tops plus
    the bottom linkage.  The repeated-pair-with-single pattern is only
    catalogued with the single strictly below the pair; the mirrored
    orientation raises.
    """
    if isinstance(base_or_block, BlockSpec):
        block = base_or_block
    else:
        block, _ = block_and_shift(base_or_block)
    v31, v32, v33, v21, v22, v11 = block.base
    tops = (v31, v32, v33)

    def linked(x, y):
        return (x - y).denominator == 1

    if block.kind == GENERIC:
        r1 = sum(linked(w, v21) for w in tops)
        r2 = sum(linked(w, v22) for w in tops)
        if linked(v11, v21):
            side = 1
        elif linked(v11, v22):
            side = 2
        else:
            side = 0
        if (r2, r1) > (r1, r2):
            r1, r2 = r2, r1
            side = {0: 0, 1: 2, 2: 1}[side]
        if r1 == r2 and side == 2:
            side = 1
        v11s = {0: 'none', 1: 'hi', 2: 'lo'}[side]
        return _GENERIC_SIG[(r1, r2, v11s)]

    rho = v21
    vals = sorted((w for w in tops if linked(w, rho)), reverse=True)
    groups = []
    for w in vals:
        if groups and groups[-1][0] == w:
            groups[-1][1] += 1
        else:
            groups.append([w, 1])
    sig = tuple(sorted((g[1] for g in groups), reverse=True))
    if sig == (2, 1):
        pair = next(g[0] for g in groups if g[1] == 2)
        single = next(g[0] for g in groups if g[1] == 1)
        if single > pair:
            raise ValueError(
                'repeated-pair top with the single entry above the pair '
                'is not a catalogued orientation')
    unlinked, linked_case = _SINGULAR_SIG[sig]
    return linked_case if linked(v11, rho) else unlinked
