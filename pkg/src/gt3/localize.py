"""Localization functors on simple supports, and the realization replay.

E21 moves the bottom entry down the k-line.  On a simple piece L(R) its
behaviour is read off the support region R directly: injective iff R is
closed under k - 1, surjective iff closed under k + 1.  Two functors act
on supports:

  * qd12: the quotient of the k-upward closure by the module itself,
    defined on E21-injective pieces; support = closure(R) minus R.
  * d12 with a twist: localization followed by twisting the bottom entry
    by a non-integral x; support = the full k-cylinder over R, and the
    twist transports the result to the block whose bottom anchor differs
    by x.

Every catalogued simple arises from an E21-injective one by a short recipe
in these functors (a quotient before the socle, optionally the socle, a
quotient after).  replay() re-executes one recipe as exact region
arithmetic; replay_all() covers the whole table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .catalog import ANCHORS, Realization, get_case, load_realizations
from .core import BlockSpec
from .regions import EMPTY, Region, cell
from .structure import _structure_cache

DEFAULT_PARAMS = {0: (None, None), 1: (3, None), 2: (2, 5)}


def e21_injective(region: Region) -> bool:
    return region.closed_under_k_step(-1)


def e21_surjective(region: Region) -> bool:
    return region.closed_under_k_step(1)


def e21_bijective(region: Region) -> bool:
    return e21_injective(region) and e21_surjective(region)


def qd12_region(region: Region) -> Region:
    """Support of the localization quotient QD12 L(R) = D12 L(R) / L(R)."""
    return region.k_upward_closure().subtract(region)


def d12_region(region: Region) -> Region:
    """Support of the twisted localization: the full k-cylinder over R.

    Dropping the k-constraints from each *closed* cell is exact because
    the closure already propagated every k-mediated bound into an m/n
    bound.
    """
    out = EMPTY
    for c in region.cells:
        atoms = [(x, y, cv) for x, y, cv in c.closure_atoms()
                 if 'k' not in (x, y)]
        out = out.union(Region([cell(atoms)]))
    return out


def injective_labels(case_label: str, t: Optional[int] = None,
                     s: Optional[int] = None) -> List[str]:
    """Labels of the case's pieces on which E21 acts injectively."""
    _, pieces = get_case(case_label).instantiate(t, s)
    return [lab for lab, reg, _ in pieces if e21_injective(reg)]


def socle_labels(block: BlockSpec, labels, piece_map) -> List[str]:
    """Labels whose pieces form the socle of the union of the given pieces.

    A piece lies in the socle iff nothing else in the union is reachable
    from it through the transition graph of the block.
    """
    s = _structure_cache(block)
    comp = {lab: s.component_of(piece_map[lab].witness()) for lab in labels}
    incomp = set(comp.values())
    out = []
    for lab in labels:
        if set(s._reach[comp[lab]]) & incomp <= {comp[lab]}:
            out.append(lab)
    return out


@dataclass(frozen=True)
class ReplayResult:
    realization: Realization
    params: Tuple[Optional[int], Optional[int]]
    ok: bool
    expected: Region
    computed: Region


def replay(rz: Realization, t: Optional[int] = None,
           s: Optional[int] = None) -> ReplayResult:
    """Re-derive one realization row as exact region arithmetic."""
    tgt_case = get_case(rz.case)
    src_case = get_case(rz.source_case)
    if tgt_case.arity != src_case.arity:
        raise ValueError('realization %s <- %s mixes arities'
                         % (rz.case, rz.source_case))
    if t is None and s is None and tgt_case.arity:
        t, s = DEFAULT_PARAMS[tgt_case.arity]
    src_block, src_pieces = src_case.instantiate(t, s)
    _, tgt_pieces = tgt_case.instantiate(t, s)
    src_map = {lab: reg for lab, reg, _ in src_pieces}
    tgt_map = {lab: reg for lab, reg, _ in tgt_pieces}
    expected = tgt_map[rz.target]

    if rz.op == 'd12_twist':
        # the twist transports the cylinder to the target block; check the
        # recorded anchor difference matches and is not an integer
        lt, ls = rz.twist.split('-')
        x = ANCHORS[lt] - ANCHORS[ls]
        if x.denominator == 1:
            raise ValueError('twist %s evaluates to an integer' % rz.twist)
        tv = _entry_v11(tgt_case) - _entry_v11(src_case)
        if tv != x:
            raise ValueError('twist %s does not move %s onto %s'
                             % (rz.twist, rz.source_case, rz.case))
        computed = d12_region(src_map[rz.source])
        return ReplayResult(rz, (t, s), computed == expected, expected, computed)

    q = qd12_region(src_map[rz.source])
    for lab in rz.quot:
        q = q.subtract(src_map[lab])
    if rz.socle:
        inside = [lab for lab, reg, _ in src_pieces
                  if reg.subtract(q).is_empty()]
        union = EMPTY
        for lab in inside:
            union = union.union(src_map[lab])
        if union != q:
            raise ValueError('quotient is not a union of pieces')
        keep = socle_labels(src_block, inside, src_map)
        q = EMPTY
        for lab in keep:
            q = q.union(src_map[lab])
    for lab in rz.quot_after_socle:
        q = q.subtract(src_map[lab])
    return ReplayResult(rz, (t, s), q == expected, expected, q)


def _entry_v11(case_entry):
    tmpl = case_entry.base[5]
    if '-' in tmpl:
        raise ValueError('bottom template %r carries a gap parameter' % tmpl)
    return ANCHORS[tmpl]


def replay_all(params: Optional[Dict[int, Tuple[Optional[int], Optional[int]]]]
               = None) -> List[ReplayResult]:
    """Replay every realization row; params maps arity -> (t, s)."""
    params = params or DEFAULT_PARAMS
    out = []
    for rz in load_realizations():
        arity = get_case(rz.case).arity
        t, s = params[arity]
        out.append(replay(rz, t, s))
    return out
