"""Sparse exact elimination over QQ or GF(p): is a target in the span of given vectors?"""

from __future__ import annotations

from .core import grevlex_key


def _eliminate(row: dict, combo: dict, pivots: dict, ring):
    while True:
        hits = [k for k in row if k in pivots]
        if not hits:
            return
        key = max(hits, key=grevlex_key)
        c = row[key]
        prow, pcombo = pivots[key]
        for k, v in prow.items():
            nv = ring(row.get(k, 0) - c * v)
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
        for i, v in pcombo.items():
            nv = ring(combo.get(i, 0) - c * v)
            if nv:
                combo[i] = nv
            else:
                combo.pop(i, None)


def solve_in_span(vectors: list, target: dict, ring):
    """Coefficients ``a`` with ``sum a_i vectors[i] == target``, or ``None``.

    Vectors are sparse ``{key: coefficient}`` dicts with monomial keys.
    """
    pivots: dict = {}
    for i, v in enumerate(vectors):
        row = {k: ring(c) for k, c in v.items() if ring(c)}
        combo = {i: ring(1)}
        _eliminate(row, combo, pivots, ring)
        if row:
            key = max(row, key=grevlex_key)
            inv = ring.inv(row[key])
            pivots[key] = ({k: ring(c * inv) for k, c in row.items()},
                           {j: ring(c * inv) for j, c in combo.items()})
    row = {k: ring(c) for k, c in target.items() if ring(c)}
    combo: dict = {}
    _eliminate(row, combo, pivots, ring)
    if row:
        return None
    # row == target - sum(combo-derived vectors) with combo stored negated
    return [ring(-combo.get(i, 0)) for i in range(len(vectors))]


def rank(vectors: list, ring) -> int:
    pivots: dict = {}
    for v in vectors:
        row = {k: ring(c) for k, c in v.items() if ring(c)}
        _eliminate(row, {}, pivots, ring)
        if row:
            key = max(row, key=grevlex_key)
            inv = ring.inv(row[key])
            pivots[key] = ({k: ring(c * inv) for k, c in row.items()}, {})
    return len(pivots)
