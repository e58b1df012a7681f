"""Exact Gaussian elimination over QQ or F_p on sparse rows."""

from __future__ import annotations

from typing import Sequence

from .polyring import Field


def _normalize(rows, field: Field):
    out = []
    for r in rows:
        if isinstance(r, dict):
            d = {j: field(v) for j, v in r.items()}
        else:
            d = {j: field(v) for j, v in enumerate(r)}
        d = {j: v for j, v in d.items() if v}
        out.append(d)
    return out


def echelon(rows: Sequence, field: Field) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form of sparse rows.

    Rows are dicts ``{column: value}`` or dense sequences.  Returns the
    nonzero reduced rows (each with pivot coefficient 1) and their pivot
    columns.
    """
    p = field.p
    basis: dict[int, dict] = {}
    for r in _normalize(rows, field):
        for piv, b in basis.items():
            c = r.get(piv)
            if c:
                for j, v in b.items():
                    nv = r.get(j, 0) - c * v
                    if p:
                        nv %= p
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
        if not r:
            continue
        piv = min(r)
        inv = field.inv(r[piv])
        r = {j: (v * inv % p if p else v * inv) for j, v in r.items()}
        for b in basis.values():
            c = b.get(piv)
            if c:
                for j, v in r.items():
                    nv = b.get(j, 0) - c * v
                    if p:
                        nv %= p
                    if nv:
                        b[j] = nv
                    else:
                        b.pop(j, None)
        basis[piv] = r
    pivots = sorted(basis)
    return [basis[k] for k in pivots], pivots


def rank(rows: Sequence, field: Field) -> int:
    return len(echelon(rows, field)[1])


def nullspace(rows: Sequence, ncols: int, field: Field) -> list[list]:
    """Basis of ``{v : A v = 0}`` for the matrix with the given rows."""
    red, pivots = echelon(rows, field)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    p = field.p
    out = []
    for f in free:
        v = [field(0)] * ncols
        v[f] = field(1)
        for r, piv in zip(red, pivots):
            c = r.get(f)
            if c:
                v[piv] = (-c) % p if p else -c
        out.append(v)
    return out


def in_span(vector, rows: Sequence, field: Field) -> bool:
    """True when ``vector`` is a linear combination of ``rows``."""
    return rank(list(rows) + [vector], field) == rank(rows, field)
