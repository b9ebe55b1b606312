"""Exact sparse linear algebra over a coefficient field.

Vectors are dicts ``{column: value}`` holding nonzero entries only.
"""

from __future__ import annotations


class Echelon:
    """Incrementally built row echelon form.

    Every stored row is scaled so that its smallest column (the pivot) holds 1.
    ``reduce`` returns the canonical representative of a vector modulo the
    span: the unique element of the coset with zeros in all pivot columns.
    """

    def __init__(self, field):
        self.F = field
        self.rows: dict = {}
        self._order: list = []

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self):
        return self._order

    def reduce(self, vec: dict) -> dict:
        F = self.F
        v = dict(vec)
        if not v or not self.rows:
            return v
        for p in self._order:
            c = v.get(p)
            if c is None:
                continue
            for col, val in self.rows[p].items():
                s = F.sub(v.get(col, F.zero), F.mul(c, val))
                if s == 0:
                    v.pop(col, None)
                else:
                    v[col] = s
        return v

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return True if it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        self._insert(r)
        return True

    def _insert(self, r: dict):
        F = self.F
        p = min(r)
        inv = F.inv(r[p])
        row = {c: F.mul(inv, v) for c, v in r.items()}
        self.rows[p] = row
        # keep pivots sorted; lists are short
        lo, hi = 0, len(self._order)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._order[mid] < p:
                lo = mid + 1
            else:
                hi = mid
        self._order.insert(lo, p)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def rank(field, rows) -> int:
    E = Echelon(field)
    for r in rows:
        E.add(r)
    return len(E)


def kernel(field, images, ncols: int) -> list:
    """Basis of {c : sum_i c_i * images[i] = 0}, as dicts over source indices.

    ``images[i]`` is the image of the i-th source basis vector, a dict over
    target columns ``0..ncols-1``.
    """
    E = Echelon(field)
    out = []
    for i, img in enumerate(images):
        row = dict(img)
        row[ncols + i] = field.one
        r = E.reduce(row)
        if r and min(r) >= ncols:
            out.append({c - ncols: v for c, v in r.items()})
        elif r:
            E._insert(r)
    return out


def solve_in_span(field, basis, vec) -> dict | None:
    """Coefficients expressing ``vec`` in terms of ``basis`` (list of dicts), or None."""
    E = Echelon(field)
    big = 1 + max([max(b) for b in basis if b] + [max(vec) if vec else 0])
    for i, b in enumerate(basis):
        row = dict(b)
        row[big + i] = field.one
        r = E.reduce(row)
        if r and min(r) < big:
            E._insert(r)
    r = E.reduce(vec)
    if any(c < big for c in r):
        return None
    # vec - sum(tag coefficients) reduced to r: vec = -(r tags)... recover sign
    return {c - big: field.neg(v) for c, v in r.items()}
