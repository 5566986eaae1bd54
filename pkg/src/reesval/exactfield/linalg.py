"""Exact linear algebra: a small dense solver and a sparse incremental echelon.

Entries may come from any exact field whose elements support the usual
operators (``gmpy2.mpq``, number field elements, rational functions).
"""

import heapq


def dense_rank(rows):
    """Rank of a list of equal-length rows."""
    return len(_rref(rows)[1])


def _rref(rows):
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve(matrix, rhs):
    """Solve ``matrix * x = rhs`` for a square nonsingular matrix.

    Returns None when the matrix is singular.
    """
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, piv = _rref(aug)
    if len(piv) < n or (piv and piv[-1] == n):
        return None
    return [red[i][n] for i in range(n)]


def nullspace(rows, ncols):
    """Basis of the right kernel of the given rows."""
    if not rows:
        basis = []
        for j in range(ncols):
            v = [0] * ncols
            v[j] = 1
            basis.append(v)
        return basis
    red, piv = _rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = -red[i][f]
        basis.append(v)
    return basis


class Echelon:
    """Incrementally built echelon form of sparse vectors.

    Vectors are dicts mapping a column key to a nonzero entry.  Column keys
    must be mutually comparable; smaller keys are eliminated first, so the
    leading column of every stored row is its smallest key.  Rows are kept
    normalised with leading entry one but are not back-reduced.
    """

    def __init__(self):
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        """Return the residue of ``vec`` modulo the span (no pivot columns)."""
        v = {k: x for k, x in vec.items() if x}
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        while heap:
            col = heapq.heappop(heap)
            if col in seen:
                continue
            seen.add(col)
            c = v.get(col)
            if not c:
                continue
            row = self.rows.get(col)
            if row is None:
                continue
            for k, x in row.items():
                nv = v.get(k, 0) - c * x
                if nv:
                    if k not in v:
                        heapq.heappush(heap, k)
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vec):
        """Insert a vector; return its leading column or None if dependent."""
        r = self.reduce(vec)
        if not r:
            return None
        lead = min(r)
        inv = 1 / r[lead]
        self.rows[lead] = {k: x * inv for k, x in r.items()}
        return lead

    def contains(self, vec):
        return not self.reduce(vec)

    def pivots(self):
        return self.rows.keys()
