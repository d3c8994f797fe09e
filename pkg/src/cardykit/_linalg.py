"""Dense exact linear algebra over Q(zeta_N) (internal helper).

Matrices are lists of lists of :class:`~cardykit.scalars.Cyc`.  Sizes here are
tiny (hom spaces of a skeletal category), so plain fraction-free-ish Gaussian
elimination is plenty.
"""

from __future__ import annotations

from .scalars import Cyc, ScalarError

Matrix = list[list[Cyc]]


def zeros(rows: int, cols: int, n: int) -> Matrix:
    return [[Cyc.zero(n) for _ in range(cols)] for _ in range(rows)]


def identity(size: int, n: int) -> Matrix:
    out = zeros(size, size, n)
    for i in range(size):
        out[i][i] = Cyc.one(n)
    return out


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return []
    rows, inner, cols = len(a), len(b), len(b[0])
    n = a[0][0].n
    out = zeros(rows, cols, n)
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            x = ai[k]
            if x.is_zero():
                continue
            bk = b[k]
            oi = out[i]
            for j in range(cols):
                if not bk[j].is_zero():
                    oi[j] = oi[j] + x * bk[j]
    return out


def _eliminate(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (copy) and pivot column indices."""
    m = [row[:] for row in m]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inv()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(m: Matrix) -> int:
    return len(_eliminate(m)[1])


def kernel(m: Matrix, n: int) -> list[list[Cyc]]:
    """Basis of the right kernel {x : m x = 0}; n is the conductor."""
    if not m:
        return []
    cols = len(m[0])
    red, pivots = _eliminate(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Cyc.zero(n) for _ in range(cols)]
        vec[fc] = Cyc.one(n)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def solve(m: Matrix, rhs: list[Cyc], n: int) -> list[Cyc] | None:
    """One solution of m x = rhs, or None if inconsistent."""
    if not m:
        return [] if all(x.is_zero() for x in rhs) else None
    cols = len(m[0])
    aug = [row[:] + [rhs[i]] for i, row in enumerate(m)]
    red, pivots = _eliminate(aug)
    sol = [Cyc.zero(n) for _ in range(cols)]
    for r, pc in enumerate(pivots):
        if pc == cols:
            return None  # pivot in the augmented column
        sol[pc] = red[r][cols]
    return sol


def invert(m: Matrix) -> Matrix:
    """Inverse of a square matrix; raises ScalarError when singular."""
    size = len(m)
    if size == 0:
        return []
    n = m[0][0].n
    aug = [m[i][:] + identity(size, n)[i] for i in range(size)]
    red, pivots = _eliminate(aug)
    if pivots != list(range(size)):
        raise ScalarError("matrix not invertible")
    return [row[size:] for row in red]


def det(m: Matrix) -> Cyc:
    size = len(m)
    if size == 0:
        return Cyc.one(1)
    n = m[0][0].n
    m = [row[:] for row in m]
    out = Cyc.one(n)
    for c in range(size):
        p = next((i for i in range(c, size) if not m[i][c].is_zero()), None)
        if p is None:
            return Cyc.zero(n)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out = out * m[c][c]
        inv = m[c][c].inv()
        for i in range(c + 1, size):
            if not m[i][c].is_zero():
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out
