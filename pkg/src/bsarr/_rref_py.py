"""Pure-Python integer Gauss-Jordan elimination.

Reference twin of the compiled kernel in ``_rref_c.pyx``; both must return
identical output for identical input.
"""
from math import gcd


def _primitive(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g > 1:
        row = [x // g for x in row]
    return row


def int_rref(rows, ncols):
    """Fraction-free Gauss-Jordan elimination over the integers.

    ``rows`` is a list of integer lists of length ``ncols``.  Returns
    ``(reduced, pivots)`` where ``reduced`` holds the nonzero rows, each
    primitive with a positive pivot, zero in every other pivot column, and
    ``pivots`` lists the pivot column of each row.
    """
    work = [list(r) for r in rows if any(r)]
    nrows = len(work)
    pivots = []
    prow = 0
    for c in range(ncols):
        if prow == nrows:
            break
        sel = -1
        for i in range(prow, nrows):
            if work[i][c]:
                sel = i
                break
        if sel < 0:
            continue
        if sel != prow:
            work[prow], work[sel] = work[sel], work[prow]
        p = _primitive(work[prow])
        if p[c] < 0:
            p = [-x for x in p]
        work[prow] = p
        a = p[c]
        for i in range(nrows):
            if i == prow:
                continue
            r = work[i]
            b = r[c]
            if not b:
                continue
            g = gcd(a, b)
            a1 = a // g
            b1 = b // g
            work[i] = _primitive([a1 * r[j] - b1 * p[j] for j in range(ncols)])
        pivots.append(c)
        prow += 1
    out = work[:prow]
    for i, c in enumerate(pivots):
        if out[i][c] < 0:
            out[i] = [-x for x in out[i]]
    return out, pivots
