# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer elimination kernel.

Same contract as _gauss_py: rows are Python lists of arbitrary-precision
ints representing rational vectors up to positive scale.  Entries that
fit a machine word take a C fast path; anything larger falls back to
Python object arithmetic, so results are exact either way.
"""

from cpython.list cimport PyList_GET_ITEM, PyList_SET_ITEM
from cpython.long cimport PyLong_AsLongLongAndOverflow
from cpython.ref cimport Py_INCREF

from math import gcd

DEF SMALL = 2147483647  # products of two small values stay in 63 bits


cdef inline long long _c_gcd(long long x, long long y) noexcept:
    cdef long long t
    if x < 0:
        x = -x
    if y < 0:
        y = -y
    while y:
        t = x % y
        x = y
        y = t
    return x


cdef object _py_gcd(object x, object y):
    cdef int ofx = 0, ofy = 0
    cdef long long cx = PyLong_AsLongLongAndOverflow(x, &ofx)
    cdef long long cy = PyLong_AsLongLongAndOverflow(y, &ofy)
    if not (ofx or ofy):
        return _c_gcd(cx, cy)
    return gcd(x, y)


def normalize_row(v):
    """Divide by the content and make the first nonzero entry positive."""
    cdef Py_ssize_t i, n = len(v)
    cdef object g = 0
    cdef object x
    for i in range(n):
        x = v[i]
        if x:
            g = _py_gcd(g, x)
            if g == 1:
                break
    if g == 0:
        return list(v)
    for i in range(n):
        x = v[i]
        if x:
            if x < 0:
                g = -g
            break
    cdef list out = [None] * n
    cdef int ofx = 0, ofg = 0
    cdef long long cx, cg
    cg = PyLong_AsLongLongAndOverflow(g, &ofg)
    for i in range(n):
        x = v[i]
        if not ofg:
            cx = PyLong_AsLongLongAndOverflow(x, &ofx)
            if not ofx:
                # the division is exact, so C and floor semantics agree
                x = cx // cg
                Py_INCREF(x)
                PyList_SET_ITEM(out, i, x)
                continue
        x = v[i] // g
        Py_INCREF(x)
        PyList_SET_ITEM(out, i, x)
    return out


cdef list _cross(list v, list r, object mv, object mr, Py_ssize_t n):
    """mv*v - mr*r, elementwise, with a machine-word fast path."""
    cdef Py_ssize_t i
    cdef list out = [None] * n
    cdef object a, b, x
    cdef int of_mv = 0, of_mr = 0, of_a = 0, of_b = 0
    cdef long long cmv, cmr, ca, cb
    cdef bint small_mults
    cmv = PyLong_AsLongLongAndOverflow(mv, &of_mv)
    cmr = PyLong_AsLongLongAndOverflow(mr, &of_mr)
    small_mults = (
        not of_mv and not of_mr and -SMALL <= cmv <= SMALL and -SMALL <= cmr <= SMALL
    )
    for i in range(n):
        a = <object>PyList_GET_ITEM(v, i)
        b = <object>PyList_GET_ITEM(r, i)
        if small_mults:
            ca = PyLong_AsLongLongAndOverflow(a, &of_a)
            if not of_a and -SMALL <= ca <= SMALL:
                cb = PyLong_AsLongLongAndOverflow(b, &of_b)
                if not of_b and -SMALL <= cb <= SMALL:
                    x = cmv * ca - cmr * cb
                    Py_INCREF(x)
                    PyList_SET_ITEM(out, i, x)
                    continue
        if b:
            if a:
                x = mv * a - mr * b
            else:
                x = -(mr * b)
        else:
            if a:
                x = mv * a
            else:
                x = a
        Py_INCREF(x)
        PyList_SET_ITEM(out, i, x)
    return out


def reduce_row(v, rows, pivots):
    """Eliminate v at the given pivot columns; return the normalized rest.

    rows must be in echelon form with strictly increasing pivots and
    positive pivot entries.
    """
    cdef list w = list(v)
    cdef list rlist = rows if isinstance(rows, list) else list(rows)
    cdef Py_ssize_t n = len(w)
    cdef Py_ssize_t k, m = len(rlist)
    cdef Py_ssize_t p
    cdef object c, q, g, mv, mr
    cdef list r
    for k in range(m):
        p = pivots[k]
        c = <object>PyList_GET_ITEM(w, p)
        if c:
            r = <list>PyList_GET_ITEM(rlist, k)
            q = <object>PyList_GET_ITEM(r, p)
            g = _py_gcd(c, q)
            mv = q // g
            mr = c // g
            w = _cross(w, r, mv, mr, n)
    return normalize_row(w)


def rref(mat, ncols):
    """Reduced row echelon form of integer rows, up to positive row scale."""
    from bisect import bisect

    cdef list rows = []
    cdef list pivots = []
    cdef Py_ssize_t n = ncols
    cdef Py_ssize_t i, j, k, p
    cdef list w, r, u
    cdef object c, q, g, mu, mr
    for v in mat:
        w = reduce_row(v, rows, pivots)
        p = -1
        for i in range(n):
            if <object>PyList_GET_ITEM(w, i):
                p = i
                break
        if p >= 0:
            k = bisect(pivots, p)
            rows.insert(k, w)
            pivots.insert(k, p)
    for i in range(len(rows) - 1, -1, -1):
        r = <list>PyList_GET_ITEM(rows, i)
        p = pivots[i]
        q = <object>PyList_GET_ITEM(r, p)
        for j in range(i):
            u = <list>PyList_GET_ITEM(rows, j)
            c = <object>PyList_GET_ITEM(u, p)
            if c:
                g = _py_gcd(c, q)
                mu = q // g
                mr = c // g
                rows[j] = normalize_row(_cross(u, r, mu, mr, n))
    return rows, pivots
