# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels for truncated tensor-series arithmetic.

Same contract as cyltor._kernel_py and bit-identical results.  The product
kernel accumulates exact integer numerator/denominator pairs and normalizes
once per output term, which avoids a gcd per partial product.
"""

cimport cython
from cpython.dict cimport PyDict_GetItem, PyDict_SetItem, PyDict_DelItem
from cpython.object cimport PyObject

from fractions import Fraction


def mul_strata(list a, list b, int cap):
    """Product of two strata lists, truncated above degree ``cap``."""
    cdef int da, db, na, nb, dmax_a, dmax_b, d
    cdef dict sa, sb, acc, final
    cdef list work = [dict() for _ in range(cap + 1)]
    cdef PyObject *hit
    cdef object ca_num, ca_den, num, den, key, pair
    na = len(a) - 1
    nb = len(b) - 1
    dmax_a = na if na < cap else cap
    for da in range(dmax_a + 1):
        sa = <dict> a[da]
        if not sa:
            continue
        dmax_b = nb if nb < cap - da else cap - da
        for db in range(dmax_b + 1):
            sb = <dict> b[db]
            if not sb:
                continue
            acc = <dict> work[da + db]
            for ma, ca in sa.items():
                ca_num = ca.numerator
                ca_den = ca.denominator
                for mb, cb in sb.items():
                    key = (<tuple> ma) + (<tuple> mb)
                    num = ca_num * cb.numerator
                    den = ca_den * cb.denominator
                    hit = PyDict_GetItem(acc, key)
                    if hit is NULL:
                        PyDict_SetItem(acc, key, [num, den])
                    else:
                        pair = <object> hit
                        # p/q + num/den = (p*den + num*q) / (q*den)
                        pair[0] = pair[0] * den + num * pair[1]
                        pair[1] = pair[1] * den
    cdef list out = []
    for d in range(cap + 1):
        acc = <dict> work[d]
        final = {}
        for key, pair in acc.items():
            if pair[0]:
                final[key] = Fraction(pair[0], pair[1])
        out.append(final)
    return out


def add_into(list acc, list other, scale):
    """In-place ``acc += scale * other`` on strata lists of equal length."""
    cdef int d, n
    cdef dict tgt, src
    cdef PyObject *hit
    if not scale:
        return acc
    n = len(acc)
    for d in range(n):
        tgt = <dict> acc[d]
        src = <dict> other[d]
        for m, c in src.items():
            hit = PyDict_GetItem(tgt, m)
            if hit is NULL:
                PyDict_SetItem(tgt, m, c * scale)
            else:
                s = (<object> hit) + c * scale
                if s:
                    PyDict_SetItem(tgt, m, s)
                else:
                    PyDict_DelItem(tgt, m)
    return acc
