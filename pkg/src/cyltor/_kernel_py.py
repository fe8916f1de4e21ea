"""Pure-Python hot kernels for truncated tensor-series arithmetic.

The compiled extension ``cyltor._kernel`` implements the same functions with
identical semantics; :mod:`cyltor._backend` picks whichever is available.
Series are represented here as bare strata lists: index = degree, entry =
dict mapping monomial tuples to nonzero Fractions.
"""

from fractions import Fraction

_ZERO = Fraction(0)


def mul_strata(a, b, cap):
    """Product of two strata lists, truncated above degree ``cap``."""
    out = [{} for _ in range(cap + 1)]
    for da in range(min(len(a) - 1, cap) + 1):
        sa = a[da]
        if not sa:
            continue
        for db in range(min(len(b) - 1, cap - da) + 1):
            sb = b[db]
            if not sb:
                continue
            tgt = out[da + db]
            for ma, ca in sa.items():
                for mb, cb in sb.items():
                    key = ma + mb
                    prev = tgt.get(key)
                    if prev is None:
                        tgt[key] = ca * cb
                    else:
                        s = prev + ca * cb
                        if s:
                            tgt[key] = s
                        else:
                            del tgt[key]
    return out


def add_into(acc, other, scale):
    """In-place ``acc += scale * other`` on strata lists of equal length."""
    if not scale:
        return acc
    for d in range(len(acc)):
        tgt = acc[d]
        for m, c in other[d].items():
            prev = tgt.get(m)
            if prev is None:
                tgt[m] = c * scale
            else:
                s = prev + c * scale
                if s:
                    tgt[m] = s
                else:
                    del tgt[m]
    return acc
