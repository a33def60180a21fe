# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of pure.enumerate_operator_tables.

Same search, same pruning, same output order; lattices stay small (the
callers cap them well under 64 elements) so up-set masks fit machine words.
"""

from libc.stdlib cimport free, malloc


def enumerate_operator_tables(
    int n,
    tuple up_masks,
    tuple meet,
    bint inflationary,
    bint top_fixed,
):
    if n == 0:
        return [()]
    if n > 64:
        raise ValueError("compiled kernel supports lattices up to 64 elements")
    cdef unsigned long long *up = <unsigned long long *> malloc(n * sizeof(unsigned long long))
    cdef int *mt = <int *> malloc(n * n * sizeof(int))
    cdef int *table = <int *> malloc(n * sizeof(int))
    cdef int *stack_v = <int *> malloc((n + 1) * sizeof(int))
    cdef unsigned long long *stack_fix = <unsigned long long *> malloc((n + 1) * sizeof(unsigned long long))
    if not up or not mt or not table or not stack_v or not stack_fix:
        free(<void *> up)
        free(<void *> mt)
        free(<void *> table)
        free(<void *> stack_v)
        free(<void *> stack_fix)
        raise MemoryError()
    cdef int i, k, v, m, tk, top
    cdef bint ok
    cdef unsigned long long must_fix
    cdef list results = []
    try:
        for i in range(n):
            up[i] = <unsigned long long> up_masks[i]
        for i in range(n * n):
            mt[i] = meet[i]
        top = n - 1
        # iterative depth-first walk: stack_v[i] is the next value to try at
        # slot i, stack_fix[i] the pending-fixpoint set before assigning it
        i = 0
        stack_v[0] = 0
        stack_fix[0] = 0
        while i >= 0:
            if i == n:
                results.append(tuple([table[k] for k in range(n)]))
                i -= 1
                continue
            v = stack_v[i]
            if v >= n:
                i -= 1
                continue
            stack_v[i] = v + 1
            must_fix = stack_fix[i]
            if inflationary and not (up[i] >> v) & 1:
                continue
            if top_fixed and i == top and v != top:
                continue
            if (must_fix >> i) & 1 and v != i:
                continue
            if v < i and table[v] != v:
                continue
            ok = True
            for k in range(i):
                tk = table[k]
                if (up[k] >> i) & 1 and not (up[tk] >> v) & 1:
                    ok = False
                    break
                m = mt[i * n + k]
                if mt[tk * n + v] != table[m]:
                    ok = False
                    break
            if not ok:
                continue
            table[i] = v
            i += 1
            if i <= n:
                stack_v[i] = 0
                stack_fix[i] = must_fix | (<unsigned long long> 1 << v)
        return results
    finally:
        free(<void *> up)
        free(<void *> mt)
        free(<void *> table)
        free(<void *> stack_v)
        free(<void *> stack_fix)
