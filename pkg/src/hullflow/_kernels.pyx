# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled bitmask kernels; signature-compatible twin of _kernels_py.

Masks are machine ints here, so these kernels are limited to ground sets of
at most 30 elements -- far beyond the enumeration caps that gate every
caller.
"""

IMPLEMENTATION = "cython"


def closure_table(int n, list sources):
    cdef int size = 1 << n
    cdef list srcs = list(sources)
    cdef int k = len(srcs)
    cdef int[64] buf
    cdef int i, z, m, acc
    cdef bint hit
    if k > 64:
        return _closure_table_big(n, srcs)
    for i in range(k):
        buf[i] = srcs[i]
    table = [0] * size
    for z in range(size):
        acc = -1
        hit = False
        for i in range(k):
            m = buf[i]
            if m & z == z:
                acc &= m
                hit = True
        table[z] = acc if hit else 0
    return table


def _closure_table_big(int n, list srcs):
    cdef int size = 1 << n
    cdef int z, m, acc
    cdef bint hit
    table = [0] * size
    for z in range(size):
        acc = -1
        hit = False
        for m in srcs:
            if m & z == z:
                acc &= m
                hit = True
        table[z] = acc if hit else 0
    return table


def hull_value(list sources, int q, int j, int k):
    cdef int acc = -1 if j else 0
    cdef bint hit = False
    cdef int m, want
    for m in sources:
        want = (m & q == q) if k else (m & q == m)
        if want:
            hit = True
            if j:
                acc &= m
            else:
                acc |= m
    if not hit:
        return 0
    return acc


def perm_table(perm):
    cdef int n = len(perm)
    cdef int size = 1 << n
    cdef int i, bit, img, step, base, z
    table = [0] * size
    for i in range(n):
        bit = 1 << i
        img = 1 << perm[i]
        step = bit << 1
        for base in range(0, size, step):
            for z in range(base + bit, base + step):
                table[z] = (<int> table[z]) | img
    return table


def image(perm, int mask):
    cdef int out = 0
    cdef int i = 0
    while mask:
        if mask & 1:
            out |= 1 << (<int> perm[i])
        mask >>= 1
        i += 1
    return out


def pairwise_closed(list masks):
    cdef set s = set(masks)
    cdef bint uc = True
    cdef bint ic = True
    cdef int k = len(masks)
    cdef int a, b, ma, mb
    for a in range(k):
        ma = masks[a]
        for b in range(a + 1, k):
            mb = masks[b]
            if (ma | mb) not in s:
                uc = False
            if (ma & mb) not in s:
                ic = False
            if not (uc or ic):
                return False, False
    return uc, ic


def commutes_with_closure(list ptab, list cl):
    cdef int z
    cdef int size = len(cl)
    for z in range(size):
        if ptab[<int> cl[z]] != cl[<int> ptab[z]]:
            return False
    return True


def orbit_blocks(int n, list perms):
    cdef int seen = 0
    cdef int x, y, z, block
    cdef list out = []
    cdef list frontier
    for x in range(n):
        if seen >> x & 1:
            continue
        block = 1 << x
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for p in perms:
                z = p[y]
                if not block >> z & 1:
                    block |= 1 << z
                    frontier.append(z)
        seen |= block
        out.append(block)
    out.sort()
    return out


def coherent_block(list group_tables, int chi, bint singletons_only):
    cdef int a, b, x, y, bx, by
    cdef bint found
    cdef list t
    if chi == 0:
        return True
    if singletons_only:
        for x in range(32):
            if not chi >> x & 1:
                continue
            bx = 1 << x
            for y in range(32):
                if not chi >> y & 1:
                    continue
                by = 1 << y
                found = False
                for t in group_tables:
                    if (<int> t[bx]) & by:
                        found = True
                        break
                if not found:
                    return False
        return True
    a = chi
    while True:
        b = chi
        while True:
            found = False
            for t in group_tables:
                if (<int> t[a]) & b:
                    found = True
                    break
            if not found:
                return False
            b = (b - 1) & chi
            if b == 0:
                break
        a = (a - 1) & chi
        if a == 0:
            break
    return True


def trace_coherent(list group_tables, list trace):
    cdef int a, b
    cdef bint found
    cdef list t
    for a in trace:
        for b in trace:
            found = False
            for t in group_tables:
                if (<int> t[a]) & b:
                    found = True
                    break
            if not found:
                return False
    return True
