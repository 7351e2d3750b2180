"""Pure-Python bitmask kernels.

Subsets of a ground set {0..n-1} are ints with bit i set for element i; a set
system is a list of such masks.  These functions are the hot loops of the
sweep engine; `hullflow._kernels` is the compiled twin with the same
signatures, and `hullflow.kernels` picks whichever is importable.

Empty intersections and empty unions are both 0 by convention.
"""

from __future__ import annotations

IMPLEMENTATION = "python"


def closure_table(n: int, sources: list[int]) -> list[int]:
    """Hull of every subset: table[z] = intersection of all source masks
    containing z (0 when no source mask contains z)."""
    table = [0] * (1 << n)
    for z in range(1 << n):
        acc = -1
        for m in sources:
            if m & z == z:
                acc &= m
        table[z] = 0 if acc == -1 else acc
    return table


def hull_value(sources: list[int], q: int, j: int, k: int) -> int:
    """One of the four hull combinations over a fixed source family:
    k=1 gathers source masks containing q, k=0 those contained in q;
    j=1 intersects the gathered family, j=0 unites it."""
    acc = -1 if j else 0
    hit = False
    for m in sources:
        if (m & q == q) if k else (m & q == m):
            hit = True
            if j:
                acc &= m
            else:
                acc |= m
    if not hit:
        return 0
    return acc


def perm_table(perm: list[int]) -> list[int]:
    """Mask-image table of a point map: table[mask] = {perm[i] : i in mask}."""
    n = len(perm)
    table = [0] * (1 << n)
    for i in range(n):
        bit = 1 << i
        img = 1 << perm[i]
        step = bit << 1
        for base in range(0, 1 << n, step):
            for z in range(base + bit, base + step):
                table[z] |= img
    return table


def image(perm: list[int], mask: int) -> int:
    """Forward image of a mask under a point map."""
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << perm[i]
        mask >>= 1
        i += 1
    return out


def pairwise_closed(masks: list[int]) -> tuple[bool, bool]:
    """(closed under pairwise union, closed under pairwise intersection)."""
    s = set(masks)
    uc = ic = True
    k = len(masks)
    for a in range(k):
        ma = masks[a]
        for b in range(a + 1, k):
            mb = masks[b]
            if ma | mb not in s:
                uc = False
            if ma & mb not in s:
                ic = False
            if not (uc or ic):
                return False, False
    return uc, ic


def commutes_with_closure(ptab: list[int], cl: list[int]) -> bool:
    """True when image(cl(z)) == cl(image(z)) for every subset z."""
    for z in range(len(cl)):
        if ptab[cl[z]] != cl[ptab[z]]:
            return False
    return True


def orbit_blocks(n: int, perms: list[list[int]]) -> list[int]:
    """Partition of the ground set into orbits of the listed point maps,
    as masks in ascending order."""
    seen = 0
    out = []
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


def coherent_block(group_tables: list[list[int]], chi: int, singletons_only: bool) -> bool:
    """True when every pair of nonempty subsets a, b of chi admits a group
    element with image(a) meeting b.  The singleton variant checks only
    one-point pairs (equivalent on orbits)."""
    if chi == 0:
        return True
    if singletons_only:
        points = []
        m = chi
        i = 0
        while m:
            if m & 1:
                points.append(i)
            m >>= 1
            i += 1
        for x in points:
            bx = 1 << x
            for y in points:
                by = 1 << y
                if not any(t[bx] & by for t in group_tables):
                    return False
        return True
    a = chi
    while True:
        b = chi
        while True:
            if not any(t[a] & b for t in group_tables):
                return False
            b = (b - 1) & chi
            if b == 0:
                break
        a = (a - 1) & chi
        if a == 0:
            break
    return True


def trace_coherent(group_tables: list[list[int]], trace: list[int]) -> bool:
    """True when every ordered pair from the trace family admits a group
    element with image(a) meeting b."""
    for a in trace:
        for b in trace:
            if not any(t[a] & b for t in group_tables):
                return False
    return True
