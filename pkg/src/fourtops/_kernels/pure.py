"""Pure-Python table search used by the oracle-mode enumerators.

``enumerate_operator_tables`` walks every total map ``t`` on a finite lattice
given by index ``0..n-1`` in some linear extension (bottom first, top last)
and keeps the maps that are idempotent and preserve binary meets, optionally
inflationary and optionally fixing the top.  The search assigns ``t[i]`` in
index order and prunes on partial violations, so it stays far below the
``n**n`` naive candidate count.
"""

from __future__ import annotations


def enumerate_operator_tables(
    n: int,
    up_masks: tuple[int, ...],
    meet: tuple[int, ...],
    inflationary: bool,
    top_fixed: bool,
) -> list[tuple[int, ...]]:
    """All idempotent, binary-meet-preserving tables on an n-element lattice.

    ``up_masks[i]`` is the bitmask of indices j with element_i <= element_j;
    ``meet`` is the flattened n*n meet table.  The element order must be a
    linear extension of the lattice order.
    """
    if n == 0:
        return [()]
    results: list[tuple[int, ...]] = []
    table = [0] * n
    top = n - 1

    def admissible(i: int, v: int, must_fix: int) -> bool:
        if inflationary and not up_masks[i] >> v & 1:
            return False
        if top_fixed and i == top and v != top:
            return False
        if must_fix >> i & 1 and v != i:
            return False
        if v < i and table[v] != v:
            return False
        base = i * n
        for k in range(i):
            tk = table[k]
            if up_masks[k] >> i & 1:
                # monotonicity: k <= i forces t[k] <= t[i]
                if not up_masks[tk] >> v & 1:
                    return False
            m = meet[base + k]
            if meet[tk * n + v] != table[m]:
                return False
        return True

    def walk(i: int, must_fix: int) -> None:
        if i == n:
            results.append(tuple(table))
            return
        for v in range(n):
            if admissible(i, v, must_fix):
                table[i] = v
                walk(i + 1, must_fix | 1 << v)
        table[i] = 0

    walk(0, 0)
    return results
