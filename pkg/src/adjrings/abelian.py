"""Integer normal forms and canonical decompositions of finite abelian groups.

Two consumers: quotients of structure-constant rings (the ambient group is an
explicit direct sum of cyclic p-groups) and opaque addition tables coming from
homomorphism or derivation rings.  Both reduce to a Smith normal form over Z,
so the invariant factors come out canonical and deterministic.
"""

from __future__ import annotations

import itertools

from .errors import BoundError, InvalidStructureError

_KERNEL_CAP = 1 << 22


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n == p**k and k >= 1, or None."""
    if n < 2:
        return None
    p = None
    m = n
    for q in range(2, n + 1):
        if q * q > m:
            p = m if p is None else p
            break
        if m % q == 0:
            p = q
            break
    if p is None:
        return None
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 else None


def smith_normal_form(rows: list[list[int]], cols: int):
    """Diagonalize the lattice spanned by `rows` inside Z^cols.

    Returns (diag, v, vinv) where u @ A @ v is diagonal for some unimodular u,
    diag[i] divides diag[i+1], and vinv is the inverse of v.  Only the column
    transform is tracked; callers never need u.
    """
    m = [list(r) for r in rows]
    n = len(m)
    for r in m:
        if len(r) != cols:
            raise InvalidStructureError("ragged relation matrix")
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
    vinv = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]

    def add_row(src, dst, c):
        md, ms = m[dst], m[src]
        for k in range(cols):
            md[k] += c * ms[k]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_col(src, dst, c):
        # col_dst += c * col_src mirrors as row_src -= c * row_dst on the inverse
        for row in m:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]
        vs, vd = vinv[src], vinv[dst]
        for k in range(cols):
            vs[k] -= c * vd[k]

    def negate_col(i):
        for row in m:
            row[i] = -row[i]
        for row in v:
            row[i] = -row[i]
        vinv[i] = [-x for x in vinv[i]]

    rank = min(n, cols)
    t = 0
    while t < rank:
        # locate a nonzero pivot of minimal magnitude in the trailing block
        best = None
        for i in range(t, n):
            for j in range(t, cols):
                a = m[i][j]
                if a != 0 and (best is None or abs(a) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            swap_rows(bi, t)
        if bj != t:
            swap_cols(bj, t)
        if m[t][t] < 0:
            negate_col(t)
        dirty = False
        for i in range(t + 1, n):
            if m[i][t]:
                q = m[i][t] // m[t][t]
                add_row(t, i, -q)
                if m[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if m[t][j]:
                q = m[t][j] // m[t][t]
                add_col(t, j, -q)
                if m[t][j]:
                    dirty = True
        if dirty:
            continue
        # pivot must divide the rest of the block, else fold the offender in
        piv = m[t][t]
        offender = None
        for i in range(t + 1, n):
            for j in range(t + 1, cols):
                if m[i][j] % piv:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        t += 1

    diag = [m[i][i] if i < n else 0 for i in range(cols)]
    return diag, v, vinv


def quotient_decomposition(moduli: list[int], gen_rows: list[list[int]]):
    """Canonical form of (Z_m1 x ... x Z_md) / <gen_rows>.

    Returns (factors, basis, project): nontrivial invariant factors in
    descending order, a coordinate vector in the ambient group for each factor,
    and project(vec) mapping an ambient vector to quotient coordinates.
    """
    d = len(moduli)
    rows = [list(r) for r in gen_rows]
    for i, q in enumerate(moduli):
        rows.append([q if j == i else 0 for j in range(d)])
    diag, v, vinv = smith_normal_form(rows, d)
    if any(x == 0 for x in diag):
        raise InvalidStructureError("quotient of a finite group came out infinite")
    kept = [i for i in range(d) if diag[i] > 1]
    kept.reverse()  # SNF ascends by divisibility; we want descending exponents
    factors = [diag[i] for i in kept]
    basis = [tuple(vinv[i][j] % moduli[j] for j in range(d)) for i in kept]

    vt = [[v[i][j] for i in range(d)] for j in range(d)]  # columns of v

    def project(vec) -> tuple[int, ...]:
        return tuple(
            sum(vec[i] * vt[j][i] for i in range(d)) % diag[j] for j in kept
        )

    return factors, basis, project


def _table_orders(table, identity: int) -> list[int]:
    n = len(table)
    orders = [0] * n
    for x in range(n):
        acc = x
        k = 1
        while acc != identity:
            acc = table[acc][x]
            k += 1
        orders[x] = k
    return orders


def table_decomposition(table, identity: int):
    """Invariant-factor basis of an abelian group given by its Cayley table.

    Returns (factors, basis, coords): descending nontrivial invariant factors,
    one table index per factor, and a dict mapping every element index to its
    coordinate tuple relative to the basis.
    """
    n = len(table)
    if n == 1:
        return [], [], {identity: ()}
    orders = _table_orders(table, identity)
    # greedy spanning set, largest orders first for a near-tight relation lattice
    by_order = sorted(range(n), key=lambda x: (-orders[x], x))
    span = {identity}
    gens: list[int] = []
    for x in by_order:
        if x in span:
            continue
        gens.append(x)
        new_span = set()
        for s in span:
            acc = s
            for _ in range(orders[x]):
                new_span.add(acc)
                acc = table[acc][x]
        span = new_span
        if len(span) == n:
            break
    if len(span) != n:
        raise InvalidStructureError("spanning set failed to close; table not a group?")

    qs = [orders[g] for g in gens]
    total = 1
    for q in qs:
        total *= q
    if total > _KERNEL_CAP:
        raise BoundError(f"relation search space {total} too large")

    multiples = []
    for g, q in zip(gens, qs):
        row = [identity]
        for _ in range(q - 1):
            row.append(table[row[-1]][g])
        multiples.append(row)

    kernel = []
    for combo in itertools.product(*(range(q) for q in qs)):
        acc = identity
        for mult, c in zip(multiples, combo):
            acc = table[acc][mult[c]]
        if acc == identity and any(combo):
            kernel.append(list(combo))

    k = len(gens)
    factors, basis_rows, _ = quotient_decomposition(qs, kernel)
    basis = []
    for row in basis_rows:
        acc = identity
        for mult, c in zip(multiples, row):
            acc = table[acc][mult[c % len(mult)]]
        basis.append(acc)

    # walk the coordinate grid once to invert the basis map
    coords: dict[int, tuple[int, ...]] = {}
    basis_multiples = []
    for b, f in zip(basis, factors):
        row = [identity]
        for _ in range(f - 1):
            row.append(table[row[-1]][b])
        basis_multiples.append(row)
    for combo in itertools.product(*(range(f) for f in factors)):
        acc = identity
        for mult, c in zip(basis_multiples, combo):
            acc = table[acc][mult[c]]
        if acc in coords:
            raise InvalidStructureError("basis candidate is not independent")
        coords[acc] = tuple(combo)
    if len(coords) != n:
        raise InvalidStructureError("basis does not span the group")
    return factors, basis, coords
