"""Finite groups as Cayley tables, with the p-group toolbox.

Everything operates on element indices into an order <= 256 multiplication
table.  Construction validates the table (identity, Latin square, full
associativity), so downstream code can trust indexing blindly.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .abelian import prime_power, table_decomposition
from .errors import (
    BoundError,
    InvalidArgumentError,
    InvalidElementError,
    InvalidStructureError,
)

MAX_ORDER = 256
SUBGROUP_BOUND = 128


class FiniteGroup:
    """A finite group of order <= 256 given by its multiplication table."""

    def __init__(self, table, identity: int = 0, name: str = "G"):
        tab = np.asarray(table, dtype=np.int32)
        n = tab.shape[0]
        if tab.ndim != 2 or tab.shape[1] != n:
            raise InvalidStructureError("multiplication table must be square")
        if n > MAX_ORDER:
            raise BoundError(f"group order {n} exceeds the supported maximum {MAX_ORDER}")
        if tab.min() < 0 or tab.max() >= n:
            raise InvalidStructureError("table entries must be element indices")
        if not 0 <= identity < n:
            raise InvalidElementError(f"identity index {identity} out of range")
        if not (tab[identity] == np.arange(n)).all() or not (tab[:, identity] == np.arange(n)).all():
            raise InvalidStructureError("identity row/column is not the identity map")
        srt = np.sort(tab, axis=1)
        if not (srt == np.arange(n)).all() or not (np.sort(tab, axis=0).T == np.arange(n)).all():
            raise InvalidStructureError("table is not a Latin square")
        if not (tab[tab, :] == tab[:, tab]).all():
            raise InvalidStructureError("multiplication is not associative")
        tab.flags.writeable = False
        self.table = tab
        self.n = n
        self.identity = identity
        self.name = name
        self._cache: dict = {}

    # -- basics ----------------------------------------------------------------

    def mult(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @property
    def inverses(self) -> np.ndarray:
        if "inv" not in self._cache:
            inv = np.argmax(self.table == self.identity, axis=1).astype(np.int32)
            self._cache["inv"] = inv
        return self._cache["inv"]

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        acc = self.identity
        base = a
        while k:
            if k & 1:
                acc = self.mult(acc, base)
            base = self.mult(base, base)
            k >>= 1
        return acc

    @property
    def element_orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            n = self.n
            orders = np.zeros(n, dtype=np.int64)
            acc = np.arange(n)
            k = 1
            while (orders == 0).any():
                done = (acc == self.identity) & (orders == 0)
                orders[done] = k
                acc = self.table[acc, np.arange(n)]
                k += 1
            self._cache["orders"] = orders
        return self._cache["orders"]

    def order_of(self, a: int) -> int:
        return int(self.element_orders[a])

    def exponent(self) -> int:
        return int(math.lcm(*(int(o) for o in self.element_orders)))

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    @property
    def conj_table(self) -> np.ndarray:
        """conj_table[g, x] = g x g^-1."""
        if "conj" not in self._cache:
            t, inv = self.table, self.inverses
            gx = t  # gx[g, x] = g*x
            self._cache["conj"] = t[gx, inv[:, None]]
        return self._cache["conj"]

    @property
    def comm_table(self) -> np.ndarray:
        """comm_table[x, g] = x^-1 g^-1 x g."""
        if "comm" not in self._cache:
            t, inv = self.table, self.inverses
            left = t[inv[:, None], inv[None, :]]
            right = t
            self._cache["comm"] = t[left, right]
        return self._cache["comm"]

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        if "ccls" not in self._cache:
            seen = np.zeros(self.n, dtype=bool)
            out = []
            for x in range(self.n):
                if seen[x]:
                    continue
                cls = np.unique(self.conj_table[:, x])
                seen[cls] = True
                out.append(tuple(int(c) for c in cls))
            self._cache["ccls"] = out
        return self._cache["ccls"]

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.n})"


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elems: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elems)

    def __contains__(self, x: int) -> bool:
        return x in set(self.elems)

    def as_group(self, name: str | None = None) -> tuple[FiniteGroup, list[int]]:
        """Re-indexed Cayley table plus the list mapping new indices to parent ones."""
        pos = {e: i for i, e in enumerate(self.elems)}
        arr = np.array(self.elems)
        tab = self.parent.table[np.ix_(arr, arr)]
        reindex = np.full(self.parent.n, -1, dtype=np.int32)
        reindex[arr] = np.arange(len(arr))
        sub = FiniteGroup(reindex[tab], identity=pos[self.parent.identity],
                          name=name or f"{self.parent.name}_sub{len(arr)}")
        return sub, list(self.elems)


def subgroup(G: FiniteGroup, elems) -> Subgroup:
    """Wrap a closed element set as a Subgroup (closure is verified)."""
    elems = tuple(sorted(set(int(e) for e in elems)))
    eset = set(elems)
    if G.identity not in eset:
        raise InvalidArgumentError("subgroup must contain the identity")
    for a in elems:
        for b in elems:
            if int(G.table[a, b]) not in eset:
                raise InvalidArgumentError(f"set not closed: {a}*{b} escapes")
    return Subgroup(G, elems)


def closure(G: FiniteGroup, seed) -> Subgroup:
    """Subgroup generated by `seed` (right-multiplication reachability)."""
    gens = sorted(set(int(s) for s in seed))
    for s in gens:
        if not 0 <= s < G.n:
            raise InvalidElementError(f"element {s} out of range")
    elems = {G.identity}
    frontier = [G.identity]
    t = G.table
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(t[x, g])
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(elems)))


def full_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.n)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,))


def center(G: FiniteGroup) -> Subgroup:
    mask = (G.table == G.table.T).all(axis=1)
    return Subgroup(G, tuple(int(i) for i in np.flatnonzero(mask)))


def centralizer(G: FiniteGroup, elems) -> Subgroup:
    arr = np.array(sorted(set(elems)), dtype=np.int64)
    mask = (G.conj_table[:, arr] == arr[None, :]).all(axis=1)
    return Subgroup(G, tuple(int(i) for i in np.flatnonzero(mask)))


def commutator(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    gens = np.unique(G.comm_table[np.ix_(np.array(A.elems), np.array(B.elems))])
    return closure(G, gens)


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    if "derived" not in G._cache:
        G._cache["derived"] = commutator(G, full_subgroup(G), full_subgroup(G))
    return G._cache["derived"]


def lower_central_series(G: FiniteGroup) -> list[Subgroup]:
    """G = gamma_1 >= gamma_2 >= ... down to stabilization."""
    series = [full_subgroup(G)]
    while True:
        nxt = commutator(G, series[-1], full_subgroup(G))
        if nxt.elems == series[-1].elems:
            break
        series.append(nxt)
    return series


def upper_central_series(G: FiniteGroup) -> list[Subgroup]:
    """1 = Z_0 <= Z_1 <= ... up to stabilization."""
    series = [trivial_subgroup(G)]
    while True:
        zbool = np.zeros(G.n, dtype=bool)
        zbool[list(series[-1].elems)] = True
        mask = zbool[G.comm_table].all(axis=1)
        nxt = Subgroup(G, tuple(int(i) for i in np.flatnonzero(mask)))
        if nxt.elems == series[-1].elems:
            break
        series.append(nxt)
    return series


def nilpotency_class(G: FiniteGroup) -> int | None:
    series = lower_central_series(G)
    if series[-1].order != 1:
        return None
    return len(series) - 1


def power_map(G: FiniteGroup, k: int) -> np.ndarray:
    acc = np.full(G.n, G.identity, dtype=np.int32)
    base = np.arange(G.n, dtype=np.int32)
    kk = k
    while kk:
        if kk & 1:
            acc = G.table[acc, base]
        base = G.table[base, base]
        kk >>= 1
    return acc


def prime_of(G: FiniteGroup) -> int | None:
    """p when |G| is a nontrivial p-power, else None."""
    pk = prime_power(G.n)
    return pk[0] if pk else None


def agemo(G: FiniteGroup, n: int) -> Subgroup:
    """Subgroup generated by p^n-th powers (G must be a p-group)."""
    p = prime_of(G)
    if p is None and G.n > 1:
        raise InvalidArgumentError("agemo needs a p-group")
    if G.n == 1:
        return trivial_subgroup(G)
    return closure(G, np.unique(power_map(G, p**n)))


def omega_set(G: FiniteGroup, n: int) -> tuple[int, ...]:
    """Elements of order dividing p^n, as a sorted index tuple."""
    p = prime_of(G)
    if p is None and G.n > 1:
        raise InvalidArgumentError("omega needs a p-group")
    if G.n == 1:
        return (G.identity,)
    q = p**n
    return tuple(int(i) for i in np.flatnonzero(q % G.element_orders == 0))


def omega_subgroup(G: FiniteGroup, n: int) -> Subgroup:
    return closure(G, omega_set(G, n))


def lower_p_central_series(G: FiniteGroup) -> list[Subgroup]:
    """G = P_1 >= P_2 >= ... with P_{i+1} = P_i^p [P_i, G], down to 1.

    The second term is asserted to be the Frattini subgroup.
    """
    p = prime_of(G)
    if p is None and G.n > 1:
        raise InvalidArgumentError("the p-central series needs a p-group")
    series = [full_subgroup(G)]
    while series[-1].order > 1:
        cur = series[-1]
        arr = np.array(cur.elems)
        pows = power_map(G, p)[arr]
        comms = G.comm_table[np.ix_(arr, np.arange(G.n))]
        nxt = closure(G, set(int(x) for x in pows) | set(int(x) for x in np.unique(comms)))
        if nxt.elems == cur.elems:
            raise InvalidStructureError("p-central series stalled; group not a p-group?")
        series.append(nxt)
    if len(series) > 1 and series[1].elems != frattini(G).elems:
        raise InvalidStructureError("second p-central term differs from the Frattini subgroup")
    return series


def frattini(G: FiniteGroup) -> Subgroup:
    """Frattini subgroup; for p-groups computed as (commutator)(p-th powers)."""
    if "frattini" in G._cache:
        return G._cache["frattini"]
    p = prime_of(G)
    if G.n == 1:
        out = trivial_subgroup(G)
    elif p is not None:
        gens = set(int(x) for x in np.unique(power_map(G, p)))
        gens |= set(commutator_subgroup(G).elems)
        out = closure(G, gens)
    else:
        out = frattini_via_maximals(G)
    G._cache["frattini"] = out
    return out


def frattini_via_maximals(G: FiniteGroup) -> Subgroup:
    """Intersection of maximal subgroups, from the full subgroup lattice."""
    subs = [s for s in enumerate_subgroups(G) if s.order < G.n]
    if not subs:
        return full_subgroup(G)
    maximal = []
    for h in subs:
        hset = set(h.elems)
        if not any(hset < set(k.elems) for k in subs if k.order > h.order):
            maximal.append(h)
    common = set(maximal[0].elems)
    for h in maximal[1:]:
        common &= set(h.elems)
    return Subgroup(G, tuple(sorted(common)))


def generating_set(G: FiniteGroup) -> list[int]:
    """A minimal generating set (Burnside basis for p-groups, search otherwise)."""
    if G.n == 1:
        return []
    p = prime_of(G)
    if p is not None:
        covered = set(frattini(G).elems)
        gens: list[int] = []
        base = list(covered)
        for x in range(G.n):
            if x in covered:
                continue
            gens.append(x)
            covered = set(closure(G, base + gens).elems)
            if len(covered) == G.n:
                return gens
        raise InvalidStructureError("generating search failed")
    by_order = sorted(range(G.n), key=lambda x: (-G.order_of(x), x))
    for k in range(1, 7):
        for combo in itertools.combinations(by_order, k):
            if closure(G, combo).order == G.n:
                return list(combo)
    raise BoundError("no generating set of size <= 6 found")


def min_generators(G: FiniteGroup) -> int:
    """d(G); for p-groups via the Frattini quotient index."""
    if G.n == 1:
        return 0
    p = prime_of(G)
    if p is not None:
        idx = G.n // frattini(G).order
        pk = prime_power(idx)
        if pk is None or pk[0] != p:
            raise InvalidStructureError("Frattini index is not a p-power")
        return pk[1]
    return len(generating_set(G))


def enumerate_subgroups(G: FiniteGroup, bound: int = SUBGROUP_BOUND) -> list[Subgroup]:
    """Every subgroup exactly once, ascending through prime-index extensions.

    Each subgroup H is grown to <H, g> for g normalizing H with g^q in H (q
    prime), which reaches all subgroups of a solvable group; the run fails
    loudly if the lattice does not reach G itself.
    """
    if G.n > bound:
        raise BoundError(f"subgroup enumeration capped at order {bound}")
    if "subgroups" in G._cache:
        return G._cache["subgroups"]
    t = G.table
    conj = G.conj_table
    primes = sorted(_prime_divisors(G.n))
    pow_maps = {q: power_map(G, q) for q in primes}
    trivial = (G.identity,)
    gens_of: dict[tuple, list[int]] = {trivial: []}
    frontier = [trivial]
    found = {trivial}
    while frontier:
        nxt = []
        for helems in frontier:
            hbool = np.zeros(G.n, dtype=bool)
            hbool[list(helems)] = True
            gens = gens_of[helems]
            norm = np.ones(G.n, dtype=bool)
            for x in gens:
                norm &= hbool[conj[:, x]]
            for q in primes:
                if len(helems) * q > G.n or G.n % (len(helems) * q):
                    continue
                cand = norm & ~hbool & hbool[pow_maps[q]]
                for g in np.flatnonzero(cand):
                    g = int(g)
                    arr = np.array(helems)
                    elems = list(helems)
                    gi = g
                    for _ in range(q - 1):
                        elems.extend(int(x) for x in t[arr, gi])
                        gi = int(t[gi, g])
                    key = tuple(sorted(elems))
                    if key not in found:
                        found.add(key)
                        gens_of[key] = gens + [g]
                        nxt.append(key)
        frontier = nxt
    if tuple(range(G.n)) not in found and G.n > 1:
        raise BoundError("subgroup ascent did not reach the whole group (non-solvable?)")
    subs = [Subgroup(G, k) for k in sorted(found, key=lambda k: (len(k), k))]
    G._cache["subgroups"] = subs
    return subs


def _prime_divisors(n: int) -> set[int]:
    out = set()
    m = n
    q = 2
    while q * q <= m:
        if m % q == 0:
            out.add(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        out.add(m)
    return out


def rank(G: FiniteGroup, bound: int = SUBGROUP_BOUND) -> int:
    """Max of d(H) over all subgroups (0 for the trivial group)."""
    if G.n == 1:
        return 0
    best = 0
    for h in enumerate_subgroups(G, bound=bound):
        best = max(best, subgroup_min_generators(G, h))
    return best


def subgroup_min_generators(G: FiniteGroup, H: Subgroup) -> int:
    """d(H) computed inside the parent table (p-subgroups only need Frattini)."""
    if H.order == 1:
        return 0
    pk = prime_power(H.order)
    if pk is None:
        sub, _ = H.as_group()
        return min_generators(sub)
    p = pk[0]
    arr = np.array(H.elems)
    gens = set(int(x) for x in power_map(G, p)[arr])
    gens |= set(int(x) for x in np.unique(G.comm_table[np.ix_(arr, arr)]))
    phi = closure(G, gens)
    return prime_power(H.order // phi.order)[1]


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup by deterministic first-found normalizer ascent."""
    if prime_power(p) != (p, 1):
        raise InvalidArgumentError(f"{p} is not prime")
    target = 1
    n = G.n
    while n % p == 0:
        target *= p
        n //= p
    cur = trivial_subgroup(G)
    p_power = np.zeros(G.n, dtype=bool)
    for i, o in enumerate(G.element_orders):
        pk = prime_power(int(o))
        p_power[i] = int(o) == 1 or (pk is not None and pk[0] == p)
    while cur.order < target:
        hbool = np.zeros(G.n, dtype=bool)
        hbool[list(cur.elems)] = True
        norm = np.ones(G.n, dtype=bool)
        for x in cur.elems:
            norm &= hbool[G.conj_table[:, x]]
        cand = np.flatnonzero(norm & ~hbool & p_power)
        if len(cand) == 0:
            raise InvalidStructureError("sylow ascent stalled")
        g = int(cand[0])
        cur = closure(G, list(cur.elems) + [g])
    return cur


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    hbool = np.zeros(G.n, dtype=bool)
    hbool[list(H.elems)] = True
    return bool(hbool[G.conj_table[:, list(H.elems)]].all())


def abelian_normal_subgroups(G: FiniteGroup, bound: int = SUBGROUP_BOUND) -> list[Subgroup]:
    """All abelian normal subgroups, ascending by (order, elements)."""
    out = []
    for H in enumerate_subgroups(G, bound=bound):
        arr = np.array(H.elems)
        block = G.table[np.ix_(arr, arr)]
        if (block == block.T).all() and is_normal(G, H):
            out.append(H)
    return out


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, list[int]]:
    """Quotient by a normal subgroup; cosets sorted by least representative.

    Returns (Q, proj) with proj[x] the coset index of element x.
    """
    if not is_normal(G, N):
        raise InvalidArgumentError("quotient needs a normal subgroup")
    narr = np.array(N.elems)
    proj = np.full(G.n, -1, dtype=np.int64)
    reps = []
    for x in range(G.n):
        if proj[x] >= 0:
            continue
        coset = np.sort(G.table[x, narr])
        proj[coset] = len(reps)
        reps.append(int(coset[0]))
    order_ids = sorted(range(len(reps)), key=lambda i: reps[i])
    relabel = {old: new for new, old in enumerate(order_ids)}
    proj = np.array([relabel[int(c)] for c in proj])
    reps = [reps[i] for i in order_ids]
    qtab = proj[G.table[np.ix_(np.array(reps), np.array(reps))]]
    q = FiniteGroup(qtab, identity=int(proj[G.identity]), name=f"{G.name}/N{N.order}")
    return q, [int(x) for x in proj]


def is_p_central(G: FiniteGroup) -> bool:
    """Omega_1 (Omega_2 when p = 2) lies in the center."""
    p = prime_of(G)
    if G.n == 1:
        return True
    if p is None:
        raise InvalidArgumentError("p-centrality is a p-group notion")
    n = 2 if p == 2 else 1
    zset = set(center(G).elems)
    return all(x in zset for x in omega_subgroup(G, n).elems)


def power_commutator_subgroup(G: FiniteGroup) -> Subgroup:
    """gamma_2(G) G^p, with fourth powers in place of p-th powers when p = 2."""
    p = prime_of(G)
    if G.n == 1:
        return trivial_subgroup(G)
    if p is None:
        raise InvalidArgumentError("needs a p-group")
    k = 2 if p == 2 else 1
    gens = set(commutator_subgroup(G).elems) | set(agemo(G, k).elems)
    return closure(G, gens)


def central_target(G: FiniteGroup) -> Subgroup:
    """Center meet commutator-power subgroup: the canonical central target."""
    zset = set(center(G).elems)
    pset = set(power_commutator_subgroup(G).elems)
    return Subgroup(G, tuple(sorted(zset & pset)))


def abelian_invariants(G: FiniteGroup) -> list[int]:
    """Invariant factors of an abelian group, descending."""
    if not G.is_abelian():
        raise InvalidArgumentError("invariants need an abelian group")
    factors, _, _ = table_decomposition([list(map(int, row)) for row in G.table], G.identity)
    return factors


def subgroup_exponent(G: FiniteGroup, H: Subgroup) -> int:
    return int(math.lcm(*(int(G.element_orders[x]) for x in H.elems)))


# -- builders ---------------------------------------------------------------------


def group_from_mult(elements, mult, name: str) -> FiniteGroup:
    """Cayley table from explicit elements and a multiplication callable."""
    pos = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    tab = np.zeros((n, n), dtype=np.int32)
    identity = None
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            c = mult(a, b)
            if c not in pos:
                raise InvalidStructureError(f"product {a}*{b} left the element set")
            tab[i, j] = pos[c]
    for i in range(n):
        if (tab[i] == np.arange(n)).all() and (tab[:, i] == np.arange(n)).all():
            identity = i
            break
    if identity is None:
        raise InvalidStructureError("no identity element")
    return FiniteGroup(tab, identity=identity, name=name)


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def cyclic_group(n: int) -> FiniteGroup:
    return group_from_mult(list(range(n)), lambda a, b: (a + b) % n, f"c{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    elems = list(itertools.product(range(G.n), range(H.n)))
    return group_from_mult(
        elems,
        lambda a, b: (G.mult(a[0], b[0]), H.mult(a[1], b[1])),
        name or f"{G.name}x{H.name}",
    )


def abelian_group(invariants) -> FiniteGroup:
    g = cyclic_group(invariants[0])
    for m in invariants[1:]:
        g = direct_product(g, cyclic_group(m))
    return g


def dihedral_group(order: int) -> FiniteGroup:
    if order < 4 or order % 2:
        raise InvalidArgumentError("dihedral groups here have even order >= 4")
    k = order // 2

    def mult(a, b):
        i, e = a
        l, f = b
        return ((i + (l if e == 0 else -l)) % k, (e + f) % 2)

    return group_from_mult(list(itertools.product(range(k), range(2))), mult, f"d{order}")


def dicyclic_group(order: int) -> FiniteGroup:
    """Dicyclic group of order 4k (quaternion when k is a 2-power)."""
    if order % 4:
        raise InvalidArgumentError("dicyclic groups have order 4k")
    k = order // 4
    m = 2 * k

    def mult(a, b):
        i, e = a
        l, f = b
        base = (i + (l if e == 0 else -l)) % m
        if e and f:
            base = (base + k) % m
        return (base, (e + f) % 2)

    return group_from_mult(list(itertools.product(range(m), range(2))), mult, f"q{order}")


def quaternion_group() -> FiniteGroup:
    return dicyclic_group(8)


def semidirect_cyclic(n: int, m: int, r: int, name: str | None = None) -> FiniteGroup:
    """Z_n x| Z_m where the Z_m generator acts as x -> x^r."""
    if pow(r, m, n) != 1 % n or math.gcd(r, n) != 1:
        raise InvalidArgumentError("action must have order dividing m")

    def mult(a, b):
        i, j = a
        l, f = b
        return ((i + l * pow(r, j, n)) % n, (j + f) % m)

    return group_from_mult(list(itertools.product(range(n), range(m))), mult,
                           name or f"c{n}sc{m}r{r}")


def semidihedral_group(order: int) -> FiniteGroup:
    if order < 16 or order & (order - 1):
        raise InvalidArgumentError("semidihedral groups here have 2-power order >= 16")
    g = semidirect_cyclic(order // 2, 2, order // 4 - 1, name=f"sd{order}")
    return g


def modular_group(order: int) -> FiniteGroup:
    """The modular (Iwasawa) group of order p^k, k >= 3."""
    pk = prime_power(order)
    if pk is None or pk[1] < 3:
        raise InvalidArgumentError("modular groups need order p^k with k >= 3")
    p, k = pk
    return semidirect_cyclic(order // p, p, 1 + order // (p * p), name=f"m{order}")


def heisenberg_group(p: int) -> FiniteGroup:
    """Extraspecial group of order p^3 and exponent p (p odd)."""
    if prime_power(p) != (p, 1) or p == 2:
        raise InvalidArgumentError("needs an odd prime")

    def mult(a, b):
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p, (a[2] + b[2] + a[0] * b[1]) % p)

    return group_from_mult(list(itertools.product(range(p), repeat=3)), mult, f"es_p3_{p}")


def pauli_group() -> FiniteGroup:
    """Central product of Z_4 and D_8 (the order-16 Pauli group)."""

    def mult(a, b):
        k, x, z = a
        l, c, d = b
        return ((k + l + 2 * z * c) % 4, (x + c) % 2, (z + d) % 2)

    elems = list(itertools.product(range(4), range(2), range(2)))
    return group_from_mult(elems, mult, "pauli16")


def c22_semidirect_c4() -> FiniteGroup:
    """(Z_2 x Z_2) x| Z_4 with the generator swapping the factors."""

    def mult(a, b):
        (x, y), j = a
        (z, w), l = b
        if j % 2:
            z, w = w, z
        return (((x + z) % 2, (y + w) % 2), (j + l) % 4)

    elems = [((x, y), j) for x in range(2) for y in range(2) for j in range(4)]
    return group_from_mult(elems, mult, "c22sc4")


def from_permutations(perms, name: str = "permgroup") -> FiniteGroup:
    """Group generated by permutations (tuples of images); product acts left-then-right."""
    degree = len(perms[0])
    ident = tuple(range(degree))
    for p in perms:
        if sorted(p) != list(range(degree)):
            raise InvalidStructureError(f"{p} is not a permutation of 0..{degree - 1}")
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in perms:
                b = tuple(g[a[i]] for i in range(degree))
                if b not in elems:
                    if len(elems) >= MAX_ORDER:
                        raise BoundError("permutation closure exceeded the order cap")
                    elems.add(b)
                    nxt.append(b)
        frontier = nxt
    ordered = sorted(elems)
    return group_from_mult(ordered, lambda a, b: tuple(b[a[i]] for i in range(degree)), name)


def alternating4() -> FiniteGroup:
    return from_permutations([(1, 2, 0, 3), (1, 0, 3, 2)], name="a4")


def group_from_json(obj: dict, name: str | None = None) -> FiniteGroup:
    if "table" in obj:
        try:
            order = int(obj["order"])
            identity = int(obj["identity"])
            table = obj["table"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidStructureError(f"group JSON missing or malformed field: {exc}") from exc
        if len(table) != order:
            raise InvalidStructureError(f"table has {len(table)} rows, expected {order}")
        return FiniteGroup(table, identity=identity, name=name or "file_group")
    if "perm_gens" in obj:
        degree = int(obj.get("degree", 0))
        gens = [tuple(int(x) for x in g) for g in obj["perm_gens"]]
        for g in gens:
            if len(g) != degree:
                raise InvalidStructureError("permutation length does not match degree")
        return from_permutations(gens, name=name or "perm_group")
    raise InvalidStructureError("group JSON needs either a table or perm_gens")


def load_group(path: str | Path) -> FiniteGroup:
    path = Path(path)
    return group_from_json(json.loads(path.read_text()), name=path.stem)


def save_group(G: FiniteGroup, path: str | Path) -> None:
    obj = {"order": G.n, "identity": G.identity, "table": [[int(x) for x in row] for row in G.table]}
    Path(path).write_text(json.dumps(obj, sort_keys=True) + "\n")


_SPECIAL_BUILDERS = {
    "a4": alternating4,
    "pauli16": pauli_group,
    "c22sc4": c22_semidirect_c4,
    "es27": lambda: heisenberg_group(3),
}


def builtin_group(name: str) -> FiniteGroup:
    """Resolve a builtin group name like c12, c4xc2, d8, q8, sd16, m27, es27."""
    if "x" in name:
        parts = name.split("x")
        g = builtin_group(parts[0])
        for part in parts[1:]:
            g = direct_product(g, builtin_group(part))
        g.name = name
        return g
    if name in _SPECIAL_BUILDERS:
        return _SPECIAL_BUILDERS[name]()
    if name == "c4sc4":
        g = semidirect_cyclic(4, 4, 3, name="c4sc4")
        return g
    if name.startswith("es_p3_"):
        return heisenberg_group(int(name[6:]))
    try:
        if name.startswith("sd"):
            return semidihedral_group(int(name[2:]))
        if name.startswith("c"):
            return cyclic_group(int(name[1:]))
        if name.startswith("d"):
            return dihedral_group(int(name[1:]))
        if name.startswith("q"):
            return dicyclic_group(int(name[1:]))
        if name.startswith("m"):
            return modular_group(int(name[1:]))
    except ValueError as exc:
        raise InvalidArgumentError(f"unknown group name {name!r}") from exc
    raise InvalidArgumentError(f"unknown group name {name!r}")
