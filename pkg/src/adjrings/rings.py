"""Finite p-rings presented by structure constants.

A ring lives on an additive group Z_{p^e1} + ... + Z_{p^ed}; elements are
coordinate tuples and multiplication is determined by the d*d basis products.
The circle operation x o y = x + y + xy and its quasi-inverses give the
adjoint monoid; the group of quasi-invertible elements is built in adjoint.py.
"""

from __future__ import annotations

import itertools
import json
import math
from pathlib import Path

import numpy as np

from .abelian import prime_power, quotient_decomposition, table_decomposition
from .errors import (
    BudgetError,
    HypothesisError,
    InvalidArgumentError,
    InvalidElementError,
    InvalidStructureError,
)

Element = tuple[int, ...]

ENUM_BUDGET = 100_000_000
_ENUM_CHUNK = 1 << 16


def _is_prime(n: int) -> bool:
    return prime_power(n) == (n, 1)


class FiniteRing:
    """Structure-constant ring on a direct sum of cyclic p-groups.

    `mul[i][j]` is the coordinate vector of the product of basis elements i, j.
    Construction verifies well-definedness (each basis product is killed by the
    additive orders of its factors) and associativity on basis triples, which
    bilinearity extends to the whole ring.
    """

    def __init__(self, p: int, exps, mul, name: str | None = None):
        if not _is_prime(p):
            raise InvalidStructureError(f"p = {p} is not prime")
        exps = tuple(int(e) for e in exps)
        if any(e < 1 for e in exps):
            raise InvalidStructureError("additive exponents must be >= 1")
        self.p = p
        self.exps = exps
        self.dim = len(exps)
        self.moduli = tuple(p**e for e in exps)
        order = 1
        for m in self.moduli:
            order *= m
        self.order = order
        self.name = name or f"ring_p{p}_" + "_".join(map(str, exps))
        self.mul_tensor = tuple(
            tuple(tuple(int(c) % self.moduli[k] for k, c in enumerate(row)) for row in plane)
            for plane in mul
        )
        self._validate()
        self._power_chain: list[tuple[Element, ...]] | None = None

    # -- construction checks -------------------------------------------------

    def _validate(self) -> None:
        d, p = self.dim, self.p
        if len(self.mul_tensor) != d or any(len(plane) != d for plane in self.mul_tensor):
            raise InvalidStructureError("multiplication tensor must be d x d x d")
        for i in range(d):
            for j in range(d):
                entry = self.mul_tensor[i][j]
                if len(entry) != d:
                    raise InvalidStructureError(f"basis product ({i},{j}) has wrong length")
                bound = min(self.exps[i], self.exps[j])
                for k in range(d):
                    step = p ** max(0, self.exps[k] - bound)
                    if entry[k] % step:
                        raise InvalidStructureError(
                            f"ill-defined product: entry ({i},{j},{k}) = {entry[k]} "
                            f"is not a multiple of {step}"
                        )
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    lhs = self._combo(self.mul_tensor[i][j], lambda l: self.mul_tensor[l][k])
                    rhs = self._combo(self.mul_tensor[j][k], lambda l: self.mul_tensor[i][l])
                    if lhs != rhs:
                        raise InvalidStructureError(
                            f"associativity fails on basis triple ({i},{j},{k})"
                        )

    def _combo(self, coeffs, pick) -> Element:
        acc = [0] * self.dim
        for l, c in enumerate(coeffs):
            if c:
                row = pick(l)
                for k in range(self.dim):
                    acc[k] += c * row[k]
        return tuple(a % m for a, m in zip(acc, self.moduli))

    # -- elements -------------------------------------------------------------

    def zero(self) -> Element:
        return (0,) * self.dim

    def elements(self):
        """All elements in lexicographic coordinate order."""
        return (tuple(t) for t in itertools.product(*(range(m) for m in self.moduli)))

    def index(self, x: Element) -> int:
        idx = 0
        for c, m in zip(x, self.moduli):
            idx = idx * m + c
        return idx

    def element(self, idx: int) -> Element:
        coords = []
        for m in reversed(self.moduli):
            coords.append(idx % m)
            idx //= m
        return tuple(reversed(coords))

    def check_element(self, x: Element) -> Element:
        if len(x) != self.dim:
            raise InvalidElementError(f"{x} has {len(x)} coordinates, expected {self.dim}")
        return tuple(c % m for c, m in zip(x, self.moduli))

    # -- arithmetic -----------------------------------------------------------

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def neg(self, x: Element) -> Element:
        return tuple((-a) % m for a, m in zip(x, self.moduli))

    def smul(self, c: int, x: Element) -> Element:
        return tuple((c * a) % m for a, m in zip(x, self.moduli))

    def mul(self, x: Element, y: Element) -> Element:
        acc = [0] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                row = self.mul_tensor[i][j]
                c = xi * yj
                for k in range(self.dim):
                    acc[k] += c * row[k]
        return tuple(a % m for a, m in zip(acc, self.moduli))

    def circle(self, x: Element, y: Element) -> Element:
        return self.add(self.add(x, y), self.mul(x, y))

    def additive_order(self, x: Element) -> int:
        o = 1
        for c, m in zip(x, self.moduli):
            o = max(o, m // math.gcd(m, c))
        return o

    def element_power(self, x: Element, k: int) -> Element:
        if k < 1:
            raise InvalidArgumentError("ring powers need k >= 1")
        acc = x
        for _ in range(k - 1):
            acc = self.mul(acc, x)
        return acc

    def is_nilpotent_element(self, x: Element) -> bool:
        seen = set()
        acc = x
        while acc not in seen:
            if acc == self.zero():
                return True
            seen.add(acc)
            acc = self.mul(acc, x)
        return acc == self.zero()

    def quasi_inverse(self, x: Element) -> Element | None:
        """Two-sided circle inverse of x, or None.

        Exhaustive search; when x is nilpotent the alternating series
        -x + x^2 - x^3 + ... is cross-asserted against the search result.
        """
        zero = self.zero()
        found = [y for y in self.elements() if self.circle(x, y) == zero and self.circle(y, x) == zero]
        if len(found) > 1:
            raise InvalidStructureError(f"{x} has multiple quasi-inverses")
        if not found:
            return None
        y = found[0]
        if self.is_nilpotent_element(x):
            acc = zero
            term = x
            sign = -1
            while term != zero:
                acc = self.add(acc, self.smul(sign, term))
                term = self.mul(term, x)
                sign = -sign
            if acc != y:
                raise InvalidStructureError(f"quasi-inverse series disagrees at {x}")
        return y

    def adjoint_power(self, x: Element, k: int) -> Element:
        """k-fold circle power of x (k >= 0); the 0th power is 0."""
        if k < 0:
            raise InvalidArgumentError("adjoint powers need k >= 0")
        acc = self.zero()
        for _ in range(k):
            acc = self.circle(acc, x)
        return acc

    # -- structural predicates -------------------------------------------------

    def _small_order_elements(self, kappa: int):
        return omega_additive(self, kappa)

    def basis_elements(self) -> list[Element]:
        return [tuple(1 if j == i else 0 for j in range(self.dim)) for i in range(self.dim)]

    def is_left_p_nil(self) -> bool:
        """Every x with px = 0 (4x = 0 when p = 2) satisfies xR = 0."""
        kappa = 2 if self.p == 2 else 1
        basis = self.basis_elements()
        zero = self.zero()
        # products are additive in the right factor, so basis targets suffice
        return all(
            self.mul(x, b) == zero for x in self._small_order_elements(kappa) for b in basis
        )

    def is_right_p_nil(self) -> bool:
        kappa = 2 if self.p == 2 else 1
        basis = self.basis_elements()
        zero = self.zero()
        return all(
            self.mul(b, x) == zero for x in self._small_order_elements(kappa) for b in basis
        )

    def is_p_nil(self) -> bool:
        return self.is_left_p_nil() and self.is_right_p_nil()

    def is_strict_two_nil(self) -> bool:
        """p = 2 only: every x with 2x = 0 annihilates R on one side or the other."""
        if self.p != 2:
            raise HypothesisError("the strict variant is a p = 2 notion")
        basis = self.basis_elements()
        zero = self.zero()
        for x in self._small_order_elements(1):
            if all(self.mul(x, b) == zero for b in basis):
                continue
            if all(self.mul(b, x) == zero for b in basis):
                continue
            return False
        return True

    def additive_exponent_log(self) -> int:
        """m with exp(R,+) = p^m."""
        return max(self.exps, default=0)

    def __repr__(self) -> str:
        return f"FiniteRing({self.name}, order={self.order})"


# -- additive subgroups ---------------------------------------------------------


def additive_closure(ring: FiniteRing, gens) -> tuple[Element, ...]:
    """Subgroup of (R,+) generated by `gens`, as a sorted element tuple."""
    seen = {ring.zero()}
    frontier = [ring.zero()]
    gens = [ring.check_element(g) for g in gens]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = ring.add(s, g)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return tuple(sorted(seen))


def omega_additive(ring: FiniteRing, n: int) -> tuple[Element, ...]:
    """Elements killed by p^n, i.e. the additive omega-n subgroup."""
    if n < 0:
        raise InvalidArgumentError("omega index must be >= 0")
    choices = []
    for e, m in zip(ring.exps, ring.moduli):
        step = ring.p ** max(0, e - n)
        choices.append(range(0, m, step))
    return tuple(sorted(itertools.product(*choices)))


def ring_power_chain(ring: FiniteRing) -> list[tuple[Element, ...]]:
    """[R^1, R^2, ...] down to stabilization; each term a sorted element tuple."""
    if ring._power_chain is not None:
        return ring._power_chain
    basis = ring.basis_elements()
    chain = [tuple(sorted(ring.elements()))]
    while True:
        prev = chain[-1]
        gens = {ring.mul(x, b) for x in prev for b in basis}
        nxt = additive_closure(ring, gens)
        if nxt == prev:
            break
        chain.append(nxt)
        if len(nxt) == 1:
            break
    ring._power_chain = chain
    return chain


def ring_power(ring: FiniteRing, k: int) -> tuple[Element, ...]:
    if k < 1:
        raise InvalidArgumentError("ring powers need k >= 1")
    chain = ring_power_chain(ring)
    return chain[min(k, len(chain)) - 1]


def nilpotency_class_ring(ring: FiniteRing) -> int | None:
    """Least n with R^(n+1) = 0, or None if the power chain stalls above 0."""
    chain = ring_power_chain(ring)
    if len(chain[-1]) != 1:
        return None
    if ring.order == 1:
        return 0
    return len(chain) - 1


def left_annihilator(ring: FiniteRing, targets) -> tuple[Element, ...]:
    """{x : x t = 0 for all t in targets}, verified to be an additive subgroup."""
    targets = [ring.check_element(t) for t in targets]
    zero = ring.zero()
    out = tuple(sorted(x for x in ring.elements() if all(ring.mul(x, t) == zero for t in targets)))
    if additive_closure(ring, out) != out:
        raise InvalidStructureError("annihilator failed subgroup closure")
    return out


def right_annihilator(ring: FiniteRing, targets) -> tuple[Element, ...]:
    """{x : t x = 0 for all t in targets}, verified to be an additive subgroup."""
    targets = [ring.check_element(t) for t in targets]
    zero = ring.zero()
    out = tuple(sorted(x for x in ring.elements() if all(ring.mul(t, x) == zero for t in targets)))
    if additive_closure(ring, out) != out:
        raise InvalidStructureError("annihilator failed subgroup closure")
    return out


def ideal_u(ring: FiniteRing, omega_for_two: int = 1) -> tuple[Element, ...]:
    """Right annihilator of R meeting the additive omega-1 subgroup.

    For p = 2 the omega index is adjustable (1 or 2); the two readings can
    produce different ideals and verification reports both.  Requires a left
    p-nil ring and asserts the result is a nontrivial two-sided ideal when
    R is not the zero ring.
    """
    if omega_for_two not in (1, 2):
        raise InvalidArgumentError("omega variant must be 1 or 2")
    if not ring.is_left_p_nil():
        raise HypothesisError("ideal_u needs a left p-nil ring")
    n = omega_for_two if ring.p == 2 else 1
    ann = set(right_annihilator(ring, list(ring.elements())))
    u = tuple(sorted(ann.intersection(omega_additive(ring, n))))
    basis = ring.basis_elements()
    uset = set(u)
    for x in u:
        for b in basis:
            if ring.mul(x, b) not in uset or ring.mul(b, x) not in uset:
                raise InvalidStructureError("ideal_u is not two-sided")
    if ring.order > 1 and len(u) == 1:
        raise InvalidStructureError("ideal_u came out trivial on a nonzero ring")
    return u


def quotient_ring(ring: FiniteRing, ideal) -> tuple[FiniteRing, "object"]:
    """Quotient by a two-sided ideal, re-based on canonical invariant factors.

    Returns (Q, project) with project mapping parent elements to Q elements.
    """
    ideal = tuple(sorted(ring.check_element(x) for x in ideal))
    if additive_closure(ring, ideal) != ideal:
        raise InvalidArgumentError("ideal is not an additive subgroup")
    iset = set(ideal)
    basis = ring.basis_elements()
    for x in ideal:
        for b in basis:
            if ring.mul(x, b) not in iset or ring.mul(b, x) not in iset:
                raise InvalidArgumentError("subgroup is not a two-sided ideal")
    factors, basis_rows, project = quotient_decomposition(
        list(ring.moduli), [list(x) for x in ideal]
    )
    exps = []
    for f in factors:
        pk = prime_power(f)
        if pk is None or pk[0] != ring.p:
            raise InvalidStructureError("quotient factor is not a power of p")
        exps.append(pk[1])
    lifts = [ring.check_element(row) for row in basis_rows]
    tensor = [[list(project(ring.mul(a, b))) for b in lifts] for a in lifts]
    q = FiniteRing(ring.p, exps, tensor, name=f"{ring.name}/I{len(ideal)}")

    def proj(x: Element) -> Element:
        return tuple(project(ring.check_element(x)))

    return q, proj


def subring_multiples(ring: FiniteRing) -> tuple[FiniteRing, "object"]:
    """The subring {p x} ({4 x} when p = 2), re-based on its own invariant factors.

    Returns (S, embed) with embed mapping S elements back into the parent.
    """
    c = 4 if ring.p == 2 else ring.p
    elems = tuple(sorted({ring.smul(c, x) for x in ring.elements()}))
    lookup = {x: i for i, x in enumerate(elems)}
    table = [[lookup[ring.add(a, b)] for b in elems] for a in elems]
    zero_idx = lookup[ring.zero()]
    factors, basis_idx, coords = table_decomposition(table, zero_idx)
    exps = []
    for f in factors:
        pk = prime_power(f)
        if pk is None or pk[0] != ring.p:
            raise InvalidStructureError("subring factor is not a power of p")
        exps.append(pk[1])
    basis = [elems[i] for i in basis_idx]
    tensor = [[list(coords[lookup[ring.mul(a, b)]]) for b in basis] for a in basis]
    s = FiniteRing(ring.p, exps, tensor, name=f"{c}({ring.name})")

    def embed(x: Element) -> Element:
        acc = ring.zero()
        for cc, b in zip(x, basis):
            acc = ring.add(acc, ring.smul(cc, b))
        return acc

    return s, embed


# -- enumeration ------------------------------------------------------------------


def enumerate_rings(p: int, exps, predicate=None, budget: int = ENUM_BUDGET):
    """Yield every associative structure tensor on the given additive type.

    Candidates run in lexicographic tensor order; only well-defined tensors are
    materialized and associativity is filtered in vectorized batches.  The raw
    candidate count |R|^(d^2) must stay within `budget`.
    """
    exps = tuple(int(e) for e in exps)
    d = len(exps)
    moduli = [p**e for e in exps]
    order = 1
    for m in moduli:
        order *= m
    total = order ** (d * d)
    if total > budget:
        raise BudgetError(f"{total} candidate tensors exceed the budget of {budget}")
    if d == 0:
        ring = FiniteRing(p, (), [], name=f"enum_p{p}_0d")
        if predicate is None or predicate(ring):
            yield ring
        return

    slots = []
    for i in range(d):
        for j in range(d):
            bound = min(exps[i], exps[j])
            for k in range(d):
                step = p ** max(0, exps[k] - bound)
                slots.append(range(0, moduli[k], step))

    mod_arr = np.array(moduli, dtype=np.int64)
    counter = 0
    it = itertools.product(*slots)
    while True:
        chunk = list(itertools.islice(it, _ENUM_CHUNK))
        if not chunk:
            break
        arr = np.array(chunk, dtype=np.int64).reshape(len(chunk), d, d, d)
        lhs = np.einsum("bijl,blkm->bijkm", arr, arr)
        rhs = np.einsum("bjkl,bilm->bijkm", arr, arr)
        ok = (((lhs - rhs) % mod_arr) == 0).all(axis=(1, 2, 3, 4))
        for row, good in zip(chunk, ok):
            if not good:
                counter += 1
                continue
            tensor = [
                [[row[(i * d + j) * d + k] for k in range(d)] for j in range(d)]
                for i in range(d)
            ]
            name = f"enum_p{p}_e{'.'.join(map(str, exps))}_{counter:06d}"
            ring = FiniteRing(p, exps, tensor, name=name)
            counter += 1
            if predicate is None or predicate(ring):
                yield ring


# -- serialization ------------------------------------------------------------------


def ring_to_json(ring: FiniteRing) -> dict:
    return {
        "p": ring.p,
        "exps": list(ring.exps),
        "mul": [[list(entry) for entry in plane] for plane in ring.mul_tensor],
    }


def ring_from_json(obj: dict, name: str | None = None) -> FiniteRing:
    try:
        p = int(obj["p"])
        exps = [int(e) for e in obj["exps"]]
        mul = obj["mul"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidStructureError(f"ring JSON missing or malformed field: {exc}") from exc
    d = len(exps)
    if len(mul) != d:
        raise InvalidStructureError(f"mul tensor has {len(mul)} planes, expected {d}")
    for i, plane in enumerate(mul):
        if len(plane) != d:
            raise InvalidStructureError(f"mul plane {i} has {len(plane)} rows, expected {d}")
        for j, entry in enumerate(plane):
            if len(entry) != d:
                raise InvalidStructureError(
                    f"mul entry ({i},{j}) has {len(entry)} coordinates, expected {d}"
                )
    return FiniteRing(p, exps, mul, name=name)


def load_ring(path: str | Path) -> FiniteRing:
    path = Path(path)
    obj = json.loads(path.read_text())
    return ring_from_json(obj, name=path.stem)


def save_ring(ring: FiniteRing, path: str | Path) -> None:
    Path(path).write_text(json.dumps(ring_to_json(ring), sort_keys=True, indent=1) + "\n")


# -- stock rings ------------------------------------------------------------------


def zero_ring(p: int, exps) -> FiniteRing:
    d = len(exps)
    tensor = [[[0] * d for _ in range(d)] for _ in range(d)]
    return FiniteRing(p, exps, tensor, name=f"zero_p{p}_" + "_".join(map(str, exps)))


def unital_ring(n: int) -> FiniteRing:
    """Z/nZ with identity; n must be a prime power."""
    pk = prime_power(n)
    if pk is None:
        raise InvalidArgumentError(f"{n} is not a prime power")
    p, k = pk
    return FiniteRing(p, [k], [[[1]]], name=f"z{n}")


def multiples_ring(a: int, n: int) -> FiniteRing:
    """The subring aZ/nZ of Z/nZ, with n = p^k and a = p^j (1 <= j < k)."""
    pk = prime_power(n)
    if pk is None:
        raise InvalidArgumentError(f"{n} is not a prime power")
    p, k = pk
    pj = prime_power(a)
    if pj is None or pj[0] != p or not 1 <= pj[1] < k:
        raise InvalidArgumentError(f"{a} must be a proper p-power divisor of {n}")
    j = pj[1]
    # generator a has additive order n/a; a*a = a*(a) in that basis
    return FiniteRing(p, [k - j], [[[a % (n // a)]]], name=f"{a}z{n}")
