"""Monomial complex reflection groups G(r, p, n).

An element is a pair (a | s) with a in (Z_r)^n and s a permutation of
{0, ..., n-1}.  It acts on C^n as the monomial matrix with zeta^(a_i) in row
i, column s^{-1}(i), where zeta = exp(2*pi*I/r).  G(r, p, n) consists of the
pairs whose exponent sum is divisible by p (p must divide r) and has order
r^n * n! / p.

Multiplication matches matrix multiplication:

    (a | s) * (b | t) = (a_i + b_{s^{-1}(i)} | s t),   (s t)(i) = s(t(i)).

Conjugacy in G(r, 1, n) is governed by cycle data: to each cycle of s attach
the pair (cycle size, sum of the exponents along the cycle mod r).  Two
elements are conjugate in G(r, 1, n) exactly when these multisets agree.  For
p > 1 classes may split, so they are computed directly as conjugation orbits.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from math import factorial, gcd, lcm

import numpy as np

from .errors import ParameterError, SizeLimitError

DEFAULT_ENUMERATION_CAP = 20000
ENUMERATION_CAP_ENV = "REFLECTRA_MAX_ORDER"

CycleType = tuple[tuple[int, int], ...]


@dataclass(frozen=True, order=True)
class GroupParams:
    """Parameters (r, p, n) with p dividing r; n is the matrix size."""

    r: int
    p: int
    n: int

    def __post_init__(self) -> None:
        if self.r < 1 or self.p < 1 or self.n < 1:
            raise ParameterError(f"parameters must be positive, got {self}")
        if self.r % self.p != 0:
            raise ParameterError(f"p must divide r, got r={self.r}, p={self.p}")

    @property
    def order(self) -> int:
        return self.r**self.n * factorial(self.n) // self.p

    def __str__(self) -> str:
        return f"G({self.r},{self.p},{self.n})"


@dataclass(frozen=True)
class GroupElement:
    """A monomial matrix (exponents | perm); perm maps positions 0..n-1."""

    r: int
    exponents: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.perm)
        if len(self.exponents) != n:
            raise ParameterError("exponent and permutation lengths differ")
        if self.r < 1:
            raise ParameterError(f"root order must be positive, got {self.r}")
        if any(a < 0 or a >= self.r for a in self.exponents):
            raise ParameterError(f"exponents must lie in [0, {self.r})")
        if sorted(self.perm) != list(range(n)):
            raise ParameterError(f"not a permutation of 0..{n - 1}: {self.perm}")

    @property
    def n(self) -> int:
        return len(self.perm)

    def is_identity(self) -> bool:
        return all(a == 0 for a in self.exponents) and all(
            self.perm[i] == i for i in range(len(self.perm))
        )

    def __mul__(self, other: GroupElement) -> GroupElement:
        return multiply(self, other)

    def inverse(self) -> GroupElement:
        b = tuple((-self.exponents[j]) % self.r for j in self.perm)
        inv = [0] * len(self.perm)
        for i, image in enumerate(self.perm):
            inv[image] = i
        return GroupElement(self.r, b, tuple(inv))

    def __str__(self) -> str:
        return format_element(self)


def identity_element(r: int, n: int) -> GroupElement:
    return GroupElement(r, (0,) * n, tuple(range(n)))


def multiply(x: GroupElement, y: GroupElement) -> GroupElement:
    """Product of two monomial matrices with the same r and n."""
    if x.r != y.r or x.n != y.n:
        raise ParameterError(
            f"mismatched elements: (r={x.r}, n={x.n}) vs (r={y.r}, n={y.n})"
        )
    inv = [0] * x.n
    for i, image in enumerate(x.perm):
        inv[image] = i
    exps = tuple((x.exponents[i] + y.exponents[inv[i]]) % x.r for i in range(x.n))
    perm = tuple(x.perm[y.perm[i]] for i in range(x.n))
    return GroupElement(x.r, exps, perm)


def element_power(x: GroupElement, m: int) -> GroupElement:
    if m < 0:
        return element_power(x.inverse(), -m)
    out = identity_element(x.r, x.n)
    base = x
    while m:
        if m & 1:
            out = multiply(out, base)
        base = multiply(base, base)
        m >>= 1
    return out


def cycle_type(x: GroupElement) -> CycleType:
    """Sorted multiset of (cycle size, exponent sum along the cycle mod r)."""
    n = x.n
    seen = [False] * n
    pairs = []
    for start in range(n):
        if seen[start]:
            continue
        size, total, i = 0, 0, start
        while not seen[i]:
            seen[i] = True
            total += x.exponents[i]
            size += 1
            i = x.perm[i]
        pairs.append((size, total % x.r))
    return tuple(sorted(pairs))


def element_order(x: GroupElement) -> int:
    # a cycle of size k with exponent sum c powers to zeta^c * I after k steps
    return lcm(*(k * (x.r // gcd(c, x.r)) for k, c in cycle_type(x)))


def format_element(x: GroupElement) -> str:
    """Text form "a1,...,an|p1 ... pn" with a 1-based permutation image list."""
    exps = ",".join(str(a) for a in x.exponents)
    perm = " ".join(str(i + 1) for i in x.perm)
    return f"{exps}|{perm}"


def parse_element(text: str, r: int) -> GroupElement:
    """Inverse of format_element; r fixes the exponent modulus."""
    parts = text.strip().split("|")
    if len(parts) != 2:
        raise ParameterError(f"element text needs one '|' separator: {text!r}")
    try:
        exps = tuple(int(tok) for tok in parts[0].split(","))
        images = tuple(int(tok) for tok in parts[1].split())
    except ValueError as exc:
        raise ParameterError(f"malformed element text {text!r}") from exc
    perm = tuple(i - 1 for i in images)
    return GroupElement(r, exps, perm)


def galois_apply(x: GroupElement, e: int) -> GroupElement:
    """Multiply every exponent by e; e must be invertible mod r."""
    if gcd(e, x.r) != 1:
        raise ParameterError(f"exponent {e} is not coprime to r={x.r}")
    return GroupElement(x.r, tuple((e * a) % x.r for a in x.exponents), x.perm)


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def _crt(congruences: list[tuple[int, int]]) -> tuple[int, int]:
    """Combine pairwise-coprime congruences x = res (mod m); returns (x, M)."""
    modulus, value = 1, 0
    for m, res in congruences:
        shift = (res - value) * pow(modulus, -1, m) % m
        value += modulus * shift
        modulus *= m
    return value % modulus, modulus


def find_galois_exponent(x: GroupElement, d: int) -> int:
    """Smallest positive e, coprime to r, with exponent scaling by e
    conjugate to the d-th power of x.

    Requires gcd(d, order(x)) = 1.  Writing r_i for the order of zeta^(c_i)
    over the cycle sums c_i of x and L for their lcm, e solves e = d (mod L)
    together with e = 1 (mod q) for every prime q dividing r but not L.
    """
    o = element_order(x)
    if gcd(d, o) != 1:
        raise ParameterError(f"power {d} is not coprime to the element order {o}")
    r = x.r
    suborders = [r // gcd(c, r) for _, c in cycle_type(x)]
    big_l = lcm(*suborders)
    congruences = [(big_l, d % big_l)]
    congruences += [(q, 1) for q in _prime_factors(r) if big_l % q != 0]
    value, modulus = _crt(congruences)
    e = (value - 1) % modulus + 1
    if gcd(e, r) != 1:
        raise ParameterError(f"no valid exponent for d={d} on {x}")
    return e


@dataclass(frozen=True, eq=False)
class ConjugacyClasses:
    """Conjugacy classes over a fixed element enumeration.

    Classes are sorted by their least member index; the representative is the
    lexicographically least element of the class.
    """

    class_of: np.ndarray
    members: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    sizes: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class RationalClasses:
    """Partition of ordinary classes: two classes fall together when one
    contains a power g^d, gcd(d, order(g)) = 1, of the other's elements."""

    groups: tuple[tuple[int, ...], ...]
    class_to_rational: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.groups)


def _enumeration_cap(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(ENUMERATION_CAP_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ParameterError(
                f"{ENUMERATION_CAP_ENV} must be an integer, got {env!r}"
            ) from exc
    return DEFAULT_ENUMERATION_CAP


class Group:
    """G(r, p, n) with a fixed, deterministic element enumeration.

    Elements are listed lexicographically by (perm, exponents), so the
    identity always has index 0.  Dense index maps for left and right
    multiplication keep bulk operations in numpy.
    """

    def __init__(self, params: GroupParams, max_order: int | None = None):
        cap = _enumeration_cap(max_order)
        if params.order > cap:
            raise SizeLimitError(
                f"{params} has order {params.order}, above the enumeration cap "
                f"{cap} (override with {ENUMERATION_CAP_ENV} or max_order)"
            )
        self.params = params
        self.elements: tuple[GroupElement, ...] = tuple(self._enumerate())
        self.order = len(self.elements)
        if self.order != params.order:
            raise ParameterError(f"enumeration mismatch for {params}")

        n, r = params.n, params.r
        self._perms = np.array([x.perm for x in self.elements], dtype=np.int64)
        self._exps = np.array([x.exponents for x in self.elements], dtype=np.int64)
        self._invperms = np.empty_like(self._perms)
        rows = np.arange(self.order)[:, None]
        self._invperms[rows, self._perms] = np.arange(n)[None, :]
        self._keys = self._encode(self._perms, self._exps)
        self._index = {
            (x.exponents, x.perm): i for i, x in enumerate(self.elements)
        }

    def _enumerate(self):
        r, p, n = self.params.r, self.params.p, self.params.n
        for perm in itertools.permutations(range(n)):
            for head in itertools.product(range(r), repeat=n - 1):
                # last exponent runs over the residue class fixed by p
                first = (-sum(head)) % p
                for last in range(first, r, p):
                    yield GroupElement(r, head + (last,), perm)

    def _encode(self, perms: np.ndarray, exps: np.ndarray) -> np.ndarray:
        n, r = self.params.n, self.params.r
        if (n**n) * (r**n) > 2**62:
            raise SizeLimitError(f"index keys for {self.params} overflow int64")
        key = np.zeros(perms.shape[:-1], dtype=np.int64)
        for i in range(n):
            key = key * n + perms[..., i]
        for i in range(n):
            key = key * r + exps[..., i]
        return key

    def _lookup(self, perms: np.ndarray, exps: np.ndarray) -> np.ndarray:
        return np.searchsorted(self._keys, self._encode(perms, exps))

    def __len__(self) -> int:
        return self.order

    @property
    def identity_index(self) -> int:
        return 0

    def index_of(self, x: GroupElement) -> int:
        if x.r != self.params.r:
            raise ParameterError(f"element has r={x.r}, group has r={self.params.r}")
        try:
            return self._index[(x.exponents, x.perm)]
        except KeyError:
            raise ParameterError(f"{x} is not in {self.params}") from None

    def contains(self, x: GroupElement) -> bool:
        return (x.exponents, x.perm) in self._index

    @cached_property
    def inverse_indices(self) -> np.ndarray:
        inv_exps = (-np.take_along_axis(self._exps, self._perms, axis=1)) % self.params.r
        return self._lookup(self._invperms, inv_exps)

    def left_mult_indices(self, g: int) -> np.ndarray:
        """Index map k -> index of elements[g] * elements[k]."""
        gp, ge = self._perms[g], self._exps[g]
        ginv = self._invperms[g]
        perms = gp[self._perms]
        exps = (self._exps[:, ginv] + ge[None, :]) % self.params.r
        return self._lookup(perms, exps)

    def right_mult_indices(self, g: int) -> np.ndarray:
        """Index map k -> index of elements[k] * elements[g]."""
        gp, ge = self._perms[g], self._exps[g]
        perms = self._perms[:, gp]
        exps = (self._exps + ge[self._invperms]) % self.params.r
        return self._lookup(perms, exps)

    def conjugation_indices(self, g: int) -> np.ndarray:
        """Index map k -> index of g * x_k * g^{-1}."""
        left = self.left_mult_indices(g)
        right = self.right_mult_indices(self.inverse_indices[g])
        return right[left]

    @cached_property
    def conjugacy(self) -> ConjugacyClasses:
        if self.params.p == 1:
            fibers: dict[CycleType, list[int]] = {}
            for i, x in enumerate(self.elements):
                fibers.setdefault(cycle_type(x), []).append(i)
            orbits = sorted(fibers.values(), key=lambda orbit: orbit[0])
        else:
            orbits = self._conjugation_orbits()
        class_of = np.empty(self.order, dtype=np.int64)
        for c, orbit in enumerate(orbits):
            class_of[orbit] = c
        return ConjugacyClasses(
            class_of=class_of,
            members=tuple(tuple(orbit) for orbit in orbits),
            representatives=tuple(orbit[0] for orbit in orbits),
            sizes=tuple(len(orbit) for orbit in orbits),
        )

    def _conjugation_orbits(self) -> list[list[int]]:
        conj_maps = [
            self.conjugation_indices(self.index_of(g)) for g in self.generators()
        ]
        assigned = np.zeros(self.order, dtype=bool)
        orbits = []
        for start in range(self.order):
            if assigned[start]:
                continue
            assigned[start] = True
            orbit = [start]
            frontier = [start]
            while frontier:
                frontier_arr = np.array(frontier, dtype=np.int64)
                frontier = []
                for cmap in conj_maps:
                    images = cmap[frontier_arr]
                    fresh = images[~assigned[images]]
                    if fresh.size:
                        fresh = np.unique(fresh)
                        assigned[fresh] = True
                        orbit.extend(int(i) for i in fresh)
                        frontier.extend(int(i) for i in fresh)
            orbits.append(sorted(orbit))
        return orbits

    @cached_property
    def rational(self) -> RationalClasses:
        classes = self.conjugacy
        k = len(classes)
        parent = list(range(k))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for c, rep in enumerate(classes.representatives):
            g = self.elements[rep]
            o = element_order(g)
            for d in range(1, o):
                if gcd(d, o) != 1:
                    continue
                j = int(classes.class_of[self.index_of(element_power(g, d))])
                ra, rb = find(c), find(j)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)

        buckets: dict[int, list[int]] = {}
        for c in range(k):
            buckets.setdefault(find(c), []).append(c)
        groups = sorted(buckets.values(), key=lambda grp: grp[0])
        class_to_rational = [0] * k
        for q, grp in enumerate(groups):
            for c in grp:
                class_to_rational[c] = q
        return RationalClasses(
            groups=tuple(tuple(grp) for grp in groups),
            class_to_rational=tuple(class_to_rational),
        )

    def generators(self) -> tuple[GroupElement, ...]:
        return standard_generators(self.params)


def standard_generators(params: GroupParams) -> tuple[GroupElement, ...]:
    """Standard generating set: a diagonal generator diag(zeta^p, 1, ..., 1)
    when r > p, the order-2 reflection (1, r-1, 0, ... | swap of 0,1) when
    p > 1, and the adjacent transpositions."""
    r, p, n = params.r, params.p, params.n
    gens: list[GroupElement] = []
    zero = (0,) * n
    idperm = tuple(range(n))
    if r // p > 1:
        gens.append(GroupElement(r, (p,) + zero[1:], idperm))
    if n >= 2:
        swap01 = (1, 0) + idperm[2:]
        if p > 1:
            gens.append(GroupElement(r, (1 % r, (r - 1) % r) + zero[2:], swap01))
        for i in range(n - 1):
            perm = list(idperm)
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            gens.append(GroupElement(r, zero, tuple(perm)))
    return tuple(gens)


def is_real(params: GroupParams) -> bool:
    """Whether the group is a real (Coxeter) member of the family: S_n,
    the hyperoctahedral pair r = 2, dihedral G(r, r, 2), or cyclic of
    order at most 2."""
    if params.r <= 2:
        return True
    if params.n == 1:
        return params.r // params.p <= 2
    return params.p == params.r and params.n == 2
