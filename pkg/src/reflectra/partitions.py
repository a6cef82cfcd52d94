"""Partition-tuple combinatorics for the codimension spectrum of G(r, 1, n).

Characters of G(r, 1, n) are indexed by r-tuples of partitions
(lambda(0), ..., lambda(r-1)) of total size n.  The codimension group matrix
has one eigenvalue per tuple, and the attached polynomial factors over the
boxes of the tuple: writing c = column - row for the content of a box,

    root r - 1 + r*c   for each box of lambda(0),
    root  -1 + r*c     for each box of lambda(k), k >= 1.

With roots alpha_1, ..., alpha_n the eigenvalue is the derivative at t = 1
of the product (1 + alpha_1 t) ... (1 + alpha_n t), and its multiplicity is
the squared character dimension n! / (product of all hook lengths).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import factorial
from typing import NamedTuple

from .errors import ParameterError, SizeLimitError

DEFAULT_TUPLE_CAP = 10**6

Partition = tuple[int, ...]
PartitionTuple = tuple[Partition, ...]


class SpectrumEntry(NamedTuple):
    eigenvalue: int
    multiplicity: int
    source: PartitionTuple | None = None


def validate_partition(p: Partition) -> None:
    if any(part < 1 for part in p):
        raise ParameterError(f"partition parts must be positive: {p}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ParameterError(f"partition parts must be weakly decreasing: {p}")


def _gen_partitions(n: int, cap: int):
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _gen_partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n, largest first part first."""
    if n < 0:
        raise ParameterError(f"cannot partition {n}")
    return tuple(_gen_partitions(n, n))


def partition_counts(n: int) -> list[int]:
    """Partition numbers p(0..n) without materializing the partitions."""
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table


def contents(p: Partition) -> tuple[int, ...]:
    """Box contents column - row, read row by row."""
    validate_partition(p)
    return tuple(col - row for row, size in enumerate(p) for col in range(size))


def conjugate_partition(p: Partition) -> Partition:
    width = p[0] if p else 0
    return tuple(sum(1 for row in p if row > col) for col in range(width))


def hook_lengths(p: Partition) -> tuple[int, ...]:
    validate_partition(p)
    conj = conjugate_partition(p)
    return tuple(
        p[row] - col + conj[col] - row - 1
        for row in range(len(p))
        for col in range(p[row])
    )


def standard_tableaux_count(p: Partition) -> int:
    hooks = hook_lengths(p)
    size = sum(p)
    denom = 1
    for h in hooks:
        denom *= h
    count, rem = divmod(factorial(size), denom)
    if rem:
        raise ParameterError(f"hook product does not divide {size}! for {p}")
    return count


def character_dimension(tpl: PartitionTuple) -> int:
    """n! over the product of all hook lengths across the tuple's components."""
    n = sum(sum(p) for p in tpl)
    denom = 1
    for p in tpl:
        for h in hook_lengths(p):
            denom *= h
    dim, rem = divmod(factorial(n), denom)
    if rem:
        raise ParameterError(f"hook product does not divide {n}! for {tpl}")
    return dim


def _compositions(n: int, slots: int):
    if slots == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, slots - 1):
            yield (first,) + rest


def count_partition_tuples(r: int, n: int) -> int:
    if r < 1 or n < 0:
        raise ParameterError(f"need r >= 1 and n >= 0, got r={r}, n={n}")
    counts = partition_counts(n)
    vec = [1] + [0] * n
    for _ in range(r):
        vec = [
            sum(counts[k] * vec[total - k] for k in range(total + 1))
            for total in range(n + 1)
        ]
    return vec[n]


def enumerate_partition_tuples(
    r: int, n: int, max_tuples: int | None = None
) -> tuple[PartitionTuple, ...]:
    """All r-tuples of partitions with total size n, deterministic order:
    compositions with earlier slots as large as possible, then each slot in
    partitions_of order.  The trivial tuple ((n), (), ..., ()) comes first."""
    cap = DEFAULT_TUPLE_CAP if max_tuples is None else max_tuples
    total = count_partition_tuples(r, n)
    if total > cap:
        raise SizeLimitError(
            f"{total} partition tuples for r={r}, n={n} exceed the cap {cap}"
        )
    out = []
    for comp in _compositions(n, r):
        out.extend(itertools.product(*(partitions_of(k) for k in comp)))
    return tuple(out)


def poincare_star_roots(tpl: PartitionTuple, r: int) -> tuple[int, ...]:
    """Integer roots alpha_i, largest first; the attached polynomial is the
    product of (t + alpha_i)."""
    if r < 1:
        raise ParameterError(f"need r >= 1, got {r}")
    if len(tpl) != r:
        raise ParameterError(f"tuple has {len(tpl)} components, expected r={r}")
    roots = [r - 1 + r * c for c in contents(tpl[0])]
    for component in tpl[1:]:
        roots.extend(-1 + r * c for c in contents(component))
    return tuple(sorted(roots, reverse=True))


def xi_from_roots(roots: tuple[int, ...]) -> int:
    """Derivative at t = 1 of the product of (1 + alpha t), in exact
    integer arithmetic (one product-rule accumulation pass)."""
    running, derivative = 1, 0
    for alpha in roots:
        running, derivative = running * (1 + alpha), derivative * (1 + alpha) + alpha * running
    return derivative


def codim_spectrum_entries(
    r: int, n: int, max_tuples: int | None = None
) -> tuple[SpectrumEntry, ...]:
    """One (eigenvalue, squared dimension, tuple) entry per partition tuple."""
    return tuple(
        SpectrumEntry(
            eigenvalue=xi_from_roots(poincare_star_roots(tpl, r)),
            multiplicity=character_dimension(tpl) ** 2,
            source=tpl,
        )
        for tpl in enumerate_partition_tuples(r, n, max_tuples)
    )


def codim_spectrum_combinatorial(
    r: int, n: int, max_tuples: int | None = None
) -> tuple[SpectrumEntry, ...]:
    """Aggregated codimension spectrum of G(r, 1, n), eigenvalues descending.

    Squared dimensions must add up to the group order r^n * n!."""
    aggregated: dict[int, int] = {}
    total = 0
    for entry in codim_spectrum_entries(r, n, max_tuples):
        aggregated[entry.eigenvalue] = aggregated.get(entry.eigenvalue, 0) + entry.multiplicity
        total += entry.multiplicity
    expected = r**n * factorial(n)
    if total != expected:
        raise ParameterError(
            f"multiplicities sum to {total}, expected |G({r},1,{n})| = {expected}"
        )
    return tuple(
        SpectrumEntry(eigenvalue=e, multiplicity=m)
        for e, m in sorted(aggregated.items(), reverse=True)
    )


def closed_form_reference(r: int, n: int) -> tuple[SpectrumEntry, ...]:
    """Pinned closed-form codimension spectra for G(r, 1, 2) and G(r, 1, 3);
    entries with zero multiplicity are omitted."""
    if n not in (2, 3):
        raise ParameterError(f"closed forms cover n in (2, 3) only, got n={n}")
    if r < 2:
        raise ParameterError(f"closed forms need r >= 2, got r={r}")
    if n == 2:
        rows = [
            (4 * r**2 - 3 * r, 1),
            (r, r - 1),
            (0, 2 * r**2 - 6 * r + 4),
            (-r, 5 * r - 4),
        ]
    else:
        rows = [
            (18 * r**3 - 11 * r**2, 1),
            (r**2, 13 * r - 12),
            (0, 6 * r**3 - 33 * r + 27),
            (-(r**2), 9 * r - 9),
            (-2 * r**2, 11 * r - 7),
        ]
    return tuple(SpectrumEntry(e, m) for e, m in rows if m > 0)


def format_partition_tuple(tpl: PartitionTuple) -> str:
    """Text form "3,1||2": components joined by '|', empty components blank."""
    return "|".join(",".join(str(part) for part in p) for p in tpl)


def parse_partition_tuple(text: str) -> PartitionTuple:
    components = text.strip().split("|")
    tpl = []
    for chunk in components:
        chunk = chunk.strip()
        if not chunk:
            tpl.append(())
            continue
        try:
            p = tuple(int(tok) for tok in chunk.split(","))
        except ValueError as exc:
            raise ParameterError(f"malformed partition {chunk!r}") from exc
        validate_partition(p)
        tpl.append(p)
    return tuple(tpl)
