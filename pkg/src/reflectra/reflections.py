"""Reflections, fixed-space codimension, and reflection length.

The fixed space of (a | s) collects one dimension from every cycle of s whose
exponent sum vanishes mod r, so

    codim(w) = n - #(cycles with exponent sum 0 mod r).

Reflections are the elements of codimension 1.  The word length l_T(w) over
the full reflection set T is computed by breadth-first search on the Cayley
graph; it always dominates codim(w), with equality for every element exactly
in the G(r, 1, n) and real cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import ConsistencyError
from .groups import Group, GroupElement, GroupParams, cycle_type


def codim(x: GroupElement) -> int:
    """Codimension of the fixed space of x in C^n."""
    return x.n - sum(1 for _, c in cycle_type(x) if c == 0)


def reflections(group: Group) -> tuple[int, ...]:
    """Indices of the codimension-1 elements, in enumeration order."""
    return tuple(i for i, x in enumerate(group.elements) if codim(x) == 1)


@dataclass(frozen=True, eq=False)
class LengthTable:
    """Per-element reflection lengths and codimensions over one enumeration."""

    lengths: np.ndarray
    codims: np.ndarray

    def total_length(self) -> int:
        return int(self.lengths.sum())


def bfs_word_lengths(group: Group, generator_indices) -> np.ndarray:
    """Word length of every element over the given generators, by BFS from
    the identity; unreachable elements get -1."""
    maps = [group.left_mult_indices(t) for t in generator_indices]
    lengths = np.full(group.order, -1, dtype=np.int64)
    lengths[group.identity_index] = 0
    frontier = np.array([group.identity_index], dtype=np.int64)
    depth = 0
    while frontier.size:
        depth += 1
        fresh: list[np.ndarray] = []
        for tmap in maps:
            images = tmap[frontier]
            images = images[lengths[images] < 0]
            if images.size:
                lengths[images] = depth
                fresh.append(images)
        frontier = np.unique(np.concatenate(fresh)) if fresh else np.empty(0, np.int64)
    return lengths


def reflection_length_table(group: Group) -> LengthTable:
    """BFS from the identity over left multiplication by every reflection."""
    lengths = bfs_word_lengths(group, reflections(group))
    if (lengths < 0).any():
        raise ConsistencyError(
            f"reflections fail to generate {group.params}"
        )
    codims = np.array([codim(x) for x in group.elements], dtype=np.int64)
    return LengthTable(lengths=lengths, codims=codims)


def sum_reflection_lengths(group: Group) -> int:
    return reflection_length_table(group).total_length()


def all_reflections_order_two(group: Group) -> bool:
    for t in reflections(group):
        x = group.elements[t]
        if not (x * x).is_identity():
            return False
    return True


@dataclass(frozen=True)
class DegreeData:
    """Invariant degrees r, 2r, ..., (n-1)r, nr/p and exponents d_i - 1."""

    params: GroupParams
    degrees: tuple[int, ...]
    exponents: tuple[int, ...]


def degree_data(params: GroupParams) -> DegreeData:
    r, p, n = params.r, params.p, params.n
    degrees = tuple(r * i for i in range(1, n)) + (n * r // p,)
    if prod(degrees) != params.order:
        raise ConsistencyError(
            f"degree product {prod(degrees)} differs from |{params}| = {params.order}"
        )
    return DegreeData(
        params=params,
        degrees=degrees,
        exponents=tuple(d - 1 for d in degrees),
    )


def xi1_closed_form(params: GroupParams) -> int:
    """Derivative at t = 1 of the product (1 + m_1 t)...(1 + m_n t) over the
    exponents m_i; equals the sum of codim(w) over the group."""
    running, derivative = 1, 0
    for m in degree_data(params).exponents:
        running, derivative = running * (1 + m), derivative * (1 + m) + m * running
    return derivative


def eta1_closed_form(params: GroupParams) -> int:
    """|W| * sum((d_i - 1) / d_i); matches the total reflection length for
    real groups and for every G(r, 1, n)."""
    data = degree_data(params)
    total = sum(
        (d - 1) * (params.order // d) for d in data.degrees
    )
    return total
