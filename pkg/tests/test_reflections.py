"""Reflections, codimension, BFS word lengths, and degree data.

Independent oracles: fixed-space dimension from the complex monomial matrix,
explicit short products of reflections, and exact polynomial expansion of
the codimension generating function.
"""

import itertools
from collections import Counter

import numpy as np
import pytest

from reflectra.errors import ConsistencyError
from reflectra.groups import Group, GroupElement, GroupParams, multiply
from reflectra.reflections import (
    all_reflections_order_two,
    bfs_word_lengths,
    codim,
    degree_data,
    eta1_closed_form,
    reflection_length_table,
    reflections,
    sum_reflection_lengths,
    xi1_closed_form,
)
from reflectra.verify import desk_scale_params

from oracles import monomial_matrix


def fixed_space_codim(x: GroupElement) -> int:
    """Geometric oracle: n minus the dimension of the fixed space."""
    matrix = monomial_matrix(x) - np.eye(x.n)
    return int(np.linalg.matrix_rank(matrix, tol=1e-9))


class TestCodim:
    @pytest.mark.parametrize("r,p,n", [(3, 1, 2), (4, 2, 2), (2, 2, 3), (1, 1, 4)])
    def test_against_fixed_space_oracle(self, r, p, n):
        group = Group(GroupParams(r, p, n))
        for x in group.elements:
            assert codim(x) == fixed_space_codim(x)

    def test_identity_is_zero(self):
        group = Group(GroupParams(4, 1, 2))
        assert codim(group.elements[group.identity_index]) == 0


class TestReflectionSet:
    @pytest.mark.parametrize("params", desk_scale_params(max_order=100))
    def test_count_formula(self, params):
        group = Group(params)
        r, p, n = params.r, params.p, params.n
        expected = n * (r // p - 1) + r * n * (n - 1) // 2
        assert len(reflections(group)) == expected

    def test_g422_reflections(self):
        group = Group(GroupParams(4, 2, 2))
        refl = reflections(group)
        assert len(refl) == 6
        for t in refl:
            x = group.elements[t]
            assert codim(x) == 1
            assert multiply(x, x).is_identity()

    def test_order_two_flags(self):
        assert all_reflections_order_two(Group(GroupParams(4, 2, 2)))
        assert all_reflections_order_two(Group(GroupParams(2, 1, 3)))
        assert not all_reflections_order_two(Group(GroupParams(3, 1, 2)))

    def test_closed_under_inversion_and_conjugation(self):
        group = Group(GroupParams(3, 1, 2))
        refl = set(reflections(group))
        for t in refl:
            assert int(group.inverse_indices[t]) in refl
        for g in range(group.order):
            conj = group.conjugation_indices(g)
            assert {int(conj[t]) for t in refl} == refl


class TestWordLengths:
    def test_symmetric_group_total(self):
        assert sum_reflection_lengths(Group(GroupParams(1, 1, 3))) == 7

    def test_hyperoctahedral_total(self):
        assert sum_reflection_lengths(Group(GroupParams(2, 1, 2))) == 10

    def test_length_equals_codim_for_p1(self):
        table = reflection_length_table(Group(GroupParams(3, 1, 2)))
        assert (table.lengths == table.codims).all()

    def test_g422_witness_by_explicit_products(self):
        group = Group(GroupParams(4, 2, 2))
        witness = GroupElement(r=4, exponents=(1, 1), perm=(0, 1))
        assert codim(witness) == 2
        refl = [group.elements[t] for t in reflections(group)]
        products_two = {
            (multiply(a, b).exponents, multiply(a, b).perm)
            for a, b in itertools.product(refl, repeat=2)
        }
        assert (witness.exponents, witness.perm) not in products_two
        products_three = {
            (multiply(multiply(a, b), c).exponents, multiply(multiply(a, b), c).perm)
            for a, b, c in itertools.product(refl, repeat=3)
        }
        assert (witness.exponents, witness.perm) in products_three
        table = reflection_length_table(group)
        assert table.lengths[group.index_of(witness)] == 3

    def test_bfs_marks_unreachable(self):
        group = Group(GroupParams(4, 1, 1))
        half_turn = group.index_of(GroupElement(r=4, exponents=(2,), perm=(0,)))
        lengths = bfs_word_lengths(group, [half_turn])
        assert lengths[group.identity_index] == 0
        assert lengths[half_turn] == 1
        assert (lengths < 0).sum() == 2

    def test_lengths_bounded_by_rank_plus_one(self):
        for params in [GroupParams(3, 1, 2), GroupParams(4, 2, 2), GroupParams(3, 3, 3)]:
            table = reflection_length_table(Group(params))
            assert table.lengths.max() <= params.n + 1
            assert (table.lengths >= table.codims).all()


class TestDegrees:
    @pytest.mark.parametrize("params", desk_scale_params(max_order=200))
    def test_product_is_group_order(self, params):
        data = degree_data(params)
        product = 1
        for d in data.degrees:
            product *= d
        assert product == params.order

    def test_g422_degrees(self):
        data = degree_data(GroupParams(4, 2, 2))
        assert data.degrees == (4, 4)
        assert data.exponents == (3, 3)

    def test_g313_degrees(self):
        data = degree_data(GroupParams(3, 1, 3))
        assert data.degrees == (3, 6, 9)

    @pytest.mark.parametrize("params", desk_scale_params(max_order=200))
    def test_codim_generating_function(self, params):
        group = Group(params)
        counts = Counter(codim(x) for x in group.elements)
        coefficients = [1]
        for m in degree_data(params).exponents:
            coefficients = [
                c + m * (coefficients[k - 1] if k else 0)
                for k, c in enumerate(coefficients)
            ] + [m * coefficients[-1]]
        assert counts == {
            k: c for k, c in enumerate(coefficients) if c
        }


class TestMomentFormulas:
    def test_xi1_examples(self):
        assert xi1_closed_form(GroupParams(2, 1, 2)) == 10
        assert xi1_closed_form(GroupParams(3, 1, 3)) == 387

    def test_eta1_examples(self):
        assert eta1_closed_form(GroupParams(2, 1, 2)) == 10
        assert eta1_closed_form(GroupParams(6, 1, 2)) == 126

    @pytest.mark.parametrize("params", desk_scale_params(max_order=100))
    def test_xi1_equals_codim_sum(self, params):
        table = reflection_length_table(Group(params))
        assert xi1_closed_form(params) == int(table.codims.sum())
