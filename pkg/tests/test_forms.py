"""Exterior-algebra operator calculus: CAR relations, trace, adjoint, hat."""

import numpy as np
import pytest

from bergkern.forms import (
    FormOp,
    FormOpJet,
    compose,
    compose_jets,
    contract_wedge,
    form_adjoint,
    form_trace,
    generator,
    hat_component,
    increasing_indices,
    wedge_contract,
)
from bergkern.jets import PolyJet


def rand_op(rng, n, q):
    basis = increasing_indices(n, q)
    entries = {}
    for J in basis:
        for K in basis:
            entries[(J, K)] = complex(rng.normal(), rng.normal())
    return FormOp(n, q, q, entries)


class TestGenerators:
    def test_wedge_on_scalar(self):
        w1 = generator("wedge", 1, 2, 0)
        assert w1.entries == {((), (1,)): 1}

    def test_wedge_kills_repeated(self):
        w1 = generator("wedge", 1, 2, 1)
        assert ((1,), (1, 1)) not in w1.entries
        assert w1.entries.get(((2,), (1, 2))) == 1  # left multiplication, + sign

    def test_contract_adjoint_of_wedge(self):
        n, q = 3, 1
        w = generator("wedge", 2, n, q)
        c = generator("contract", 2, n, q + 1)
        assert form_adjoint(w).entries == c.entries

    def test_anticommutator_off_diagonal(self):
        n = 2
        for q in range(n + 1):
            ac = wedge_contract(n, q, 1, 2) + contract_wedge(n, q, 2, 1)
            assert ac.max_abs() == 0

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_car_relations_exhaustive(self, n):
        for q in range(n + 1):
            ident = FormOp.identity(n, q)
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    ac = wedge_contract(n, q, j, k) + contract_wedge(n, q, k, j)
                    expect = ident if j == k else FormOp(n, q, q)
                    assert ac.close_to(expect)

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            generator("wedge", 3, 2, 0)


class TestTrace:
    def test_off_diagonal_basis(self):
        t = FormOp.basis(2, (1,), (2,))
        assert form_trace(t) == 0

    def test_identity_dimension(self):
        assert form_trace(FormOp.identity(2, 1)) == 2

    def test_projector(self):
        # dzbar1^wedge dzbar1^contract on (0,1)-forms of C^2 projects onto dzbar1
        p = wedge_contract(2, 1, 1, 1)
        assert form_trace(p) == 1

    def test_cyclic(self):
        rng = np.random.default_rng(7)
        a, b = rand_op(rng, 3, 2), rand_op(rng, 3, 2)
        assert abs(form_trace(compose(a, b)) - form_trace(compose(b, a))) < 1e-12


class TestAdjoint:
    def test_basis(self):
        t = FormOp.basis(2, (1,), (2,)).scale(3.0)
        assert form_adjoint(t).entries == {((2,), (1,)): 3.0}

    def test_scalar_conjugation(self):
        t = FormOp.identity(2, 1).scale(1j)
        assert form_adjoint(t).entries[((1,), (1,))] == -1j

    def test_product_rule(self):
        rng = np.random.default_rng(11)
        a, b = rand_op(rng, 3, 2), rand_op(rng, 3, 2)
        lhs = form_adjoint(compose(a, b))
        rhs = compose(form_adjoint(b), form_adjoint(a))
        assert lhs.close_to(rhs)


class TestHat:
    def test_definition(self):
        t = FormOp.basis(3, (1, 2), (1, 2)).scale(5.0)
        assert hat_component(t) == 5.0

    def test_off_direction(self):
        t = FormOp.basis(3, (1, 3), (2, 3))
        assert hat_component(t) == 0

    def test_identity(self):
        assert hat_component(FormOp.identity(3, 2)) == 1

    def test_hilbert_schmidt_split(self):
        rng = np.random.default_rng(3)
        f = rand_op(rng, 3, 2)
        i0 = (1, 2)
        alpha = hat_component(f)
        rest = f - FormOp.basis(3, i0, i0).scale(alpha)
        # remainder orthogonal to M[I0, I0] in the Hilbert-Schmidt pairing
        assert rest.entries.get((i0, i0), 0) == 0


class TestFormOpJet:
    def test_compose_mixes_entries_and_jets(self):
        n, q = 2, 1
        z1 = PolyJet.variable(n, "z", 1)
        a = FormOpJet(n, q, q, 4, {((1,), (2,)): z1})
        b = FormOpJet.from_form_op(FormOp.basis(n, (2,), (1,)))
        ab = compose_jets(a, b)  # b first: dzbar2 -> dzbar1 -> z1 * dzbar2
        assert ab.entries[((2,), (2,))].coefficient((0, 0), (1, 0)) == 1

    def test_adjoint_conjugates_function(self):
        n, q = 2, 1
        z1 = PolyJet.variable(n, "z", 1).scale(2j)
        a = FormOpJet(n, q, q, 4, {((1,), (2,)): z1})
        adj = a.adjoint()
        jet = adj.entries[((2,), (1,))]
        assert jet.coefficient((1, 0), (0, 0)) == -2j

    def test_trace_and_slices(self):
        n, q = 2, 1
        z1 = PolyJet.variable(n, "z", 1)
        a = FormOpJet(n, q, q, 4, {((1,), (1,)): z1, ((1,), (2,)): z1.scale(3.0)})
        tr = a.trace()
        assert tr.coefficient((0, 0), (1, 0)) == 1
        sl = a.coefficient_slice((0, 0), (1, 0))
        assert sl.entries[((1,), (2,))] == 3.0
