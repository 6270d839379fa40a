"""Jet arithmetic: ring laws, differentiation, the conjugate swap, pairings."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergkern.jets import (
    MultiIndex,
    PolyJet,
    jet_diff,
    jet_product,
    jet_swap_conjugate,
    lambda_pairing,
)
from bergkern.scalars import QC


def var(n, block, j, deg=4):
    return PolyJet.variable(n, block, j, max_degree=deg)


def rand_jet(rng, n=2, deg=3, max_deg=4, nterms=6):
    out = PolyJet(n, max_deg)
    for _ in range(nterms):
        key = []
        budget = rng.integers(0, deg + 1)
        exps = [[0] * n for _ in range(4)]
        for _ in range(budget):
            exps[rng.integers(0, 4)][rng.integers(0, n)] += 1
        key = tuple(tuple(e) for e in exps)
        c = complex(rng.normal(), rng.normal())
        out = out + PolyJet(n, max_deg, {key: c})
    return out


class TestMultiIndex:
    def test_split_roundtrip(self):
        mi = MultiIndex((2, 0, 1, 3), q=2)
        assert mi.primed == (2, 0)
        assert mi.doubleprimed == (1, 3)
        assert mi.join() == (2, 0, 1, 3)
        assert mi.order == 6

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            MultiIndex((1, -1), q=1)


class TestProduct:
    def test_monomial_product(self):
        a = var(1, "z", 1)
        b = var(1, "zbar", 1)
        prod = jet_product(a, b)
        assert prod.coefficient((1,), (1,)) == 1
        assert len(prod.coeffs) == 1

    def test_annihilator(self):
        a = rand_jet(np.random.default_rng(0))
        zero = PolyJet(2, 4)
        assert not jet_product(a, zero)

    def test_truncation(self):
        one = PolyJet.constant(1, 1.0, max_degree=1)
        z = var(1, "z", 1, deg=1)
        prod = jet_product(one + z, one - z)
        assert prod.coefficient((0,), (0,)) == 1
        assert prod.coefficient((0,), (1,)) == 0
        assert prod.coefficient((0,), (2,)) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            jet_product(PolyJet(1, 4), PolyJet(2, 4))


class TestDiff:
    def test_power_rule(self):
        n = 2
        a = PolyJet(n, 4, {((0, 1), (2, 0), (0, 0), (0, 0)): 1.0})  # z1^2 zbar2
        d = jet_diff(a, "z", 1)
        assert d.coefficient((0, 1), (1, 0)) == 2.0

    def test_independent_variable(self):
        a = var(1, "z", 1)
        assert not jet_diff(a, "wbar", 1)

    def test_mixed_partials_commute(self):
        a = PolyJet(2, 4, {((0, 1), (1, 0), (0, 0), (0, 0)): 1.0})  # zbar2 z1
        d1 = jet_diff(jet_diff(a, "zbar", 2), "z", 1)
        d2 = jet_diff(jet_diff(a, "z", 1), "zbar", 2)
        assert d1.coefficient((0, 0), (0, 0)) == 1.0
        assert d1.close_to(d2)

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            jet_diff(PolyJet(2, 4), "z", 3)


class TestSwapConjugate:
    def test_fixed_point_monomial(self):
        a = var(1, "zbar", 1) * var(1, "w", 1)
        a = a.scale(1j)
        assert jet_swap_conjugate(a).close_to(a)

    def test_pure_variable(self):
        # z1 as a function of the first slot swaps to w1 and conjugates: -wbar1
        out = jet_swap_conjugate(var(1, "z", 1))
        assert out.coefficient((0,), (0,), (1,), (0,)) == -1

    def test_involution(self):
        rng = np.random.default_rng(1)
        a = rand_jet(rng)
        assert jet_swap_conjugate(jet_swap_conjugate(a)).close_to(a)

    def test_quadratic_phase_fixed(self):
        # i|z1 - w1|^2 + i lam (zbar1 w1 - wbar1 z1) is antisymmetry-fixed
        lam = -1.7
        n = 1
        zb, z = var(n, "zbar", 1), var(n, "z", 1)
        wb, w = var(n, "wbar", 1), var(n, "w", 1)
        quad = (zb * z + wb * w - zb * w - wb * z).scale(1j * abs(lam)) + \
            (zb * w - wb * z).scale(1j * lam)
        assert jet_swap_conjugate(quad).close_to(quad)


class TestLambdaPairing:
    def test_abs_doubleprimed(self):
        assert lambda_pairing((-1.0, 2.0), (1, 1), 1, "abs-doubleprimed") == 2.0

    def test_empty_block(self):
        assert lambda_pairing((-1.0, 2.0), (2, 0), 1, "abs-doubleprimed") == 0.0

    def test_signed_primed(self):
        assert lambda_pairing((-1.0, 2.0), (2, 0), 1, "signed-primed") == -2.0

    def test_exact_fractions(self):
        from fractions import Fraction

        lams = (Fraction(-3, 2), Fraction(2, 1))
        assert lambda_pairing(lams, (1, 2), 1, "abs-primed") == Fraction(3, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_ring_laws(seed_a, seed_b):
    a = rand_jet(np.random.default_rng(seed_a))
    b = rand_jet(np.random.default_rng(seed_b))
    c = rand_jet(np.random.default_rng(seed_a + seed_b + 1))
    assert jet_product(a, b).close_to(jet_product(b, a), tol=1e-10)
    lhs = jet_product(a, b + c)
    rhs = jet_product(a, b) + jet_product(a, c)
    assert lhs.close_to(rhs, tol=1e-10)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_swap_of_product(seed):
    # swap-conj is an anti-automorphism up to the sign convention:
    # S(ab) = -S(a) S(b) since each factor carries one minus sign
    a = rand_jet(np.random.default_rng(seed), deg=2)
    b = rand_jet(np.random.default_rng(seed + 1), deg=2)
    lhs = jet_swap_conjugate(jet_product(a, b))
    rhs = -jet_product(jet_swap_conjugate(a), jet_swap_conjugate(b))
    assert lhs.close_to(rhs, tol=1e-10)


def test_exact_coefficients_survive_pipeline():
    n = 1
    a = PolyJet(n, 4, {((1,), (0,), (0,), (0,)): QC(1, 2)})
    b = PolyJet(n, 4, {((0,), (1,), (0,), (0,)): QC(0, 1)})
    prod = jet_product(a, b)
    assert prod.coefficient((1,), (1,)) == QC(-2, 1)
    back = jet_swap_conjugate(jet_swap_conjugate(prod))
    assert back.coefficient((1,), (1,)) == QC(-2, 1)


def test_restrict_diagonal_and_rename():
    n = 2
    a = var(n, "z", 1) * var(n, "wbar", 2)
    diag = a.restrict_diagonal()
    assert diag.coefficient((0, 1), (1, 0)) == 1
    renamed = var(n, "z", 1).rename_z_to_w()
    assert renamed.coefficient((0, 0), (0, 0), (0, 0), (1, 0)) == 1
    with pytest.raises(ValueError):
        a.rename_z_to_w()
