"""Gram construction, exact rank, and the degeneracy criteria."""

import itertools
import random

import numpy as np
import pytest
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from skewrank import forms, galois
from skewrank.errors import (
    IdentityAutomorphism,
    InvolutionNotSupported,
    NotInEigenspace,
    ZeroElement,
)
from skewrank.linalg import rank_mod


def gram_reference(c, b, i):
    """Direct entrywise construction straight from the defining formula."""
    n = c.n
    basis = c.power_basis()
    m = np.zeros((n, n), dtype=np.int64)
    for r in range(n):
        for s in range(n):
            val = b * (basis[r] * c.frobenius_power(basis[s], i)
                       - c.frobenius_power(basis[r], i) * basis[s])
            m[r, s] = c.trace(val).scalar()
    return m


def rank_oracle(matrix, p):
    """Independent exact rank over GF(p) via sympy's domain matrices."""
    dom = GF(p)
    rows = [[dom(int(x)) for x in row] for row in matrix]
    return DomainMatrix(rows, matrix.shape, dom).rank()


def subspace_elements(space):
    c = space.basis[0].ctx
    for coeffs in itertools.product(range(c.p), repeat=space.dimension):
        if not any(coeffs):
            continue
        b = c.zero()
        for v, vec in zip(coeffs, space.basis):
            b = b + vec * c.scalar(v)
        yield b


def test_gram_matches_direct_formula(ctx):
    for (p, n) in [(3, 4), (5, 3)]:
        c = ctx(p, n)
        rng = random.Random(p * n)
        for _ in range(8):
            b = c.from_index(rng.randrange(c.order))
            for i in range(1, n):
                fast = forms.gram(c, b, i)
                assert np.array_equal(fast.entries, gram_reference(c, b, i) % p)


def test_gram_zero_and_linearity(ctx):
    c = ctx(3, 4)
    assert not forms.gram(c, c.zero(), 1).entries.any()
    rng = random.Random(9)
    for _ in range(20):
        a = c.from_index(rng.randrange(c.order))
        b = c.from_index(rng.randrange(c.order))
        lhs = forms.gram(c, a + b, 1).entries
        rhs = (forms.gram(c, a, 1).entries + forms.gram(c, b, 1).entries) % 3
        assert np.array_equal(lhs, rhs)


def test_gram_is_alternating_everywhere(ctx):
    c = ctx(3, 6)
    rng = random.Random(6)
    for _ in range(25):
        b = c.from_index(rng.randrange(c.order))
        i = rng.randrange(1, 6)
        g = forms.gram(c, b, i)
        assert g.is_alternating()


def test_gram_of_one_has_rank_two_at_3_4(ctx):
    g = forms.gram(ctx(3, 4), ctx(3, 4).one(), 1)
    assert g.rank() == 2


def test_rank_against_domain_matrix_oracle(ctx):
    c = ctx(3, 4)
    rng = random.Random(44)
    for _ in range(30):
        b = c.from_index(rng.randrange(1, c.order))
        i = rng.randrange(1, 4)
        g = forms.gram(c, b, i)
        assert g.rank() == rank_oracle(g.entries, 3)
    zero = forms.gram(c, c.zero(), 1)
    assert zero.rank() == 0


def test_rank_parity_and_transpose_invariance(ctx):
    c = ctx(5, 4)
    rng = random.Random(4)
    for _ in range(30):
        b = c.from_index(rng.randrange(1, c.order))
        g = forms.gram(c, b, 1)
        r = g.rank()
        assert r % 2 == 0
        assert rank_mod(g.entries.T, 5) == r


def test_rank_is_congruence_invariant(ctx):
    # change of basis by multiplication-by-c preserves rank
    c = ctx(3, 4)
    rng = random.Random(12)
    basis = c.power_basis()
    for _ in range(10):
        b = c.from_index(rng.randrange(1, c.order))
        scale = c.from_index(rng.randrange(1, c.order))
        mult = np.array([(scale * e).coeffs for e in basis], dtype=np.int64).T
        g = forms.gram(c, b, 1).entries
        conj = (mult.T @ g @ mult) % 3
        assert rank_mod(conj, 3) == rank_mod(g, 3)


def test_eigenspace_e1_gives_full_rank(ctx):
    c = ctx(3, 4)
    e1 = galois.eigenspace(c, 2, -1)
    for b in subspace_elements(e1):
        assert forms.gram(c, b, 1).rank() == 4


def test_norm_criterion_on_scalars_and_eigenvectors(ctx):
    c = ctx(3, 4)
    assert forms.is_degenerate_by_norm(c, c.one(), 1)
    assert forms.is_degenerate_by_norm(c, c.scalar(2), 1)
    e1 = galois.eigenspace(c, 2, -1)
    for b in subspace_elements(e1):
        assert not forms.is_degenerate_by_norm(c, b, 1)


def test_norm_criterion_matches_rank_exhaustively(ctx):
    c = ctx(3, 4)
    for b in c.elements():
        for i in (1, 3):
            assert forms.is_degenerate_by_norm(c, b, i) == (forms.gram(c, b, i).rank() < 4)


def test_norm_criterion_rejects_involutions_and_zero(ctx):
    c = ctx(3, 4)
    with pytest.raises(InvolutionNotSupported):
        forms.is_degenerate_by_norm(c, c.one(), 2)
    with pytest.raises(ZeroElement):
        forms.is_degenerate_by_norm(c, c.zero(), 1)


def test_predicted_rank_odd_order_is_constant(ctx):
    c = ctx(3, 6)
    for b in c.elements():
        assert forms.predicted_rank(c, b, 2) == 4  # order 3: 6 - 6/3


def test_predicted_rank_examples(ctx):
    c = ctx(3, 4)
    assert forms.predicted_rank(c, c.one(), 1) == 2
    assert forms.predicted_rank(c, c.one(), 2) == 4  # involution
    with pytest.raises(IdentityAutomorphism):
        forms.predicted_rank(c, c.one(), 0)
    with pytest.raises(ZeroElement):
        forms.predicted_rank(c, c.zero(), 1)


def test_predicted_rank_agrees_with_gram_rank(ctx):
    # exception: for the involution, elements of its fixed field give the zero form
    c = ctx(3, 4)
    for b in c.elements():
        for i in range(1, 4):
            actual = forms.gram(c, b, i).rank()
            if galois.order_of(c, i) == 2 and actual == 0:
                continue
            assert forms.predicted_rank(c, b, i) == actual


def test_witness_identity_exhaustive_on_e2_at_3_8(ctx):
    c = ctx(3, 8)
    e2 = galois.eigenspace(c, 2, -1)
    assert e2.dimension == 2
    for b in subspace_elements(e2):
        wit = forms.degeneracy_witness(c, b, 2)
        # the constructor already certifies the norm identity; cross-check here
        lhs = c.norm(b, 2)
        sign = c.scalar(-1 if (8 // 4) % 2 else 1)
        assert lhs == sign * wit.w ** 4
        assert wit.eta == c.frobenius_power(wit.w, 1) / wit.w
        assert wit.is_degenerate == forms.is_degenerate_by_norm(c, b, 1)
        if wit.is_degenerate:
            assert c.frobenius_power(wit.eta, 1) * wit.eta == c.scalar(-1)


def test_witness_never_degenerate_on_e1(ctx):
    for (p, n) in [(3, 4), (3, 8)]:
        c = ctx(p, n)
        e1 = galois.eigenspace(c, n // 2, -1)
        for b in subspace_elements(e1):
            assert not forms.degeneracy_witness(c, b, 1).is_degenerate


def test_witness_degenerate_on_high_eigenspaces_at_3_16(ctx):
    c = ctx(3, 16)
    e3 = galois.eigenspace(c, 2, -1)
    assert e3.dimension == 2
    for b in subspace_elements(e3):
        wit = forms.degeneracy_witness(c, b, 3)
        assert wit.is_degenerate
        assert (2**3) % wit.eta_order == 0


def test_witness_rejects_non_eigenvectors(ctx):
    c = ctx(3, 8)
    with pytest.raises(NotInEigenspace):
        forms.degeneracy_witness(c, c.one(), 1)
    with pytest.raises(ZeroElement):
        forms.degeneracy_witness(c, c.zero(), 1)
