import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secantlab.arith import PrimeField
from secantlab.gb import Ideal
from secantlab.homalg import (ZeroIdeal, _rank_mod, betti_numerator,
                              check_ndp, hilbert_data, is_acm, koszul_dim,
                              max_ndp_steps, min_generator_degree,
                              minimal_free_resolution, projective_dimension,
                              regularity)
from secantlab.poly import PolyRing

F = PrimeField(32003)


def twisted_cubic():
    R = PolyRing(["x0", "x1", "x2", "x3"], F)
    gens = [R.gen(i) * R.gen(j + 1) - R.gen(i + 1) * R.gen(j)
            for i in range(3) for j in range(i, 3)]
    return Ideal(R, gens)


# -- Hilbert data -----------------------------------------------------------

def test_hilbert_twisted_cubic():
    hd = hilbert_data(twisted_cubic())
    assert hd.numerator == (1, 0, -3, 2)
    assert hd.dimension == 2 and hd.degree == 3
    assert hd.projective_dimension_of_variety == 1
    # h(d) = 3d + 1 for the twisted cubic
    for d in range(6):
        assert hd.hilbert_function(d) == 3 * d + 1


def test_hilbert_zero_and_unit():
    R = PolyRing(["x", "y"], F)
    hd0 = hilbert_data(Ideal(R, []))
    assert hd0.numerator == (1,) and hd0.dimension == 2
    hd1 = hilbert_data(Ideal(R, [R.constant(1)]))
    assert hd1.dimension == -1 and hd1.degree == 0


def test_hilbert_hypersurface():
    R = PolyRing(["x", "y", "z"], F)
    hd = hilbert_data(Ideal(R, [R.parse("x^3 + y^3 + z^3")]))
    assert hd.numerator == (1, -1, -1, 1, 1, -1) or hd.degree == 3
    assert hd.dimension == 2 and hd.degree == 3


def test_hilbert_nonhomogeneous_uses_initial_ideal():
    R = PolyRing(["x", "y"], F)
    hd = hilbert_data(Ideal(R, [R.parse("x^2 - y")]))
    assert hd.dimension == 1


# -- exact rank mod p -------------------------------------------------------

def _naive_rank(rows, ncols, p):
    rows = [r[:] for r in rows]
    rank = 0
    col = 0
    while rows and col < ncols:
        piv = next((i for i, r in enumerate(rows) if r[col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[0], rows[piv] = rows[piv], rows[0]
        inv = pow(rows[0][col] % p, p - 2, p)
        head = rows.pop(0)
        for r in rows:
            c = r[col] * inv % p
            if c:
                for j in range(col, ncols):
                    r[j] = (r[j] - c * head[j]) % p
        rank += 1
        col += 1
    return rank


@given(st.integers(0, 9), st.integers(0, 9), st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_rank_matches_naive_gaussian(m, n, seed):
    rng = random.Random(seed)
    rows = [[rng.randrange(32003) for _ in range(n)] for _ in range(m)]
    A = np.array(rows, dtype=np.float64).reshape(m, n)
    assert _rank_mod(A, 32003) == _naive_rank(rows, n, 32003)


def test_rank_handles_blocked_path():
    # exceed the 256-column block width so delayed updates are exercised
    rng = random.Random(5)
    m, n = 40, 300
    base = [[rng.randrange(32003) for _ in range(n)] for _ in range(20)]
    rows = base + [[(2 * r[j] + base[0][j]) % 32003 for j in range(n)]
                   for r in base]
    A = np.array(rows, dtype=np.float64)
    assert _rank_mod(A, 32003) == 20


# -- Betti tables -----------------------------------------------------------

def test_resolution_twisted_cubic():
    B = minimal_free_resolution(twisted_cubic())
    assert B.beta(0, 0) == 1 and B.beta(1, 2) == 3 and B.beta(2, 3) == 2
    assert regularity(B) == 1
    assert projective_dimension(B) == 2
    assert min_generator_degree(B) == 2
    assert koszul_dim(B, 1, 1) == 3


def test_resolution_complete_intersection():
    R = PolyRing(["x", "y", "z", "w"], F)
    I = Ideal(R, [R.parse("x^3 + y^3 + z^3 + w^3"),
                  R.parse("x*y*z + y*z*w + x^2*w")])
    B = minimal_free_resolution(I)
    assert B.to_json_dict()["entries"] == [[0, 0, 1], [1, 3, 2], [2, 6, 1]]
    hd = hilbert_data(I)
    assert is_acm(B, hd)
    assert check_ndp(B, 3, 1) and not check_ndp(B, 3, 2)
    assert max_ndp_steps(B, 3) == 1


def test_resolution_rejects_nonhomogeneous():
    R = PolyRing(["x", "y"], F)
    with pytest.raises(ValueError):
        minimal_free_resolution(Ideal(R, [R.parse("x^2 - y")]))


def test_resolution_zero_ideal():
    R = PolyRing(["x", "y"], F)
    B = minimal_free_resolution(Ideal(R, []))
    assert B.to_json_dict()["entries"] == [[0, 0, 1]]
    with pytest.raises(ZeroIdeal):
        min_generator_degree(B)


def test_non_acm_detected():
    R = PolyRing(["x", "y", "z"], F)
    I = Ideal(R, [R.parse("x^2"), R.parse("x*y")])
    B = minimal_free_resolution(I)
    assert not is_acm(B, hilbert_data(I))


def test_betti_numerator_identity():
    I = twisted_cubic()
    B = minimal_free_resolution(I)
    hd = hilbert_data(I)
    bn = betti_numerator(B)
    padded = tuple(hd.numerator) + (0,) * len(bn)
    assert all(bn[i] == padded[i] for i in range(len(bn)))


def test_truncated_resolution_matches_full_below_bound():
    I = twisted_cubic()
    full = minimal_free_resolution(I)
    trunc = minimal_free_resolution(I, degree_bound=3)
    assert trunc.truncated_at == 3
    for i, j, v in full.to_json_dict()["entries"]:
        if j <= 3:
            assert trunc.beta(i, j) == v


def test_check_ndp_argument_validation():
    B = minimal_free_resolution(twisted_cubic())
    with pytest.raises(ValueError):
        check_ndp(B, 1, 1)
    with pytest.raises(ValueError):
        check_ndp(B, 3, -1)


def test_display_renders_dots_for_zeros():
    out = minimal_free_resolution(twisted_cubic()).display()
    assert "." in out and "3" in out and "2" in out
