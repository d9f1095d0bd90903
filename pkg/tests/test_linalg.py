import numpy as np
import pytest

from conftest import SMALL_PRIME, random_nonsingular, random_skew
from fracparity import linalg
from fracparity.errors import DimensionMismatch, NotSkewSymmetric, Singular
from fracparity.field import DEFAULT_PRIME, FieldSampler

PRIMES = (SMALL_PRIME, DEFAULT_PRIME)


@pytest.mark.parametrize("p", PRIMES)
def test_matmul_matches_bigint_reference(p):
    s = FieldSampler(p, 1)
    A = s.draw_array((13, 9))
    B = s.draw_array((9, 7))
    ref = (A.astype(object) @ B.astype(object)) % p
    assert np.array_equal(linalg.matmul(A, B, p), ref.astype(np.int64))


def test_matmul_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        linalg.matmul(np.eye(2, dtype=np.int64), np.eye(3, dtype=np.int64), 97)


@pytest.mark.parametrize("p", PRIMES)
def test_dot(p):
    s = FieldSampler(p, 2)
    u, v = s.draw_array(20), s.draw_array(20)
    assert linalg.dot(u, v, p) == int(sum(int(a) * int(b) for a, b in zip(u, v)) % p)


@pytest.mark.parametrize("p", PRIMES)
def test_inverse_round_trip(p):
    s = FieldSampler(p, 3)
    for _ in range(10):
        A = random_nonsingular(s, 6, p)
        Ainv = linalg.inverse(A, p)
        assert np.array_equal(linalg.matmul(A, Ainv, p), np.eye(6, dtype=np.int64))


def test_inverse_singular_raises():
    M = np.array([[1, 2], [2, 4]], dtype=np.int64)
    with pytest.raises(Singular):
        linalg.inverse(M, 97)


@pytest.mark.parametrize("p", PRIMES)
def test_rank_nullity_and_kernel(p):
    s = FieldSampler(p, 4)
    for _ in range(10):
        A = s.draw_array((5, 8))
        r = linalg.rank(A, p)
        K = linalg.kernel(A, p)
        assert r + K.shape[1] == 8
        assert not np.any(linalg.matmul(A, K, p))
        assert linalg.rank(K, p) == K.shape[1]


def test_rank_of_empty():
    assert linalg.rank(np.zeros((0, 3), dtype=np.int64), 97) == 0


@pytest.mark.parametrize("p", PRIMES)
def test_det_matches_rank_and_multiplicativity(p):
    s = FieldSampler(p, 5)
    for _ in range(10):
        A = s.draw_array((5, 5))
        B = s.draw_array((5, 5))
        dA, dB = linalg.det(A, p), linalg.det(B, p)
        assert (dA == 0) == (linalg.rank(A, p) < 5)
        assert linalg.det(linalg.matmul(A, B, p), p) == dA * dB % p


@pytest.mark.parametrize("p", PRIMES)
def test_pseudoinverse_properties(p):
    s = FieldSampler(p, 6)
    for _ in range(10):
        A = s.draw_array((4, 7))
        M = linalg.matmul(A.T, A, p)  # singular square
        X = linalg.pseudoinverse(M, p)
        assert np.array_equal(linalg.matmul(linalg.matmul(M, X, p), M, p), M)
        assert linalg.rank(X, p) == 7


def test_kronecker_mixed_product():
    p = DEFAULT_PRIME
    s = FieldSampler(p, 7)
    A, C = s.draw_array((3, 4)), s.draw_array((4, 2))
    B, D = s.draw_array((2, 3)), s.draw_array((3, 5))
    lhs = linalg.matmul(linalg.kronecker(A, B, p), linalg.kronecker(C, D, p), p)
    rhs = linalg.kronecker(linalg.matmul(A, C, p), linalg.matmul(B, D, p), p)
    assert np.array_equal(lhs, rhs)


def test_check_skew():
    p = 97
    linalg.check_skew(np.array([[0, 3], [94, 0]], dtype=np.int64), p)
    with pytest.raises(NotSkewSymmetric):
        linalg.check_skew(np.array([[0, 3], [3, 0]], dtype=np.int64), p)
    with pytest.raises(NotSkewSymmetric):
        linalg.check_skew(np.array([[1, 3], [94, 0]], dtype=np.int64), p)


def test_pfaffian_known_4x4():
    # pf [[0,a,b,c],[-a,0,d,e],[-b,-d,0,f],[-c,-e,-f,0]] = a f - b e + c d
    p = DEFAULT_PRIME
    a, b, c, d, e, f = 3, 5, 7, 11, 13, 17
    M = np.array([[0, a, b, c], [-a, 0, d, e], [-b, -d, 0, f],
                  [-c, -e, -f, 0]], dtype=np.int64) % p
    assert linalg.pfaffian(M, p) == (a * f - b * e + c * d) % p


def test_pfaffian_odd_order_is_zero():
    M = np.zeros((3, 3), dtype=np.int64)
    assert linalg.pfaffian(M, 97) == 0


@pytest.mark.parametrize("p", PRIMES)
def test_pfaffian_squares_to_det(p):
    s = FieldSampler(p, 8)
    for n in (2, 4, 6, 8):
        for _ in range(5):
            M = random_skew(s, n, p)
            assert linalg.pfaffian(M, p) ** 2 % p == linalg.det(M, p)


def test_pfaffian_congruence():
    p = DEFAULT_PRIME
    s = FieldSampler(p, 9)
    for _ in range(10):
        M = random_skew(s, 6, p)
        P = random_nonsingular(s, 6, p)
        PMPt = linalg.matmul(linalg.matmul(P, M, p), P.T, p)
        assert linalg.pfaffian(PMPt, p) == linalg.det(P, p) * linalg.pfaffian(M, p) % p


def _random_block(s, n, t, p):
    Q = s.draw_array((n, t))
    T = random_nonsingular(s, t, p)
    return Q, T


def test_schur_inverse_matches_direct():
    p = DEFAULT_PRIME
    s = FieldSampler(p, 10)
    for _ in range(10):
        Q, T = _random_block(s, 3, 5, p)
        Z = np.zeros((8, 8), dtype=np.int64)
        Z[:3, 3:] = Q
        Z[3:, :3] = -Q.T % p
        Z[3:, 3:] = T
        if linalg.rank(Z, p) < 8:
            continue
        got = linalg.schur_inverse(Q, -Q.T % p, T, p)
        assert np.array_equal(got, linalg.inverse(Z, p))


def _update_case(s, n, k, p):
    Z = random_nonsingular(s, n, p)
    D = np.zeros((n, n), dtype=np.int64)
    D[:k, :k] = s.draw_array((k, k))
    M = linalg.inverse(Z, p)
    return Z, D, M


@pytest.mark.parametrize("p", PRIMES)
def test_low_rank_update_inverse_matches_direct(p):
    s = FieldSampler(p, 11)
    n, k = 7, 3
    hits = 0
    while hits < 20:
        Z, D, M = _update_case(s, n, k, p)
        Zp = (Z + D) % p
        S, T = np.arange(k), np.arange(k, n)
        nonsing = linalg.rank(Zp, p) == n
        assert linalg.update_is_nonsingular(M[np.ix_(S, S)], D[:k, :k], p) == nonsing
        if not nonsing:
            continue
        got = linalg.low_rank_update_inverse(
            M[np.ix_(S, S)], M[np.ix_(S, T)], M[np.ix_(T, S)], M[np.ix_(T, T)],
            D[:k, :k], p)
        want = linalg.inverse(Zp, p)[np.ix_(T, T)]
        assert np.array_equal(got, want)
        hits += 1


def test_low_rank_update_singular_raises():
    p = 97
    Z = np.eye(4, dtype=np.int64)
    D = np.zeros((4, 4), dtype=np.int64)
    D[0, 0] = p - 1  # makes Z + D singular
    M = linalg.inverse(Z, p)
    with pytest.raises(Singular):
        linalg.low_rank_update_inverse(M[:1, :1], M[:1, 1:], M[1:, :1],
                                       M[1:, 1:], D[:1, :1], p)


def _check_factorization(F, M, p):
    assert np.array_equal(linalg.matmul(F.left, F.right, p), M % p)
    r = F.rank
    assert np.array_equal(linalg.matmul(F.left_inv, F.left, p),
                          np.eye(r, dtype=np.int64))
    assert np.array_equal(linalg.matmul(F.right, F.right_inv, p),
                          np.eye(r, dtype=np.int64))


@pytest.mark.parametrize("p", PRIMES)
def test_rank_factorization_invariants(p):
    s = FieldSampler(p, 12)
    for _ in range(10):
        A = s.draw_array((6, 4))
        M = linalg.matmul(A, s.draw_array((4, 7)), p)  # rank <= 4
        F = linalg.rank_factorization(M, p)
        assert F.rank == linalg.rank(M, p)
        _check_factorization(F, M, p)


@pytest.mark.parametrize("p", PRIMES)
def test_rank2_update_factorization_random_walk(p):
    s = FieldSampler(p, 13)
    for trial in range(10):
        n = 8
        M = s.draw_array((n, n))
        F = linalg.rank_factorization(M, p)
        for _ in range(6):
            u1, v1, u2, v2 = (s.draw_array(n) for _ in range(4))
            M = (M + np.outer(u1, v1) + np.outer(u2, v2)) % p
            F = linalg.rank2_update_factorization(F, u1, v1, u2, v2)
            assert F.rank == linalg.rank(M, p)
            _check_factorization(F, M, p)


def test_batch_rank_matches_scalar_rank():
    p = DEFAULT_PRIME
    s = FieldSampler(p, 14)
    stack = s.draw_array((12, 5, 7))
    stack[3, :, :] = 0
    stack[4] = np.tile(stack[4, :1, :], (5, 1))
    got = linalg.batch_rank(stack, p)
    want = [linalg.rank(stack[i], p) for i in range(12)]
    assert list(got) == want


def test_rref_reduces_and_reports_pivots():
    p = 97
    M = np.array([[2, 4, 1], [1, 2, 3], [3, 6, 4]], dtype=np.int64)
    R, pivots = linalg.rref(M, p)
    assert pivots == [0, 2]
    for j, c in enumerate(pivots):
        col = np.zeros(3, dtype=np.int64)
        col[j] = 1
        assert np.array_equal(R[:, c], col)
