import numpy as np
import pytest

from conftest import seeded_instances
from fracparity import dual, instance, oracle, representations as rep, subspaces
from fracparity.errors import DimensionMismatch, MaxRankNotAttained, ParseError
from fracparity.field import DEFAULT_PRIME, FieldSampler, derive_seed

P = DEFAULT_PRIME


def test_wong_limit_trivial_for_nonsingular():
    ls = instance.random_instance(3, 4, 1)
    M = rep.blowup2_nmajor(ls, FieldSampler(P, 2).draw_array((4, 2, 2)))
    W = dual.wong_limit(M, dual.blowup_generators(ls), P)
    assert W.dim == 0


def test_wong_limit_escapes_the_image_at_deficient_points(triangle):
    # the zero point has full kernel, so one application already leaves im M
    M = np.zeros((6, 6), dtype=np.int64)
    W = dual.wong_limit(M, dual.blowup_generators(triangle), P)
    assert W.dim > 0
    assert not (W <= subspaces.image(M, P))


def test_dominant_cover_graph_examples(single_line, twin_lines, path3, triangle):
    for ls in (single_line, twin_lines):
        cov = dual.dominant_two_cover(ls, 3)
        assert (cov.S.dim, cov.T.dim) == (0, 2)
        assert cov.T == subspaces.full_space(2, P)
    cov = dual.dominant_two_cover(path3, 4)
    assert (cov.S.dim, cov.T.dim) == (1, 1)
    assert np.array_equal(cov.S.basis[:, 0], [0, 1, 0])  # the shared vertex
    assert cov.S == cov.T
    cov = dual.dominant_two_cover(triangle, 5)
    assert (cov.S.dim, cov.T.dim) == (0, 3)


def test_cover_components_are_ordered_small_to_large(triangle):
    # the pair only certifies when the image side comes first; reversing
    # the triangle's components breaks nestedness
    cov = dual.dominant_two_cover(triangle, 6)
    reversed_pair = dual.NestedTwoCover(cov.T, cov.S)
    assert dual.verify_two_cover(triangle, cov).nested
    assert not dual.verify_two_cover(triangle, reversed_pair).nested


def test_cover_value_matches_primal_optimum():
    for t, ls in enumerate(seeded_instances(15, 10)):
        truth = oracle.brute_force(ls, derive_seed(11, f"{t}"))
        cov = dual.dominant_two_cover(ls, derive_seed(12, f"{t}"))
        chk = dual.verify_two_cover(ls, cov)
        assert chk.nested and chk.covering
        assert chk.value == truth.optimum_doubled


def test_cover_is_seed_independent():
    ls = instance.random_instance(5, 4, 42)
    covers = [dual.dominant_two_cover(ls, s) for s in range(5)]
    for c in covers[1:]:
        assert c.S == covers[0].S and c.T == covers[0].T


def test_verify_two_cover_edge_cases(path3):
    full = subspaces.full_space(3, P)
    zero = subspaces.zero_subspace(3, P)
    both_full = dual.verify_two_cover(path3, dual.NestedTwoCover(full, full))
    assert both_full.nested and both_full.covering and both_full.value == 6
    both_zero = dual.verify_two_cover(path3, dual.NestedTwoCover(zero, zero))
    assert both_zero.nested and not both_zero.covering
    with pytest.raises(DimensionMismatch):
        dual.verify_two_cover(path3, dual.NestedTwoCover(
            subspaces.full_space(4, P), subspaces.full_space(4, P)))


def test_line_operators_are_rank_two_skew(triangle):
    from fracparity import linalg
    for A in dual.line_operators(triangle):
        linalg.check_skew(A, P)
        assert linalg.rank(A, P) == 2
    assert len(dual.blowup_generators(triangle)) == 4 * triangle.m


def test_cover_round_trip(path3):
    cov = dual.dominant_two_cover(path3, 7)
    text = dual.serialize_cover(cov)
    assert text.splitlines()[0] == "cover n 3"
    again = dual.parse_cover(text, P)
    assert again.S == cov.S and again.T == cov.T


def test_cover_parse_errors():
    with pytest.raises(ParseError):
        dual.parse_cover("bogus\n", P)
    with pytest.raises(ParseError):
        dual.parse_cover("cover n 2\nS dim 1\n1\nT dim 0\n", P)


def test_failed_sampling_is_flagged(monkeypatch, triangle):
    # forcing the sampled point to rank deficiency must raise, not mislead
    monkeypatch.setattr(rep, "blowup2_nmajor",
                        lambda ls, X: np.zeros((2 * ls.n, 2 * ls.n), dtype=np.int64))
    with pytest.raises(MaxRankNotAttained):
        dual.dominant_two_cover(triangle, 8)
