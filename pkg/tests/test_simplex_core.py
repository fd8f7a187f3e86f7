import json
import random
from fractions import Fraction

import pytest

from hstarkit.errors import (
    DegenerateSimplexError,
    InvalidWeightError,
    PreconditionError,
)
from hstarkit.simplex_core import (
    LatticeSimplex,
    SimplexType,
    WeightVector,
    aligned_weights,
    build_delta_q,
    free_sum,
    is_reflexive,
    simplex_from_json,
    simplex_to_json,
    simplex_type,
    verify_weight_relation,
    weight_vector,
)
from hstarkit.weights import enumerate_reduced_weights


def standard_simplex(n):
    verts = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    verts.append(tuple(-1 for _ in range(n)))
    return LatticeSimplex.of(verts)


REEVE_2 = LatticeSimplex.of([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)])
FAMILY_D3 = LatticeSimplex.of([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-3, -4, -4)])


def test_simplex_validation():
    with pytest.raises(DegenerateSimplexError):
        LatticeSimplex.of([(1, 0), (0, 1), (1, 1), (0, 0)])
    with pytest.raises(DegenerateSimplexError):
        LatticeSimplex.of([(1, 0), (2, 0), (3, 0)])
    s = standard_simplex(3)
    assert s.dim == 3
    assert s.normalized_volume == 4


def test_weight_vector_standard():
    for n in (1, 2, 3, 5):
        assert weight_vector(standard_simplex(n)).q == (1,) * (n + 1)


def test_weight_vector_123():
    s = LatticeSimplex.of([(1, 0), (0, 1), (-2, -3)])
    assert weight_vector(s).q == (1, 2, 3)
    # Hand oracle for the three 2x2 minors:
    #   drop v0: |det[(0,1),(-2,-3)]| = |0*(-3) - 1*(-2)| = 2
    #   drop v1: |det[(1,0),(-2,-3)]| = 3
    #   drop v2: |det[(1,0),(0,1)]| = 1
    assert aligned_weights(s) == (2, 3, 1)


def test_weight_vector_family_d3():
    assert weight_vector(FAMILY_D3).q == (1, 3, 4, 4)


def test_simplex_type_standard():
    t = simplex_type(standard_simplex(4))
    assert t == SimplexType(WeightVector((1, 1, 1, 1, 1)), 1)


def test_simplex_type_scaled_segment():
    s = LatticeSimplex.of([(2,), (-2,)])
    assert simplex_type(s) == SimplexType(WeightVector((1, 1)), 2)


def test_simplex_type_of_free_sum_123():
    p = build_delta_q(WeightVector((1, 2, 3)))
    t = simplex_type(free_sum(p, p, 1))
    assert t == SimplexType(WeightVector((1, 2, 3, 3, 9)), 2)


def test_build_delta_q_standard():
    for n in (1, 2, 3, 4):
        s = build_delta_q(WeightVector((1,) * (n + 1)))
        assert weight_vector(s).q == (1,) * (n + 1)
        assert s.normalized_volume == n + 1
        assert simplex_type(s).lam == 1


def test_build_delta_q_112():
    s = build_delta_q(WeightVector((1, 1, 2)))
    assert s.normalized_volume == 4
    assert weight_vector(s).q == (1, 1, 2)
    assert is_reflexive(s)[0]


def test_build_delta_q_1344_matches_family():
    s = build_delta_q(WeightVector((1, 3, 4, 4)))
    assert weight_vector(s) == weight_vector(FAMILY_D3)
    assert s.normalized_volume == FAMILY_D3.normalized_volume == 12


def test_build_delta_q_rejects_inadmissible():
    with pytest.raises(InvalidWeightError):
        build_delta_q(WeightVector((1, 1, 3)))
    with pytest.raises(InvalidWeightError):
        build_delta_q(WeightVector((2, 2, 4)))


def test_build_delta_q_roundtrip_dims_1_to_3():
    for dim in (1, 2, 3):
        for q in enumerate_reduced_weights(dim):
            s = build_delta_q(q)
            assert weight_vector(s) == q
            assert simplex_type(s) == SimplexType(q, 1)
            assert s.normalized_volume == q.s
            assert s.origin_interior
            assert is_reflexive(s)[0]
            assert verify_weight_relation(s, aligned_weights(s))


def test_volume_equals_sum_of_aligned_minors():
    rng = random.Random(8)
    for dim in (1, 2, 3):
        for q in enumerate_reduced_weights(dim):
            s = build_delta_q(q)
            assert s.normalized_volume == sum(aligned_weights(s))


def test_is_reflexive_triangle():
    ok, facets = is_reflexive(LatticeSimplex.of([(1, 0), (0, 1), (-1, -1)]))
    assert ok
    assert facets.all_integral()


def test_is_reflexive_123_normals():
    ok, facets = is_reflexive(LatticeSimplex.of([(1, 0), (0, 1), (-2, -3)]))
    assert ok
    got = {tuple(int(c) for c in a) for a in facets.normals}
    assert got == {(1, 1), (1, -1), (-2, 1)}


def test_is_reflexive_rejects_reeve():
    ok, facets = is_reflexive(REEVE_2)
    assert not ok
    # The origin is a vertex here, so some facet hyperplanes contain it.
    assert any(a is None for a in facets.normals)


def test_is_reflexive_rejects_scaled_segment():
    ok, facets = is_reflexive(LatticeSimplex.of([(2,), (-2,)]))
    assert not ok
    assert facets.normals == ((Fraction(1, 2),), (Fraction(-1, 2),))


def test_verify_weight_relation():
    assert verify_weight_relation(standard_simplex(3), (1, 1, 1, 1))
    s = LatticeSimplex.of([(1, 0), (0, 1), (-2, -3)])
    assert verify_weight_relation(s, (2, 3, 1))
    assert not verify_weight_relation(s, (2, 3, 2))
    assert not verify_weight_relation(s, (3, 2, 1))


def test_free_sum_segments():
    p = LatticeSimplex.of([(1,), (-1,)])
    q = LatticeSimplex.of([(-1,), (1,)])  # vertex 0 is -1
    out = free_sum(p, q, 0)
    assert out.vertices == ((1, 0), (-1, 0), (0, 2))


def test_free_sum_dimension_additive():
    p = build_delta_q(WeightVector((1, 1, 2)))
    q = build_delta_q(WeightVector((1, 2, 3)))
    for i in range(3):
        assert free_sum(p, q, i).dim == 4


def test_free_sum_requires_interior_origin():
    q = standard_simplex(2)
    with pytest.raises(PreconditionError):
        free_sum(REEVE_2, q, 0)


def test_free_sum_preserves_reflexivity():
    rng = random.Random(17)
    pool = [build_delta_q(q) for d in (1, 2) for q in enumerate_reduced_weights(d)]
    for _ in range(12):
        p = rng.choice(pool)
        q = rng.choice(pool)
        for i in range(q.dim + 1):
            assert is_reflexive(free_sum(p, q, i))[0]


def test_json_roundtrip():
    s = build_delta_q(WeightVector((1, 2, 3)))
    blob = json.dumps(simplex_to_json(s))
    assert simplex_from_json(json.loads(blob)) == s
    with pytest.raises(DegenerateSimplexError):
        simplex_from_json({"dim": 5, "vertices": [[1, 0], [0, 1], [-1, -1]]})
