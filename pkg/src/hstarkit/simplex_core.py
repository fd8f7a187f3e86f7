"""Lattice simplices: weights, types, reflexivity, and the free-sum operation.

A full-dimensional simplex in ``Z^n`` is stored as its ordered list of
``n + 1`` vertices. The weight of vertex ``i`` is the absolute determinant of
the other ``n`` vertices; by Cramer's rule the unsorted weights satisfy
``sum(q_i * v_i) = 0`` whenever the origin is interior, so the sorted weight
vector classifies reflexive simplices up to unimodular equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import (
    DegenerateSimplexError,
    InvalidWeightError,
    InvariantViolation,
    PreconditionError,
)
from .exact_linalg import (
    IntMatrix,
    IntVector,
    RationalVector,
    determinant,
    solve_rational,
    unimodular_completion,
)
from .weights import SimplexType, WeightVector, satisfies_condition

__all__ = [
    "FacetDescription",
    "LatticeSimplex",
    "SimplexType",
    "WeightVector",
    "aligned_weights",
    "build_delta_q",
    "free_sum",
    "is_reflexive",
    "simplex_from_json",
    "simplex_to_json",
    "simplex_type",
    "verify_weight_relation",
    "weight_vector",
]


@dataclass(frozen=True)
class LatticeSimplex:
    """Full-dimensional lattice simplex given by its ordered vertices."""

    vertices: tuple[IntVector, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) < 2:
            raise DegenerateSimplexError("need at least two vertices")
        n = len(self.vertices[0])
        if any(len(v) != n for v in self.vertices):
            raise DegenerateSimplexError("vertices have mixed dimensions")
        if len(self.vertices) != n + 1:
            raise DegenerateSimplexError(
                f"{len(self.vertices)} vertices cannot span a {n}-dimensional simplex"
            )
        if any(not isinstance(x, int) for v in self.vertices for x in v):
            raise DegenerateSimplexError("vertex coordinates must be integers")
        if self.lifted_det == 0:
            raise DegenerateSimplexError("vertices are affinely dependent")

    @classmethod
    def of(cls, vertices) -> "LatticeSimplex":
        return cls(tuple(tuple(int(x) for x in v) for v in vertices))

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @cached_property
    def lifted_matrix(self) -> IntMatrix:
        """Square matrix whose columns are the vertices with a 1 appended."""
        return IntMatrix.from_columns([v + (1,) for v in self.vertices])

    @cached_property
    def lifted_det(self) -> int:
        return determinant(self.lifted_matrix)

    @property
    def normalized_volume(self) -> int:
        return abs(self.lifted_det)

    @cached_property
    def origin_barycentric(self) -> RationalVector:
        """Coefficients x with ``sum(x_i * v_i) = 0`` and ``sum(x_i) = 1``."""
        rhs = (0,) * self.dim + (1,)
        return solve_rational(self.lifted_matrix, rhs)

    @property
    def origin_interior(self) -> bool:
        return all(c > 0 for c in self.origin_barycentric)


@dataclass(frozen=True)
class FacetDescription:
    """Facet normals, indexed by the opposite vertex.

    ``normals[i]`` is the rational vector ``a`` with ``<a, x> = 1`` on the
    facet avoiding vertex ``i``, or None when that facet's hyperplane passes
    through the origin and no such normalization exists.
    """

    normals: tuple[RationalVector | None, ...]

    def all_integral(self) -> bool:
        return all(
            a is not None and all(c.denominator == 1 for c in a) for a in self.normals
        )


def aligned_weights(s: LatticeSimplex) -> IntVector:
    """Absolute vertex-deletion minors in vertex order (unsorted)."""
    out = []
    for i in range(len(s.vertices)):
        others = [v for k, v in enumerate(s.vertices) if k != i]
        out.append(abs(determinant(IntMatrix.from_columns(others))))
    return tuple(out)


def weight_vector(s: LatticeSimplex) -> WeightVector:
    """Sorted absolute vertex-deletion minors of the simplex."""
    return WeightVector(tuple(sorted(aligned_weights(s))))


def simplex_type(s: LatticeSimplex) -> SimplexType:
    """Reduced weight together with the gcd it was divided by."""
    q = weight_vector(s)
    lam = q.gcd()
    return SimplexType(WeightVector(tuple(x // lam for x in q.q)), lam)


def verify_weight_relation(s: LatticeSimplex, q) -> bool:
    """Check ``sum(q_i * v_i) = 0`` for vertex-aligned weights ``q``."""
    vals = tuple(q)
    if len(vals) != len(s.vertices):
        return False
    n = s.dim
    return all(
        sum(w * v[j] for w, v in zip(vals, s.vertices)) == 0 for j in range(n)
    )


def build_delta_q(q: WeightVector) -> LatticeSimplex:
    """Construct the unique reflexive simplex with reduced weight ``q``.

    The vertices are the images of the standard basis of ``Z^(n+1)`` under a
    projection ``Z^(n+1) -> Z^n`` whose kernel is generated by ``q``;
    concretely, the columns of the top rows of ``unimodular_completion(q)``.
    The weight relation then holds by construction, and reflexivity is
    verified rather than assumed.
    """
    if not isinstance(q, WeightVector):
        q = WeightVector(tuple(q))
    if q.gcd() != 1 or not satisfies_condition(q.q):
        raise InvalidWeightError(f"weight {q.q} is not reduced admissible")
    if len(q) < 2:
        raise InvalidWeightError("need at least two weights")
    u = unimodular_completion(q.q)
    vertices = tuple(
        tuple(u.entries[r][i] for r in range(len(q) - 1)) for i in range(len(q))
    )
    simplex = LatticeSimplex(vertices)
    if weight_vector(simplex) != q:
        raise InvariantViolation(f"constructed simplex has wrong weight for {q.q}")
    if simplex.normalized_volume != q.s:
        raise InvariantViolation("normalized volume does not equal the weight sum")
    if not simplex.origin_interior:
        raise InvariantViolation("origin is not interior to the constructed simplex")
    reflexive, _ = is_reflexive(simplex)
    if not reflexive:
        raise InvariantViolation(f"constructed simplex for {q.q} is not reflexive")
    return simplex


def is_reflexive(s: LatticeSimplex) -> tuple[bool, FacetDescription]:
    """Reflexivity test with the facet data it is decided on.

    True exactly when the origin is strictly interior and every facet normal,
    scaled so the facet lies on ``<a, x> = 1``, is integral.
    """
    n = s.dim
    bary = s.origin_barycentric
    normals: list[RationalVector | None] = []
    for i in range(n + 1):
        if bary[i] == 0:
            # Facet hyperplane passes through the origin; no unit scaling.
            normals.append(None)
            continue
        others = [v for k, v in enumerate(s.vertices) if k != i]
        a = solve_rational(IntMatrix.from_rows(others), (1,) * n)
        normals.append(tuple(a))
    facets = FacetDescription(tuple(normals))
    reflexive = s.origin_interior and facets.all_integral()
    return reflexive, facets


def free_sum(p: LatticeSimplex, q: LatticeSimplex, i: int) -> LatticeSimplex:
    """Join two simplices along vertex ``i`` of the second.

    The first operand is embedded in the leading coordinates, the second is
    translated so vertex ``i`` sits at the origin (which is interior to the
    first operand) and embedded in the trailing coordinates. The result is an
    ``(n + m)``-simplex on ``n + m + 1`` vertices.
    """
    if not 0 <= i <= q.dim:
        raise InvalidWeightError(f"vertex index {i} out of range")
    if not p.origin_interior:
        raise PreconditionError("origin must be strictly interior to the first operand")
    n, m = p.dim, q.dim
    w_i = q.vertices[i]
    vertices = [v + (0,) * m for v in p.vertices]
    vertices += [
        (0,) * n + tuple(a - b for a, b in zip(w, w_i))
        for k, w in enumerate(q.vertices)
        if k != i
    ]
    return LatticeSimplex(tuple(vertices))


def simplex_to_json(s: LatticeSimplex) -> dict:
    return {"dim": s.dim, "vertices": [list(v) for v in s.vertices]}


def simplex_from_json(obj: dict) -> LatticeSimplex:
    simplex = LatticeSimplex.of(obj["vertices"])
    if "dim" in obj and int(obj["dim"]) != simplex.dim:
        raise DegenerateSimplexError("declared dimension does not match vertices")
    return simplex
