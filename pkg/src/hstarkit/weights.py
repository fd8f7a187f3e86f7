"""Weight-vector calculus: admissibility, enumeration, sampling, composition.

A reduced weight of dimension ``n`` is a nondecreasing tuple of ``n + 1``
positive integers with gcd 1 in which every entry divides the total. Writing
``k_i = s / q_i`` turns that divisibility condition into the unit-fraction
equation ``sum(1 / k_i) = 1``, which has finitely many solutions in each
length and admits a bounded recursive search: the first denominator is at
most ``n + 1`` and every later bound is forced by what remains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .errors import InvalidWeightError
from .exact_linalg import IntVector


@dataclass(frozen=True)
class WeightVector:
    """Nondecreasing tuple of positive integer weights."""

    q: IntVector

    def __post_init__(self) -> None:
        if not self.q:
            raise InvalidWeightError("weight vector must be nonempty")
        if any(not isinstance(x, int) or x <= 0 for x in self.q):
            raise InvalidWeightError("weights must be positive integers")
        if any(a > b for a, b in zip(self.q, self.q[1:])):
            raise InvalidWeightError("weights must be nondecreasing")

    @classmethod
    def of(cls, values) -> "WeightVector":
        return cls(tuple(sorted(int(x) for x in values)))

    @property
    def s(self) -> int:
        """Sum of the weights."""
        return sum(self.q)

    def gcd(self) -> int:
        return math.gcd(*self.q)

    def __iter__(self):
        return iter(self.q)

    def __len__(self) -> int:
        return len(self.q)

    def __getitem__(self, k: int) -> int:
        return self.q[k]


@dataclass(frozen=True)
class SimplexType:
    """Classification pair: reduced weight plus its integer multiplier."""

    q_red: WeightVector
    lam: int

    def __post_init__(self) -> None:
        if self.lam < 1:
            raise InvalidWeightError("multiplier must be positive")
        if self.q_red.gcd() != 1:
            raise InvalidWeightError("reduced weight must have gcd 1")

    def to_json(self) -> dict:
        return {"q_red": list(self.q_red.q), "lambda": self.lam}

    @classmethod
    def from_json(cls, obj: dict) -> "SimplexType":
        return cls(WeightVector(tuple(int(x) for x in obj["q_red"])), int(obj["lambda"]))


def satisfies_condition(q: WeightVector | tuple[int, ...]) -> bool:
    """True when gcd of the entries is 1 and every entry divides the sum."""
    vals = tuple(q)
    if not vals or any(x <= 0 for x in vals):
        return False
    if math.gcd(*vals) != 1:
        return False
    s = sum(vals)
    return all(s % x == 0 for x in vals)


def _weight_from_unit_fractions(ks: list[int]) -> WeightVector:
    s = math.lcm(*ks)
    q = tuple(sorted(s // k for k in ks))
    return WeightVector(q)


def enumerate_reduced_weights(dim: int) -> tuple[WeightVector, ...]:
    """All reduced admissible weights of length ``dim + 1``, sorted, no duplicates."""
    if dim < 1:
        raise InvalidWeightError("dimension must be at least 1")
    n_terms = dim + 1
    found: list[WeightVector] = []

    def recurse(remaining: Fraction, terms: int, lo: int, acc: list[int]) -> None:
        if terms == 1:
            if remaining.numerator == 1 and remaining.denominator >= lo:
                found.append(_weight_from_unit_fractions(acc + [remaining.denominator]))
            return
        lo_t = max(lo, remaining.denominator // remaining.numerator + 1)
        hi_t = (terms * remaining.denominator) // remaining.numerator
        for k in range(lo_t, hi_t + 1):
            recurse(remaining - Fraction(1, k), terms - 1, k, acc + [k])

    recurse(Fraction(1), n_terms, 1, [])
    return tuple(sorted(found, key=lambda w: w.q))


def sample_weight(dim: int, rng: Random) -> WeightVector:
    """Draw one admissible reduced weight using the supplied generator.

    Each denominator is drawn uniformly from the recursion's feasible range;
    a draw that strands the final term on a non-unit remainder is thrown away
    and the whole vector is redrawn, so every returned weight is admissible.
    """
    n_terms = dim + 1
    while True:
        ks: list[int] = []
        remaining = Fraction(1)
        lo = 1
        ok = True
        for terms in range(n_terms, 0, -1):
            if terms == 1:
                if remaining.numerator == 1 and remaining.denominator >= lo:
                    ks.append(remaining.denominator)
                else:
                    ok = False
                break
            lo_t = max(lo, remaining.denominator // remaining.numerator + 1)
            hi_t = (terms * remaining.denominator) // remaining.numerator
            if lo_t > hi_t:
                ok = False
                break
            k = rng.randrange(lo_t, hi_t + 1)
            ks.append(k)
            remaining -= Fraction(1, k)
            lo = k
        if ok:
            return _weight_from_unit_fractions(ks)


def sample_random_weights(dim: int, count: int, seed: int) -> tuple[WeightVector, ...]:
    """``count`` admissible reduced weights, reproducible from ``seed``."""
    if dim < 1:
        raise InvalidWeightError("dimension must be at least 1")
    rng = Random(seed)
    return tuple(sample_weight(dim, rng) for _ in range(count))


@dataclass(frozen=True)
class TypeDecomposition:
    """One way a type arises from two reduced weights glued at index ``i``."""

    p: WeightVector
    q: WeightVector
    i: int
    d: int


def compose_types(p: WeightVector, q: WeightVector, i: int) -> SimplexType:
    """Type of the composite built from reduced weights ``p`` and ``q`` at ``i``.

    With ``s = sum(p)`` and ``d = gcd(q[i], s)``, the composite weight is
    ``(q[i]*p[0], ..., q[i]*p[n], s*q[0], ..., s*q[i] omitted, ..., s*q[m])``
    divided through by ``d``, sorted, with multiplier ``d``.
    """
    pv, qv = tuple(p), tuple(q)
    if math.gcd(*pv) != 1 or math.gcd(*qv) != 1:
        raise InvalidWeightError("compose_types needs reduced inputs (gcd 1)")
    if not 0 <= i < len(qv):
        raise InvalidWeightError(f"index {i} out of range for weight of length {len(qv)}")
    s = sum(pv)
    d = math.gcd(qv[i], s)
    merged = [qv[i] * x for x in pv] + [s * x for k, x in enumerate(qv) if k != i]
    reduced = tuple(sorted(x // d for x in merged))
    return SimplexType(WeightVector(reduced), d)


def type_decompositions(t: SimplexType) -> tuple[TypeDecomposition, ...]:
    """All ``(p, q, i)`` with ``compose_types(p, q, i) == t``.

    A nonempty answer is a necessary condition for the simplex itself to
    split, not a proof: for multiplier > 1 there can be several simplices of
    the same type and only some of them decompose.

    Inverts the composition formula by scanning bipartitions ``(A, B)`` of
    the target multiset with ``len(A) >= 2`` and ``len(B) >= 1``: ``A``
    rescales to ``p``, the removed entry is ``d * gcd(A)``, and each entry of
    ``B`` must rescale by ``d / sum(p)`` to an entry of ``q``.
    """
    values = tuple(t.q_red)
    n_total = len(values)
    d = t.lam
    results: set[TypeDecomposition] = set()
    seen_parts: set[tuple[int, ...]] = set()
    for mask in range(1, 1 << n_total):
        a_vals = tuple(sorted(values[k] for k in range(n_total) if mask >> k & 1))
        if not 2 <= len(a_vals) <= n_total - 1:
            continue
        if a_vals in seen_parts:
            continue
        seen_parts.add(a_vals)
        b_vals = list(values)
        for x in a_vals:
            b_vals.remove(x)
        g = math.gcd(*a_vals)
        p_vals = tuple(x // g for x in a_vals)
        s = sum(p_vals)
        if any((x * d) % s != 0 for x in b_vals):
            continue
        q_vals = tuple(sorted([d * g] + [x * d // s for x in b_vals]))
        if not satisfies_condition(p_vals) or not satisfies_condition(q_vals):
            continue
        p_w = WeightVector(p_vals)
        q_w = WeightVector(q_vals)
        for i, q_i in enumerate(q_vals):
            if q_i != d * g:
                continue
            if compose_types(p_w, q_w, i) == t:
                results.add(TypeDecomposition(p_w, q_w, i, d))
    return tuple(sorted(results, key=lambda r: (r.p.q, r.q.q, r.i)))
