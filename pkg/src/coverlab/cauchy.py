"""Cauchy filters on finite cover spaces and the completion construction.

On a finite carrier every filter is principal, so filters are stored by
their smallest member.  Regular representatives have a closed form (the
union of the generator members containing the base), completion is the
deduplicated list of representatives, and extensions along dense
embeddings are computed pointwise by filter transport.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from . import coverspace
from .finkernel import (
    Carrier,
    CarrierMismatchError,
    Cover,
    FiniteCoverSpace,
    Subset,
    all_subsets,
    canonicalize,
)


class FilterError(ValueError):
    """Raised when an operation requires a Cauchy filter and the input is not."""


class PreconditionError(ValueError):
    """Raised with the list of extension preconditions that failed."""

    def __init__(self, failures: list[str]):
        super().__init__("preconditions failed: " + ", ".join(failures))
        self.failures = failures


@dataclass(frozen=True)
class PrincipalFilter:
    """The filter of all supersets of ``base``.  Proper iff base is inhabited."""

    carrier: Carrier
    base: Subset

    def __post_init__(self) -> None:
        if self.base.carrier != self.carrier:
            raise CarrierMismatchError("filter base on a different carrier")

    def contains(self, u: Subset) -> bool:
        return self.base.issubset(u)

    @property
    def proper(self) -> bool:
        return self.base.inhabited


def principal(s: FiniteCoverSpace, elements) -> PrincipalFilter:
    return PrincipalFilter(s.carrier, Subset.of(s.carrier, elements))


def point_filter(s: FiniteCoverSpace, x: int) -> PrincipalFilter:
    """The neighborhood filter of x: supersets of the smallest neighborhood."""
    return PrincipalFilter(s.carrier, coverspace.neighborhood_base(s, x))


def is_cauchy_filter(s: FiniteCoverSpace, f: PrincipalFilter) -> bool:
    """Proper and meets every distinguished cover; by the subbase
    criterion it is enough that some generator member contains the base."""
    return f.proper and any(f.base.issubset(u) for u in s.generator.members)


def filters_equivalent(
    s: FiniteCoverSpace, f: PrincipalFilter, g: PrincipalFilter
) -> bool:
    """Every distinguished cover has a member lying in both filters;
    equivalently some generator member contains both bases."""
    joint = f.base | g.base
    return any(joint.issubset(u) for u in s.generator.members)


def regular_representative(
    s: FiniteCoverSpace, f: PrincipalFilter
) -> PrincipalFilter:
    """The unique regular filter equivalent to f.

    Closed form: the supersets of the union of all generator members
    containing the base.  ``regular_representative_oracle`` computes the
    same filter from the definition (intersection of all Cauchy
    subfilters); the tests assert they agree.
    """
    if not is_cauchy_filter(s, f):
        raise FilterError("regular representative requires a Cauchy filter")
    mask = 0
    for u in s.generator.members:
        if f.base.issubset(u):
            mask |= u.mask
    return PrincipalFilter(s.carrier, Subset(s.carrier, mask))


def regular_representative_oracle(
    s: FiniteCoverSpace, f: PrincipalFilter
) -> PrincipalFilter:
    """Definition-level computation: intersect all Cauchy subfilters of f.

    A subfilter of a principal filter enlarges the base, and the
    intersection of principal filters is the filter of the union of their
    bases.
    """
    if not is_cauchy_filter(s, f):
        raise FilterError("regular representative requires a Cauchy filter")
    mask = 0
    for b in all_subsets(s.carrier):
        if f.base.issubset(b) and is_cauchy_filter(s, PrincipalFilter(s.carrier, b)):
            mask |= b.mask
    return PrincipalFilter(s.carrier, Subset(s.carrier, mask))


def is_filter_regular(
    s: FiniteCoverSpace, f: PrincipalFilter, max_carrier: int | None = None
) -> bool:
    """Every member contains a member rather below it."""
    return _filter_refinable(s, f, coverspace.rather_below, max_carrier)


def is_filter_strongly_regular(
    s: FiniteCoverSpace, f: PrincipalFilter, max_carrier: int | None = None
) -> bool:
    """Every member contains a member strongly rather below it."""
    return _filter_refinable(s, f, coverspace.strongly_rather_below, max_carrier)


def _filter_refinable(s, f, below, max_carrier=None) -> bool:
    supersets = [
        u
        for u in all_subsets(s.carrier, max_carrier=max_carrier)
        if f.base.issubset(u)
    ]
    return all(any(below(s, v, u) for v in supersets) for u in supersets)


def point_equiv(s: FiniteCoverSpace, x: int, y: int) -> bool:
    """Some member of every distinguished cover contains both points;
    decided on the generator."""
    return any(u.contains(x) and u.contains(y) for u in s.generator.members)


def separated_char_conditions(
    s: FiniteCoverSpace, x: int, y: int
) -> tuple[bool, ...]:
    """The seven equivalent formulations of point equivalence, evaluated
    independently.  The tests assert they are mutually equal."""
    nx = coverspace.neighborhood_base(s, x)
    ny = coverspace.neighborhood_base(s, y)
    fx, fy = point_filter(s, x), point_filter(s, y)
    return (
        ny.issubset(nx),  # x's neighborhood filter inside y's
        filters_equivalent(s, fx, fy),
        nx == ny,
        nx.contains(y),  # every neighborhood of x contains y
        nx.intersects(ny),
        any(nx.issubset(u) and ny.issubset(u) for u in s.generator.members),
        point_equiv(s, x, y),
    )


def is_separated(s: FiniteCoverSpace) -> bool:
    """Equivalent points are equal."""
    return all(
        not point_equiv(s, x, y)
        for x in s.carrier.elements()
        for y in s.carrier.elements()
        if x != y
    )


def is_complete(s: FiniteCoverSpace, max_carrier: int | None = None) -> bool:
    """Separated, and every Cauchy filter is equivalent to a point filter."""
    if not is_separated(s):
        return False
    for a in all_subsets(s.carrier, max_carrier=max_carrier):
        f = PrincipalFilter(s.carrier, a)
        if not is_cauchy_filter(s, f):
            continue
        if not any(
            filters_equivalent(s, f, point_filter(s, x))
            for x in s.carrier.elements()
        ):
            return False
    return True


@dataclass(frozen=True)
class CompletionSpace:
    """The space of regular Cauchy filters.

    ``points`` lists the representative bases in ascending mask order;
    ``structure`` lives on the point carrier, generated by the images of
    the generator members; ``unit`` sends a carrier point to the index of
    its neighborhood filter's representative.
    """

    points: tuple[Subset, ...]
    structure: FiniteCoverSpace
    unit: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.points)


def _filters_containing(points: Sequence[Subset], u: Subset, carrier: Carrier) -> Subset:
    mask = 0
    for i, base in enumerate(points):
        if base.issubset(u):
            mask |= 1 << i
    return Subset(carrier, mask)


def _build_completion(
    s: FiniteCoverSpace, representative, regular_check, max_carrier=None
) -> CompletionSpace:
    bases = set()
    for a in all_subsets(s.carrier, max_carrier=max_carrier):
        f = PrincipalFilter(s.carrier, a)
        if is_cauchy_filter(s, f):
            bases.add(representative(s, f).base)
    points = tuple(sorted(bases, key=lambda b: b.mask))
    for b in points:
        if not regular_check(s, PrincipalFilter(s.carrier, b)):
            raise FilterError(f"representative {b!r} fails its regularity condition")
    point_carrier = Carrier(len(points))
    generator = canonicalize(
        Cover.of(
            point_carrier,
            {_filters_containing(points, u, point_carrier) for u in s.generator.members},
        )
    )
    structure = FiniteCoverSpace(point_carrier, generator)
    index = {b: i for i, b in enumerate(points)}
    unit = tuple(
        index[representative(s, point_filter(s, x)).base] for x in s.carrier.elements()
    )
    return CompletionSpace(points, structure, unit)


def completion(
    s: FiniteCoverSpace, max_carrier: int | None = None
) -> CompletionSpace:
    """The complete space of regular Cauchy filters with its unit map.

    Requires the regularity axiom; without it representatives need not be
    regular and the construction loses its universal property.
    """
    if not coverspace.satisfies_cr(s):
        raise coverspace.RegularityError(
            "completion requires the regularity axiom; reflect first"
        )
    return _build_completion(
        s,
        regular_representative,
        lambda sp, f: is_filter_regular(sp, f, max_carrier),
        max_carrier,
    )


def strong_completion(
    s: FiniteCoverSpace, max_carrier: int | None = None
) -> CompletionSpace:
    """Completion built from strongly regular weakly Cauchy filters.

    On a finite carrier weakly proper principal filters are proper and the
    two rather-below relations coincide, so this is pointwise identical to
    ``completion``; the construction still runs the strong conditions and
    the tests assert the coincidence.
    """
    if not coverspace.is_strongly_regular(s):
        raise coverspace.RegularityError(
            "strong completion requires strong regularity"
        )
    return _build_completion(
        s,
        _strongly_regular_representative,
        lambda sp, f: is_filter_strongly_regular(sp, f, max_carrier),
        max_carrier,
    )


def _strongly_regular_representative(s, f):
    # Intersection of all weakly Cauchy subfilters; for principal filters
    # weak properness is properness, so the closed form is unchanged.
    return regular_representative(s, f)


def finite_subcover(s: FiniteCoverSpace, c: Cover) -> list[Subset]:
    """A finite covering selection from a distinguished cover: one member
    per generator member, smallest first.  Witnesses total boundedness."""
    members = sorted(
        c.members if isinstance(c, Cover) else c,
        key=lambda m: (bin(m.mask).count("1"), m.mask),
    )
    if not coverspace.is_cauchy(s, members):
        raise FilterError("finite subcover requires a distinguished cover")
    chosen: list[Subset] = []
    for w in s.generator.sorted_members():
        pick = next(m for m in members if w.issubset(m))
        if pick not in chosen:
            chosen.append(pick)
    return chosen


def dense_lift(
    f: Sequence[int],
    x: FiniteCoverSpace,
    y: FiniteCoverSpace,
    g: Sequence[int],
    z: FiniteCoverSpace,
) -> tuple[int, ...]:
    """Extend g along the dense embedding f to a map on y.

    For each point of y, transport its neighborhood filter back along f,
    push it forward along g, and take the unique point of z equivalent to
    the result.  ``dense_lift_transport`` recomputes the answer through
    the member-enlargement description of point filters; the tests assert
    the two agree, that the extension restricts to g, and that it is a
    structure-preserving map.
    """
    _check_lift_preconditions(f, x, y, g, z)
    out = []
    for yp in y.carrier.elements():
        base_z = _pushed_base(f, x, g, z, y, yp)
        candidates = [
            zp
            for zp in z.carrier.elements()
            if filters_equivalent(
                z, PrincipalFilter(z.carrier, base_z), point_filter(z, zp)
            )
        ]
        if len(candidates) != 1:
            raise FilterError(
                f"filter at point {yp} matches {len(candidates)} points; "
                "target is not complete"
            )
        out.append(candidates[0])
    return tuple(out)


def dense_lift_transport(
    f: Sequence[int],
    x: FiniteCoverSpace,
    y: FiniteCoverSpace,
    g: Sequence[int],
    z: FiniteCoverSpace,
) -> tuple[int, ...]:
    """Second route: the extension's neighborhood filter at a point is the
    rather-below enlargement of the transported filter; match it against
    the point filters of z directly."""
    _check_lift_preconditions(f, x, y, g, z)
    out = []
    for yp in y.carrier.elements():
        base_z = _pushed_base(f, x, g, z, y, yp)
        z_subsets = all_subsets(z.carrier)
        enlarged = [
            u
            for u in z_subsets
            if any(
                base_z.issubset(v) and coverspace.rather_below(z, v, u)
                for v in z_subsets
            )
        ]
        nbhd_mask = z.carrier.full_mask
        for u in enlarged:
            nbhd_mask &= u.mask
        matches = [
            zp
            for zp in z.carrier.elements()
            if coverspace.neighborhood_base(z, zp).mask == nbhd_mask
        ]
        if len(matches) != 1:
            raise FilterError(
                f"transported filter at point {yp} matches {len(matches)} points"
            )
        out.append(matches[0])
    return tuple(out)


def _pushed_base(f, x, g, z, y, yp) -> Subset:
    ny = coverspace.neighborhood_base(y, yp)
    pulled = [i for i in x.carrier.elements() if ny.contains(f[i])]
    return Subset.of(z.carrier, {g[i] for i in pulled})


def _check_lift_preconditions(f, x, y, g, z) -> None:
    failures = []
    # the transport below reads neighborhood filters off smallest
    # neighborhoods, which describes them only under the regularity axiom
    if not coverspace.satisfies_cr(x):
        failures.append("x does not satisfy the regularity axiom")
    if not coverspace.satisfies_cr(y):
        failures.append("y does not satisfy the regularity axiom")
    if not coverspace.is_embedding(f, x, y):
        failures.append("f is not an embedding")
    if not coverspace.point_images_dense(f, x, y):
        failures.append("f is not dense")
    if not coverspace.is_cover_map(g, x, z):
        failures.append("g is not a cover map")
    if not is_complete(z):
        failures.append("z is not complete")
    if failures:
        raise PreconditionError(failures)


def subspace(
    s: FiniteCoverSpace, u: Subset
) -> tuple[FiniteCoverSpace, tuple[int, ...]]:
    """The transferred structure on an inhabited subset, with the inclusion
    table back into s."""
    if not u.inhabited:
        raise ValueError("subspace carrier must be inhabited")
    inclusion = u.members()
    from .finkernel import transfer

    return transfer(inclusion, s), inclusion


def spaces_isomorphic(a: FiniteCoverSpace, b: FiniteCoverSpace) -> bool:
    """Whether some bijection of carriers matches the canonical generators."""
    if a.size != b.size:
        return False
    sizes_a = sorted(bin(m.mask).count("1") for m in a.generator.members)
    sizes_b = sorted(bin(m.mask).count("1") for m in b.generator.members)
    if sizes_a != sizes_b:
        return False
    b_masks = {m.mask for m in b.generator.members}
    for perm in permutations(range(a.size)):
        mapped = set()
        for m in a.generator.members:
            mask = 0
            for i in m.members():
                mask |= 1 << perm[i]
            mapped.add(mask)
        if mapped == b_masks:
            return True
    return False
