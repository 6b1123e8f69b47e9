"""Decision procedures for cover-space axioms on finite carriers.

Distinguished-cover membership, the rather-below relations, regularity
checks, the regular reflection, properness, the induced topology, and
structure-preserving map checks.  All questions about a structure reduce
to refinement checks against its canonical generator; each such shortcut
is cross-checked against a definition-level enumeration in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .finkernel import (
    COVER_ENUM_LIMIT,
    Carrier,
    CarrierMismatchError,
    Cover,
    FiniteCoverSpace,
    Subset,
    all_canonical_covers,
    all_subsets,
    meet,
    refines,
    space_from_cover,
    _check_size,
)


class RegularityError(ValueError):
    """Raised when an operation requires the regularity axiom and it fails."""


@dataclass(frozen=True)
class SubbasePresentation:
    """An arbitrary finite list of covers presenting a precover structure."""

    carrier: Carrier
    covers: tuple[Cover, ...]

    def __post_init__(self) -> None:
        for c in self.covers:
            if c.carrier != self.carrier:
                raise CarrierMismatchError("subbase cover on a different carrier")


def close_subbase(b: SubbasePresentation) -> FiniteCoverSpace:
    """The precover structure generated by a subbase.

    The closure under the trivial-cover, refinement, and meet rules is
    principal: it is generated by the meet of all the subbase covers.  An
    empty subbase yields the indiscrete structure.  The result need not
    satisfy the regularity axiom.
    """
    acc = Cover.of_masks(b.carrier, {b.carrier.full_mask})
    for c in b.covers:
        acc = meet(acc, c)
    return space_from_cover(acc)


def is_cauchy(s: FiniteCoverSpace, d: Cover | Iterable[Subset]) -> bool:
    """Whether the family d belongs to the structure of s.

    Decided by refinement against the generator.  A family refined by the
    generator necessarily covers the carrier, so non-covering families are
    never accepted.
    """
    members = list(d.members if isinstance(d, Cover) else d)
    for m in members:
        if m.carrier != s.carrier:
            raise CarrierMismatchError("family on a different carrier")
    return refines(s.generator, members)


def rather_below(s: FiniteCoverSpace, v: Subset, u: Subset) -> bool:
    """V is rather below U: the family of subsets W with
    (W meets V implies W inside U) is distinguished.

    That family is downward closed, so refinement against the generator
    amounts to checking the implication on every generator member.
    """
    _check_subset(s, v)
    _check_subset(s, u)
    return all(
        (not w.intersects(v)) or w.issubset(u) for w in s.generator.members
    )


def strongly_rather_below(s: FiniteCoverSpace, v: Subset, u: Subset) -> bool:
    """V is strongly rather below U: {X \\ V, U} is distinguished."""
    _check_subset(s, v)
    _check_subset(s, u)
    return is_cauchy(s, [v.complement(), u])


def satisfies_cr(s: FiniteCoverSpace) -> bool:
    """The regularity axiom, evaluated on the generator.

    For each generator member W there must be a generator member U with
    W rather below U.  Monotonicity of rather-below under enlargement
    makes the generator check sufficient for every distinguished cover;
    the tests cross-check against the all-covers evaluation.
    """
    return all(
        any(rather_below(s, w, u) for u in s.generator.members)
        for w in s.generator.members
    )


def is_strongly_regular(s: FiniteCoverSpace) -> bool:
    """The strong regularity condition, evaluated on the generator."""
    return all(
        any(strongly_rather_below(s, w, u) for u in s.generator.members)
        for w in s.generator.members
    )


def cr_holds_for_cover(s: FiniteCoverSpace, c: Cover | Iterable[Subset]) -> bool:
    """Definition-level regularity instance: the rather-below expansion of
    c is distinguished.  Used by tests to validate the generator shortcut."""
    members = list(c.members if isinstance(c, Cover) else c)
    expansion = [
        w
        for w in all_subsets(s.carrier)
        if any(rather_below(s, w, u) for u in members)
    ]
    return is_cauchy(s, expansion)


def regular_reflection(
    s: FiniteCoverSpace, max_carrier: int | None = None
) -> FiniteCoverSpace:
    """The finest regular structure coarser than s.

    Enumerates every canonical cover E refined by the generator whose
    generated structure satisfies the regularity axiom, and returns the
    structure generated by the meet of all of them.  Kept deliberately
    brute-force; the size guard applies.
    """
    _check_size(s.size, max_carrier or COVER_ENUM_LIMIT, "cover")
    acc = Cover.of_masks(s.carrier, {s.carrier.full_mask})
    for e in all_canonical_covers(s.carrier, max_carrier=max_carrier):
        if refines(s.generator, e) and satisfies_cr(space_from_cover(e)):
            acc = meet(acc, e)
    return space_from_cover(acc)


def is_proper(s: FiniteCoverSpace) -> bool:
    """A family is distinguished whenever adjoining the empty set makes it so.

    On an inhabited carrier the canonical generator has no empty member,
    so the empty set never absorbs a generator member and the check is
    vacuously true.  Kept as an operation for interface fidelity; the
    tests exercise the definition over all families.
    """
    return all(m.inhabited for m in s.generator.members)


def is_neighborhood(s: FiniteCoverSpace, u: Subset, x: int) -> bool:
    """U is a neighborhood of x: {x} is rather below U."""
    return rather_below(s, Subset.of(s.carrier, [x]), u)


def neighborhood_base(s: FiniteCoverSpace, x: int) -> Subset:
    """The smallest neighborhood of x: the union of all generator members
    containing x.  Every neighborhood of x is exactly a superset of it."""
    mask = 0
    for w in s.generator.members:
        if w.contains(x):
            mask |= w.mask
    return Subset(s.carrier, mask)


def interior(s: FiniteCoverSpace, u: Subset) -> Subset:
    """Points whose singleton is rather below u."""
    _check_subset(s, u)
    return Subset.of(
        s.carrier, [x for x in u.members() if is_neighborhood(s, u, x)]
    )


def is_open(s: FiniteCoverSpace, u: Subset) -> bool:
    return interior(s, u).mask == u.mask


def is_limit_point(s: FiniteCoverSpace, u: Subset, x: int) -> bool:
    """Every neighborhood of x intersects u; equivalently the smallest one does."""
    return neighborhood_base(s, x).intersects(u)


def closure_of(s: FiniteCoverSpace, u: Subset) -> Subset:
    _check_subset(s, u)
    return Subset.of(
        s.carrier, [x for x in s.carrier.elements() if is_limit_point(s, u, x)]
    )


def is_closed(s: FiniteCoverSpace, u: Subset) -> bool:
    return closure_of(s, u).issubset(u)


def is_dense(s: FiniteCoverSpace, d: Subset) -> bool:
    return closure_of(s, d).mask == s.carrier.full_mask


@dataclass(frozen=True)
class FiniteTopology:
    """A finite topological space: a family of opens closed under finite
    intersection and arbitrary union, containing the empty set and the
    whole carrier."""

    carrier: Carrier
    opens: frozenset[Subset]

    def __post_init__(self) -> None:
        masks = {o.mask for o in self.opens}
        for o in self.opens:
            if o.carrier != self.carrier:
                raise CarrierMismatchError("open on a different carrier")
        if 0 not in masks or self.carrier.full_mask not in masks:
            raise ValueError("opens must contain the empty set and the carrier")
        for a in masks:
            for b in masks:
                if a & b not in masks or a | b not in masks:
                    raise ValueError("opens not closed under intersection/union")

    def is_open(self, u: Subset) -> bool:
        return u in self.opens

    def interior(self, u: Subset) -> Subset:
        mask = 0
        for o in self.opens:
            if o.issubset(u):
                mask |= o.mask
        return Subset(self.carrier, mask)

    def closure(self, u: Subset) -> Subset:
        return self.interior(u.complement()).complement()

    def minimal_neighborhood(self, x: int) -> Subset:
        mask = self.carrier.full_mask
        for o in self.opens:
            if o.contains(x):
                mask &= o.mask
        return Subset(self.carrier, mask)

    def rather_below(self, v: Subset, u: Subset) -> bool:
        # X must be covered by opens W with (W meets V implies W inside U);
        # minimal neighborhoods are the worst case.
        return all(
            (not self.minimal_neighborhood(x).intersects(v))
            or self.minimal_neighborhood(x).issubset(u)
            for x in self.carrier.elements()
        )

    def is_regular(self) -> bool:
        """Every open is covered by opens rather below it."""
        return all(
            all(self.rather_below(self.minimal_neighborhood(x), o)
                for x in o.members())
            for o in self.opens
        )


def to_topology(s: FiniteCoverSpace, max_carrier: int | None = None) -> FiniteTopology:
    """The topology of open subsets induced by the structure of s."""
    opens = frozenset(
        u for u in all_subsets(s.carrier, max_carrier=max_carrier) if is_open(s, u)
    )
    return FiniteTopology(s.carrier, opens)


def from_topology(t: FiniteTopology) -> FiniteCoverSpace:
    """The cover space whose distinguished covers contain a neighborhood of
    every point: generated by the minimal open neighborhoods.

    The input topology must be regular, otherwise the result would violate
    the regularity axiom.
    """
    if not t.is_regular():
        raise RegularityError("input topology is not regular")
    members = {t.minimal_neighborhood(x) for x in t.carrier.elements()}
    return space_from_cover(Cover.of(t.carrier, members))


def is_cover_map(
    f: Sequence[int], x: FiniteCoverSpace, y: FiniteCoverSpace
) -> bool:
    """Preimages of distinguished covers are distinguished.

    Checking y's generator suffices: preimage families of coarser covers
    are coarser.  Cross-checked exhaustively in the tests.
    """
    _check_table(f, x, y)
    preimages = []
    for w in y.generator.members:
        mask = 0
        for i, v in enumerate(f):
            if w.contains(v):
                mask |= 1 << i
        preimages.append(Subset(x.carrier, mask))
    return is_cauchy(x, preimages)


def is_embedding(
    f: Sequence[int],
    x: FiniteCoverSpace,
    y: FiniteCoverSpace,
    max_carrier: int | None = None,
) -> bool:
    """f is a structure-preserving map and x carries the pulled-back
    structure: for the generator E of x, the family
    {V : exists U in E with f^{-1}(V) inside U} is distinguished in y.
    """
    if not is_cover_map(f, x, y):
        return False
    fibers = [0] * y.size
    for i, v in enumerate(f):
        fibers[v] |= 1 << i
    pushed = []
    for v in all_subsets(y.carrier, max_carrier=max_carrier):
        pre = 0
        for j in v.members():
            pre |= fibers[j]
        if any(pre & ~u.mask == 0 for u in x.generator.members):
            pushed.append(v)
    return is_cauchy(y, pushed)


def point_images_dense(
    f: Sequence[int], x: FiniteCoverSpace, y: FiniteCoverSpace
) -> bool:
    """The image of f is dense in y."""
    _check_table(f, x, y)
    image = Subset.of(y.carrier, set(f))
    return is_dense(y, image)


def _check_subset(s: FiniteCoverSpace, u: Subset) -> None:
    if u.carrier != s.carrier:
        raise CarrierMismatchError("subset on a different carrier")


def _check_table(f: Sequence[int], x: FiniteCoverSpace, y: FiniteCoverSpace) -> None:
    if len(f) != x.size:
        raise ValueError("function table has wrong length")
    for v in f:
        if not 0 <= v < y.size:
            raise ValueError(f"table value {v} outside target carrier")
