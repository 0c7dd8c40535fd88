"""Finite T0 spaces as open-set families, and their hyperspace topologies.

A finite topology is closed under arbitrary intersections, so it is the
Alexandrov topology of its specialization order: the opens are exactly
the up-sets.  ``as_finite_space`` verifies this instead of assuming it.
The same collapse makes every subset compact and the saturated sets the
up-sets, which pins down the two Vietoris constructions:

* upper Vietoris on the nonempty-up-set hyperspace, base of box sets
  (compacts inside a fixed open);
* lower Vietoris on the closed-set hyperspace, subbase of diamond sets
  (closed sets meeting a fixed open).

The two hyperspace predicates at the end are the hypotheses of the
exchange-isomorphism check: the compact-shrinking property of open
covers of closed families, and consonance of the open-set lattice.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional

from . import kernels
from .caps import CARRIER_CAP, FAMILY_CAP, FILTER_BASIS_CAP, SizeCapExceeded
from .poset import Poset, bits, mask_of, poset_from_up_rows, validate_up_rows
from .report import EXHAUSTIVE, FAIL, PASS, SAMPLE, VerificationReport, masks_to_lists


class NotATopology(ValueError):
    def __init__(self, reason: str, witness):
        self.reason = reason
        self.witness = witness
        super().__init__(f"family is not a topology: {reason} (witness {witness})")


class NotT0(ValueError):
    def __init__(self, x: int, y: int):
        self.pair = (x, y)
        super().__init__(f"points {x} and {y} have the same open neighbourhoods")


class InternalInvariantBroken(RuntimeError):
    """A finite topology failed to be Alexandrov; impossible for valid input."""


@dataclass(frozen=True)
class SetFamily:
    """A duplicate-free family of subset masks, sorted by mask value."""

    universe_size: int
    members: tuple[int, ...]

    @staticmethod
    def from_masks(universe_size: int, masks) -> "SetFamily":
        return SetFamily(universe_size, tuple(sorted(set(masks))))

    @cached_property
    def _index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.members)}

    def __contains__(self, mask: int) -> bool:
        return mask in self._index

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def index_of(self, mask: int) -> int:
        return self._index[mask]

    @property
    def full_mask(self) -> int:
        return (1 << self.universe_size) - 1

    def complements(self) -> "SetFamily":
        full = self.full_mask
        return SetFamily.from_masks(self.universe_size, (full ^ m for m in self.members))

    def inclusion_order(self) -> Poset:
        """The family as a poset under set inclusion."""
        return poset_from_up_rows(kernels.containment_rows(self.members))


@dataclass(frozen=True)
class FiniteSpace:
    """A finite T0 space: a topology plus its specialization order."""

    opens: SetFamily
    order: Poset = field(compare=False)

    @property
    def points(self) -> int:
        return self.order.n

    @cached_property
    def closed_sets(self) -> SetFamily:
        return self.opens.complements()


def scott_opens(p: Poset, cap: int = CARRIER_CAP) -> SetFamily:
    """All up-sets of the poset; on finite carriers this is the Scott topology.

    Every up-set is inaccessible by directed suprema here because every
    directed set contains its supremum, so no open is lost by the
    collapse; tests exercise this against the axiom-level definition.
    """
    masks = kernels.upset_masks(p.down, cap)
    if masks is None:
        raise SizeCapExceeded("open-set family", cap)
    return SetFamily(p.n, tuple(masks))


def as_finite_space(opens: SetFamily) -> FiniteSpace:
    """Validate the axioms, derive the specialization order, package both.

    Raises NotATopology / NotT0 with witnesses.  Also recomputes the
    up-set family of the derived order and insists it equals the input;
    a mismatch would break the Alexandrov collapse every finite
    topology satisfies, hence InternalInvariantBroken.
    """
    n = opens.universe_size
    members = opens.members
    if 0 not in opens:
        raise NotATopology("empty set missing", 0)
    if opens.full_mask not in opens:
        raise NotATopology("whole carrier missing", opens.full_mask)
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            if u | v not in opens:
                raise NotATopology("union escapes the family", (u, v))
            if u & v not in opens:
                raise NotATopology("intersection escapes the family", (u, v))

    profile = [0] * n
    for idx, u in enumerate(members):
        for x in bits(u):
            profile[x] |= 1 << idx
    for x in range(n):
        for y in range(x + 1, n):
            if profile[x] == profile[y]:
                raise NotT0(x, y)

    # x <= y iff every open around x also holds y
    rows = [mask_of(y for y in range(n) if profile[x] & ~profile[y] == 0) for x in range(n)]
    order = validate_up_rows(rows)
    if scott_opens(order).members != members:
        raise InternalInvariantBroken(
            "finite topology is not the up-set family of its specialization order"
        )
    return FiniteSpace(opens, order)


def scott_space(p: Poset) -> FiniteSpace:
    """The poset with its Scott topology, validated on the way through."""
    return as_finite_space(scott_opens(p))


def compact_saturated(x: FiniteSpace) -> SetFamily:
    """All nonempty compact saturated subsets: the nonempty up-sets."""
    fam = scott_opens(x.order)
    return SetFamily(x.points, tuple(m for m in fam.members if m))


def upper_vietoris(x: FiniteSpace) -> SetFamily:
    """Topology on the compact-saturated hyperspace, from the box base.

    Members are masks over the index set of ``compact_saturated(x)``.
    The box sets form a base (pairwise intersections are boxes again;
    verified, not assumed), so closing under unions suffices.
    """
    q = compact_saturated(x)
    box: dict[int, int] = {}
    for u in x.opens:
        box[u] = mask_of(i for i, k in enumerate(q.members) if k & ~u == 0)
    for u in x.opens:
        for v in x.opens:
            if box[u] & box[v] != box[u & v]:
                raise InternalInvariantBroken("box sets do not form a base")
    return SetFamily.from_masks(len(q), _close_under_unions(box.values()))


def lower_vietoris(x: FiniteSpace) -> SetFamily:
    """Topology on the closed-set hyperspace, from the diamond subbase.

    Members are masks over the index set of the closed sets.  Finite
    intersections of diamonds (the empty intersection included) give a
    base, then unions close it.
    """
    gamma = x.closed_sets
    diamonds = [
        mask_of(i for i, a in enumerate(gamma.members) if a & u)
        for u in x.opens
    ]
    full = (1 << len(gamma)) - 1
    base = {full}
    frontier = {full}
    while frontier:
        nxt = set()
        for b in frontier:
            for d in diamonds:
                c = b & d
                if c not in base:
                    base.add(c)
                    nxt.add(c)
        frontier = nxt
    return SetFamily.from_masks(len(gamma), _close_under_unions(base))


def _close_under_unions(seeds) -> set[int]:
    out = {0}
    frontier = set(seeds) | {0}
    out |= frontier
    while frontier:
        nxt = set()
        for a in frontier:
            for b in out:
                c = a | b
                if c not in out:
                    nxt.add(c)
        out |= nxt
        frontier = nxt
    return out


LAW_KC = (
    "for every compact family of closed sets, every open meeting all members "
    "contains a compact saturated set meeting all members"
)


def check_KC(x: FiniteSpace) -> VerificationReport:
    """Sweep the compact-shrinking property of the closed-set hyperspace.

    The compact saturated subsets of the closed-set hyperspace under
    the lower Vietoris topology are its nonempty up-sets in the
    specialization order, which on a finite carrier is plain inclusion
    (the lower Vietoris and Scott readings of "compact family" agree
    here; on infinite carriers they may not, and this checker does not
    arbitrate that).  The witness search tries candidate compacts in
    canonical order.
    """
    gamma = x.closed_sets
    nu = lower_vietoris(x)
    nu_space = as_finite_space(nu)
    gamma_order = nu_space.order
    q = compact_saturated(x)

    # profile masks over the closed-set index space
    meets_open = {u: mask_of(i for i, a in enumerate(gamma.members) if a & u) for u in x.opens}
    meets_compact = [
        mask_of(i for i, a in enumerate(gamma.members) if a & k) for k in q.members
    ]

    families = kernels.upset_masks(gamma_order.down, CARRIER_CAP)
    if families is None:
        raise SizeCapExceeded("compact families of closed sets", CARRIER_CAP)
    points = 0
    for fam in families:
        if not fam:
            continue
        for u in x.opens:
            if fam & ~meets_open[u]:
                continue
            points += 1
            found = None
            for ki, k in enumerate(q.members):
                if k & ~u == 0 and fam & ~meets_compact[ki] == 0:
                    found = k
                    break
            if found is None:
                return VerificationReport(
                    "kc", LAW_KC, FAIL, EXHAUSTIVE, points,
                    witness={
                        "family": [masks_to_lists(gamma.members[i]) for i in bits(fam)],
                        "open": masks_to_lists(u),
                    },
                )
    return VerificationReport("kc", LAW_KC, PASS, EXHAUSTIVE, points)


LAW_CONSONANCE = (
    "every Scott-open family of opens is a union of compact-set filters: "
    "U in family gives compact K with U in filter(K) inside the family"
)


def check_consonance(
    x: FiniteSpace,
    family_cap: int = FAMILY_CAP,
    sample_count: int = 4096,
    seed: Optional[int] = None,
) -> VerificationReport:
    """Sweep consonance of the open-set lattice.

    The Scott-open families of the finite open-set lattice are its
    up-sets.  The compact witness may be empty (its filter is the whole
    lattice); without that allowance the principal family at the empty
    open would falsify every space.  Lattices larger than
    ``family_cap`` fall back to seeded sampling of families.
    """
    opens = x.opens
    lattice = opens.inclusion_order()
    q = compact_saturated(x)
    candidates = [0] + list(q.members)
    # filter(K) as a mask over the open-set indices
    filters = [
        mask_of(i for i, u in enumerate(opens.members) if k & ~u == 0)
        for k in candidates
    ]

    mode = EXHAUSTIVE
    if len(opens) <= family_cap:
        families = kernels.upset_masks(lattice.down, CARRIER_CAP)
        if families is None:
            raise SizeCapExceeded("Scott-open families of opens", CARRIER_CAP)
    else:
        if seed is None:
            raise SizeCapExceeded("Scott-open families of opens", family_cap)
        mode = SAMPLE
        rng = random.Random(seed)
        families = [
            lattice.up_closure(rng.getrandbits(lattice.n)) for _ in range(sample_count)
        ]

    points = 0
    for fam in families:
        for ui in bits(fam):
            points += 1
            ok = any(
                filt >> ui & 1 and filt & ~fam == 0 for filt in filters
            )
            if not ok:
                return VerificationReport(
                    "consonance", LAW_CONSONANCE, FAIL, mode, points, seed=seed,
                    witness={
                        "family": [masks_to_lists(opens.members[i]) for i in bits(fam)],
                        "open": masks_to_lists(opens.members[ui]),
                    },
                )
    return VerificationReport(
        "consonance", LAW_CONSONANCE, PASS, mode, points,
        seed=seed if mode == SAMPLE else None,
    )


LAW_WELL_FILTERED = (
    "for every filter basis of compact saturated sets, an open containing the "
    "intersection already contains a member"
)


def check_well_filtered(
    x: FiniteSpace,
    basis_cap: int = FILTER_BASIS_CAP,
    sample_count: int = 4096,
    seed: Optional[int] = None,
) -> VerificationReport:
    """Exhaustively test the well-filteredness implication.

    Every nonempty subfamily of compacts closed under shrinking to a
    common member is tried; past ``basis_cap`` compacts the subfamilies
    are sampled with the given seed.
    """
    q = list(compact_saturated(x).members)
    nq = len(q)

    def filtered(members: list[int]) -> bool:
        return all(
            any(k & ~(k1 & k2) == 0 for k in members)
            for i1, k1 in enumerate(members)
            for k2 in members[i1:]
        )

    mode = EXHAUSTIVE
    if nq <= basis_cap:
        family_masks = range(1, 1 << nq)
    else:
        if seed is None:
            raise SizeCapExceeded("filter bases of compacts", basis_cap)
        mode = SAMPLE
        rng = random.Random(seed)
        family_masks = [rng.getrandbits(nq) for _ in range(sample_count)]

    points = 0
    for fm in family_masks:
        if not fm:
            continue
        members = [q[i] for i in bits(fm)]
        if not filtered(members):
            continue
        inter = (1 << x.points) - 1
        for k in members:
            inter &= k
        for u in x.opens:
            if inter & ~u:
                continue
            points += 1
            if not any(k & ~u == 0 for k in members):
                return VerificationReport(
                    "well-filtered", LAW_WELL_FILTERED, FAIL, mode, points, seed=seed,
                    witness={"basis": [masks_to_lists(k) for k in members],
                             "open": masks_to_lists(u)},
                )
    return VerificationReport(
        "well-filtered", LAW_WELL_FILTERED, PASS, mode, points,
        seed=seed if mode == SAMPLE else None,
    )


LAW_COHERENT = "pairwise intersections of compact saturated sets are compact saturated"


def check_coherent(x: FiniteSpace) -> VerificationReport:
    """Pairwise-intersection closure of the compact saturated family.

    An empty intersection is recorded as outside the nonempty-compact
    family rather than as a failure; the family deliberately excludes
    the empty set.
    """
    q = list(compact_saturated(x).members)
    fam = set(q)
    points = 0
    empty = 0
    for i, k1 in enumerate(q):
        for k2 in q[i:]:
            points += 1
            inter = k1 & k2
            if inter == 0:
                empty += 1
                continue
            if inter not in fam:
                return VerificationReport(
                    "coherent", LAW_COHERENT, FAIL, EXHAUSTIVE, points,
                    witness={"pair": [masks_to_lists(k1), masks_to_lists(k2)]},
                )
    return VerificationReport(
        "coherent", LAW_COHERENT, PASS, EXHAUSTIVE, points,
        details={"empty_intersections": empty},
    )


LAW_SOBER = "every irreducible closed set is the closure of exactly one point"


def check_sober_trivialities(x: FiniteSpace) -> VerificationReport:
    """Sobriety by brute force.

    Irreducibility is tested against all pairs of closed sets (the
    definition), then matched against point closures.
    """
    gamma = list(x.closed_sets.members)
    points = 0
    closures = {x.order.down[p]: p for p in range(x.points)}
    for c in gamma:
        if c == 0:
            continue
        irreducible = True
        for a in gamma:
            for b in gamma:
                if c & ~(a | b) == 0 and c & ~a and c & ~b:
                    irreducible = False
                    break
            if not irreducible:
                break
        points += 1
        if irreducible:
            generic = [p for p in range(x.points) if x.order.down[p] == c]
            if len(generic) != 1:
                return VerificationReport(
                    "sober", LAW_SOBER, FAIL, EXHAUSTIVE, points,
                    witness={"closed": masks_to_lists(c), "generic_points": generic},
                )
        else:
            if c in closures:
                return VerificationReport(
                    "sober", LAW_SOBER, FAIL, EXHAUSTIVE, points,
                    witness={"closed": masks_to_lists(c), "note": "point closure reducible"},
                )
    return VerificationReport("sober", LAW_SOBER, PASS, EXHAUSTIVE, points)
