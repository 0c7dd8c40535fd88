"""The two power constructions on a finite poset, as posets of masks.

For a finite poset every down-set is closed in the Scott topology and
every nonempty up-set is compact saturated, so:

* the Hoare construction is the poset of all down-sets under inclusion
  (a complete lattice: sups are unions), and
* the Smyth construction is the poset of all nonempty up-sets under
  reverse inclusion (binary infs are unions, directed sups are
  intersections).

Both collapses are asserted against the topological code paths in the
test suite rather than assumed silently.  This module also carries the
monad structure on both constructions (units, multiplications, law
verification) and the sup-extension universal property of the Hoare
side.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Optional, Sequence

from . import kernels
from .caps import CARRIER_CAP, SWEEP_CAP, SizeCapExceeded
from .poset import (
    MonotoneMap,
    Poset,
    PosetError,
    bits,
    binary_join,
    is_complete_lattice,
    popcount,
    poset_from_up_rows,
)
from .report import EXHAUSTIVE, FAIL, PASS, SAMPLE, VerificationReport, masks_to_lists

INCLUSION = "inclusion"
REVERSE_INCLUSION = "reverse_inclusion"


class TargetNotCompleteLattice(PosetError):
    pass


@dataclass(frozen=True)
class HyperPoset:
    """A poset of subset masks over a base poset.

    ``elements`` is canonically sorted by mask value, so two builds over
    equal bases are identical and indices can be compared across
    independently constructed towers.
    """

    base: Poset
    kind: str
    elements: tuple[int, ...]
    as_poset: Poset = field(compare=False)

    @cached_property
    def _index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.elements)}

    def index_of(self, mask: int) -> int:
        return self._index[mask]

    def __len__(self) -> int:
        return len(self.elements)

    def union_of(self, family_mask: int) -> int:
        """Union of the member masks of a family given over element indices."""
        out = 0
        for i in bits(family_mask):
            out |= self.elements[i]
        return out


def _antichain_width_bound(p: Poset) -> int:
    """A cheap antichain lower bound: elements with equally sized up-sets
    are pairwise incomparable (strict order shrinks up-sets strictly)."""
    if p.n == 0:
        return 0
    sizes: dict[int, int] = {}
    for row in p.up:
        k = popcount(row)
        sizes[k] = sizes.get(k, 0) + 1
    return max(sizes.values())


def _guard_cap(p: Poset, cap: int, stage: str) -> None:
    # 2^width is a lower bound on the family count; fail before enumerating
    if (1 << _antichain_width_bound(p)) > cap:
        raise SizeCapExceeded(stage, cap)


@lru_cache(maxsize=None)
def _hoare(p: Poset, cap: int) -> HyperPoset:
    _guard_cap(p, cap, "Hoare carrier")
    masks = kernels.downset_masks(p.down, cap)
    if masks is None:
        raise SizeCapExceeded("Hoare carrier", cap)
    elements = tuple(masks)
    rows = kernels.containment_rows(elements)
    return HyperPoset(p, INCLUSION, elements, poset_from_up_rows(rows))


@lru_cache(maxsize=None)
def _smyth(p: Poset, cap: int) -> HyperPoset:
    _guard_cap(p, cap, "Smyth carrier")
    masks = kernels.upset_masks(p.down, cap)
    if masks is None:
        raise SizeCapExceeded("Smyth carrier", cap)
    elements = tuple(m for m in masks if m)
    # reverse inclusion: e_i <= e_j iff e_i contains e_j, i.e. the
    # complements are inclusion-ordered
    comp = tuple(p.full_mask ^ m for m in elements)
    rows = kernels.containment_rows(comp)
    return HyperPoset(p, REVERSE_INCLUSION, elements, poset_from_up_rows(rows))


def hoare(p: Poset, cap: Optional[int] = None) -> HyperPoset:
    """All down-sets of p (the empty one included) ordered by inclusion."""
    return _hoare(p, CARRIER_CAP if cap is None else cap)


def smyth(p: Poset, cap: Optional[int] = None) -> HyperPoset:
    """All nonempty up-sets of p ordered by reverse inclusion."""
    return _smyth(p, CARRIER_CAP if cap is None else cap)


def hoare_map(f: MonotoneMap, cap: Optional[int] = None) -> MonotoneMap:
    """Down-closure of the image, as a map between Hoare carriers."""
    src = hoare(f.source, cap)
    dst = hoare(f.target, cap)
    image = tuple(
        dst.index_of(f.target.down_closure(f.image_mask(m))) for m in src.elements
    )
    return MonotoneMap.unchecked(src.as_poset, dst.as_poset, image)


def smyth_map(f: MonotoneMap, cap: Optional[int] = None) -> MonotoneMap:
    """Up-closure of the image, as a map between Smyth carriers."""
    src = smyth(f.source, cap)
    dst = smyth(f.target, cap)
    image = tuple(
        dst.index_of(f.target.up_closure(f.image_mask(m))) for m in src.elements
    )
    return MonotoneMap.unchecked(src.as_poset, dst.as_poset, image)


def eta(p: Poset, cap: Optional[int] = None) -> MonotoneMap:
    """Unit of the Hoare monad: x goes to its principal down-set."""
    hp = hoare(p, cap)
    return MonotoneMap.unchecked(
        p, hp.as_poset, tuple(hp.index_of(p.down[x]) for x in range(p.n))
    )


def mu(p: Poset, cap: Optional[int] = None) -> MonotoneMap:
    """Multiplication of the Hoare monad: a family collapses to its union."""
    hp = hoare(p, cap)
    hhp = hoare(hp.as_poset, cap)
    image = tuple(hp.index_of(hp.union_of(fam)) for fam in hhp.elements)
    return MonotoneMap.unchecked(hhp.as_poset, hp.as_poset, image)


def theta(p: Poset, cap: Optional[int] = None) -> MonotoneMap:
    """Unit of the Smyth monad: x goes to its principal up-set."""
    qp = smyth(p, cap)
    return MonotoneMap.unchecked(
        p, qp.as_poset, tuple(qp.index_of(p.up[x]) for x in range(p.n))
    )


def iota(p: Poset, cap: Optional[int] = None) -> MonotoneMap:
    """Multiplication of the Smyth monad: a family collapses to its union."""
    qp = smyth(p, cap)
    qqp = smyth(qp.as_poset, cap)
    image = tuple(qp.index_of(qp.union_of(fam)) for fam in qqp.elements)
    return MonotoneMap.unchecked(qqp.as_poset, qp.as_poset, image)


@dataclass(frozen=True)
class MonadData:
    """A monad packaged as its builders, enough to run the law checks."""

    tag: str
    carrier: Callable[[Poset], HyperPoset]
    map: Callable[[MonotoneMap], MonotoneMap]
    unit: Callable[[Poset], MonotoneMap]
    mult: Callable[[Poset], MonotoneMap]


HOARE_MONAD = MonadData("H", hoare, hoare_map, eta, mu)
SMYTH_MONAD = MonadData("Q", smyth, smyth_map, theta, iota)

LAW_MONAD = (
    "mult(unit_T(t)) = t; mult(T(unit)(t)) = t; "
    "mult(T(mult)(z)) = mult(mult_T(z)); T(id) = id; T(g.f) = T(g).T(f)"
)


def random_family_mask(rng: random.Random, m: int) -> int:
    return rng.getrandbits(m) if m else 0


def verify_monad_laws(
    tag: str,
    p: Poset,
    mode: str = EXHAUSTIVE,
    sample_count: int = 10_000,
    seed: Optional[int] = None,
    map_pairs: Sequence[tuple[MonotoneMap, MonotoneMap]] = (),
    cap: Optional[int] = None,
    sweep_cap: int = SWEEP_CAP,
) -> VerificationReport:
    """Unit triangles, associativity, and functoriality for one construction.

    Unit triangles are always swept over the whole first-level carrier.
    Associativity runs over every third-level family in exhaustive mode
    and over seeded random families in sample mode (the seed is
    recorded in the report).  ``map_pairs`` adds functoriality probes
    T(g.f) = T(g).T(f) for composable pairs (f, g).
    """
    if tag not in ("H", "Q"):
        raise ValueError(f"unknown construction tag: {tag!r}")
    if mode == SAMPLE and seed is None:
        raise ValueError("sample mode requires an explicit seed")
    monad = HOARE_MONAD if tag == "H" else SMYTH_MONAD
    check = f"monad-laws-{tag}"
    down_kind = tag == "H"

    t1 = monad.carrier(p, cap)
    t2 = monad.carrier(t1.as_poset, cap)
    t1po, t2po = t1.as_poset, t2.as_poset
    points = 0

    def fail(point_kind: str, **kw) -> VerificationReport:
        witness = {"law": point_kind, **kw}
        return VerificationReport(
            check, LAW_MONAD, FAIL, mode, points, seed=seed, witness=witness
        )

    # mult applied to a second-level family given as an index mask
    def mult_mask(fam: int) -> int:
        return t1.index_of(t1.union_of(fam))

    # first unit triangle: the principal family at t collapses back to t
    for t in range(t1po.n):
        principal = t1po.down[t] if down_kind else t1po.up[t]
        points += 1
        if mult_mask(principal) != t:
            return fail("mult(unit_T(t)) = t", t=t)

    # second unit triangle, through the functor action on the unit
    unit_p = monad.unit(p, cap)
    for t in range(t1po.n):
        img = 0
        for x in bits(t1.elements[t]):
            img |= 1 << unit_p.image[x]
        fam = t1po.down_closure(img) if down_kind else t1po.up_closure(img)
        points += 1
        if mult_mask(fam) != t:
            return fail("mult(T(unit)(t)) = t", t=t)

    # associativity on third-level families, mask-level (no third carrier
    # is materialized): both paths land in the first-level carrier
    mult_of = [mult_mask(fam) for fam in t2.elements]

    def assoc_holds(z: int) -> bool:
        img = 0
        for j in bits(z):
            img |= 1 << mult_of[j]
        w1 = t1po.down_closure(img) if down_kind else t1po.up_closure(img)
        u1 = t1.union_of(w1)
        w2 = 0
        for j in bits(z):
            w2 |= t2.elements[j]
        u2 = t1.union_of(w2)
        return u1 == u2

    if mode == EXHAUSTIVE:
        zs = kernels.downset_masks(t2po.down, sweep_cap)
        if zs is None:
            raise SizeCapExceeded(
                "monad-law associativity sweep (sample mode fits)", sweep_cap
            )
        if not down_kind:
            full = (1 << t2po.n) - 1
            zs = sorted(full ^ z for z in zs)
            zs = [z for z in zs if z]
    else:
        rng = random.Random(seed)
        zs = []
        for _ in range(sample_count):
            raw = random_family_mask(rng, t2po.n)
            z = t2po.down_closure(raw) if down_kind else t2po.up_closure(raw)
            if not down_kind and z == 0:
                z = t2po.up_closure(1) if t2po.n else 0
            zs.append(z)
    for z in zs:
        points += 1
        if not assoc_holds(z):
            return fail(
                "mult(T(mult)(z)) = mult(mult_T(z))", family=masks_to_lists(z)
            )

    # functoriality: identities and composites
    ident = monad.map(MonotoneMap.identity(p), cap)
    points += 1
    if ident != MonotoneMap.identity(t1po):
        return fail("T(id) = id")
    for f, g in map_pairs:
        points += 1
        if monad.map(f.then(g), cap) != monad.map(f, cap).then(monad.map(g, cap)):
            return fail("T(g.f) = T(g).T(f)")

    return VerificationReport(check, LAW_MONAD, PASS, mode, points, seed=seed)


LAW_UNIVERSAL = (
    "ext(A) = sup f(A); ext preserves arbitrary sups; ext(principal(x)) = f(x); "
    "ext is the unique such map"
)


def check_universal_property(
    p: Poset,
    m: Poset,
    f: MonotoneMap,
    cap: Optional[int] = None,
    subset_cap: int = 1 << 12,
    seed: int = 0,
) -> VerificationReport:
    """The Hoare carrier is the free sup-lattice: verify on one map.

    Builds the sup-extension of f over down-sets, then checks that it
    preserves arbitrary suprema, factors f through the unit, and is the
    only sup-preserving map doing so (sup of the empty set, the bottom,
    must be preserved too).
    """
    if f.source != p or f.target != m:
        raise PosetError("map must run from the given source into the target lattice")
    if not is_complete_lattice(m):
        raise TargetNotCompleteLattice("target of the extension must be a complete lattice")
    bot = m.bottom()
    hp = hoare(p, cap)
    hn = len(hp)

    def sup_in_m(mask: int) -> Optional[int]:
        ub = m.full_mask
        for i in bits(mask):
            ub &= m.up[i]
        for cand in bits(ub):
            if ub & ~m.up[cand] == 0:
                return cand
        return None

    ext = []
    for mask in hp.elements:
        val = sup_in_m(f.image_mask(mask)) if mask else bot
        ext.append(val)
    ext_map = MonotoneMap(hp.as_poset, m, tuple(ext))

    points = 0
    mode = EXHAUSTIVE

    def fail(kind: str, **kw):
        return VerificationReport(
            "universal-property", LAW_UNIVERSAL, FAIL, mode, points,
            seed=seed if mode == SAMPLE else None, witness={"law": kind, **kw},
        )

    # factorization through the unit
    unit = eta(p, cap)
    for x in range(p.n):
        points += 1
        if ext_map.image[unit.image[x]] != f.image[x]:
            return fail("ext(principal(x)) = f(x)", x=x)

    # sup preservation over subfamilies of the carrier
    if (1 << hn) <= subset_cap:
        subsets = range(1 << hn)
    else:
        mode = SAMPLE
        rng = random.Random(seed)
        subsets = [rng.getrandbits(hn) for _ in range(subset_cap)]
    for fam in subsets:
        union = hp.union_of(fam)
        lhs = ext_map.image[hp.index_of(union)]
        rhs = bot
        for i in bits(fam):
            rhs = binary_join(m, rhs, ext_map.image[i])
        points += 1
        if lhs != rhs:
            return fail("ext(sup S) = sup ext(S)", family=masks_to_lists(fam))

    # uniqueness: search sup-preserving maps that factor f; the values on
    # principal down-sets are pinned, sup-closure pins the rest
    forced: dict[int, int] = {hp.index_of(p.down[x]): f.image[x] for x in range(p.n)}
    forced[hp.index_of(0)] = bot
    solutions: list[tuple[int, ...]] = []
    order = hp.as_poset.linear_extension()
    values: dict[int, int] = {}

    def consistent(idx: int, val: int) -> bool:
        mask = hp.elements[idx]
        for j, w in values.items():
            other = hp.elements[j]
            if other & ~mask == 0 and not m.leq(w, val):
                return False
            if mask & ~other == 0 and not m.leq(val, w):
                return False
            u = mask | other
            k = hp.index_of(u)
            if k in values and values[k] != binary_join(m, val, w):
                return False
        # unions of two already-assigned elements may equal this one
        items = list(values.items())
        for a in range(len(items)):
            ja, wa = items[a]
            ea = hp.elements[ja]
            for b in range(a, len(items)):
                jb, wb = items[b]
                if ea | hp.elements[jb] == mask and binary_join(m, wa, wb) != val:
                    return False
        return True

    def search(t: int) -> None:
        if len(solutions) > 1:
            return
        if t == hn:
            solutions.append(tuple(values[i] for i in range(hn)))
            return
        idx = order[t]
        candidates = [forced[idx]] if idx in forced else range(m.n)
        for val in candidates:
            if consistent(idx, val):
                values[idx] = val
                search(t + 1)
                del values[idx]

    search(0)
    points += 1
    if len(solutions) != 1 or solutions[0] != ext_map.image:
        return fail("uniqueness", count=len(solutions))

    return VerificationReport(
        "universal-property", LAW_UNIVERSAL, PASS, mode, points,
        seed=seed if mode == SAMPLE else None,
        details={"carrier_size": hn, "extension": list(ext_map.image)},
    )
