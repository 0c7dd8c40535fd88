"""Finite posets over index sets 0..n-1, encoded as bitmask matrices.

Subsets of a poset's carrier are plain ints ("masks"): bit i is set iff
element i belongs to the subset.  The order is stored as full rows
``up[i] = {j : i <= j}``; cover relations are derived on demand.
Everything here is immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Sequence

from . import kernels
from .caps import GENERATION_CAP


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


class PosetError(ValueError):
    pass


class NotReflexive(PosetError):
    def __init__(self, i: int):
        self.index = i
        super().__init__(f"relation is not reflexive at element {i}")


class NotAntisymmetric(PosetError):
    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(f"relation is not antisymmetric: {i} <= {j} and {j} <= {i}")


class NotTransitive(PosetError):
    def __init__(self, i: int, j: int, k: int):
        self.triple = (i, j, k)
        super().__init__(
            f"relation is not transitive: {i} <= {j} and {j} <= {k} but not {i} <= {k}"
        )


class NotALattice(PosetError):
    def __init__(self, pair: tuple[int, int], which: str):
        self.pair = pair
        self.which = which
        super().__init__(f"no {which} for elements {pair[0]} and {pair[1]}")


class NotMonotone(PosetError):
    def __init__(self, x: int, y: int):
        self.pair = (x, y)
        super().__init__(f"map is not monotone: {x} <= {y} in the source, images are not")


class CapExceeded(PosetError):
    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(
            f"labelled-poset generation for n={n} exceeds the cap {cap}; "
            "pass allow_large=True to accept the exponential cost"
        )


@dataclass(frozen=True)
class Poset:
    """A finite poset: ``up[i]`` is the mask of elements above (and equal to) i."""

    n: int
    up: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    @cached_property
    def down(self) -> tuple[int, ...]:
        return tuple(kernels.transpose_rows(self.up))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def down_closure(self, mask: int) -> int:
        """Smallest down-set containing the subset."""
        out = 0
        for j in bits(mask):
            out |= self.down[j]
        return out

    def up_closure(self, mask: int) -> int:
        """Smallest up-set containing the subset."""
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def is_down_set(self, mask: int) -> bool:
        return self.down_closure(mask) == mask

    def is_up_set(self, mask: int) -> bool:
        return self.up_closure(mask) == mask

    def bottom(self) -> Optional[int]:
        for i in range(self.n):
            if self.up[i] == self.full_mask:
                return i
        return None

    def top(self) -> Optional[int]:
        for i in range(self.n):
            if self.down[i] == self.full_mask:
                return i
        return None

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (i, j) with j covering i: i < j with nothing in between."""
        out = []
        for i in range(self.n):
            strict_up = self.up[i] & ~(1 << i)
            for j in bits(strict_up):
                between = strict_up & self.down[j] & ~(1 << j)
                if between == 0:
                    out.append((i, j))
        return out

    def linear_extension(self) -> list[int]:
        return sorted(range(self.n), key=lambda i: (popcount(self.down[i]), i))

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def comparability_profile(self) -> list[tuple[int, int]]:
        return sorted((popcount(self.down[i]), popcount(self.up[i])) for i in range(self.n))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Poset(n={self.n}, covers={self.covers()})"


def poset_from_up_rows(rows: Sequence[int], labels=None) -> Poset:
    return Poset(len(rows), tuple(rows), tuple(labels) if labels else None)


def validate_poset(relation: Sequence[Sequence[object]], labels=None) -> Poset:
    """Check the three order axioms and package the relation as a Poset.

    ``relation`` is a square truth matrix; entry [i][j] means i <= j.
    Raises NotReflexive / NotAntisymmetric / NotTransitive with the
    witnessing indices.
    """
    n = len(relation)
    rows = []
    for i, row in enumerate(relation):
        if len(row) != n:
            raise PosetError(f"relation matrix is not square: row {i} has length {len(row)}")
        rows.append(mask_of(j for j in range(n) if row[j]))
    return validate_up_rows(rows, labels)


def validate_up_rows(rows: Sequence[int], labels=None) -> Poset:
    n = len(rows)
    for i in range(n):
        if not rows[i] >> i & 1:
            raise NotReflexive(i)
    for i in range(n):
        for j in bits(rows[i] & ~(1 << i)):
            if rows[j] >> i & 1:
                raise NotAntisymmetric(*sorted((i, j)))
    for i in range(n):
        for j in bits(rows[i]):
            extra = rows[j] & ~rows[i]
            if extra:
                k = next(bits(extra))
                raise NotTransitive(i, j, k)
    return poset_from_up_rows(rows, labels)


@dataclass(frozen=True)
class MonotoneMap:
    """An order-preserving map between posets, tabulated on indices."""

    source: Poset
    target: Poset
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.source.n:
            raise PosetError("image table length differs from source size")
        for x in range(self.source.n):
            fx = self.image[x]
            if not 0 <= fx < self.target.n:
                raise PosetError(f"image of {x} out of range: {fx}")
            for y in bits(self.source.up[x]):
                if not self.target.leq(fx, self.image[y]):
                    raise NotMonotone(x, y)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def image_mask(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= 1 << self.image[i]
        return out

    def then(self, other: "MonotoneMap") -> "MonotoneMap":
        """Composition running self first: x goes to other(self(x))."""
        if self.target != other.source:
            raise PosetError("composition mismatch: target of first is not source of second")
        return MonotoneMap.unchecked(
            self.source, other.target, tuple(other.image[i] for i in self.image)
        )

    def is_order_embedding(self) -> bool:
        for x in range(self.source.n):
            for y in range(self.source.n):
                if self.target.leq(self.image[x], self.image[y]) != self.source.leq(x, y):
                    return False
        return True

    def is_monotone(self) -> bool:
        """Re-run the constructor's validation; used on unchecked maps."""
        for x in range(self.source.n):
            fx = self.image[x]
            for y in bits(self.source.up[x]):
                if not self.target.leq(fx, self.image[y]):
                    return False
        return True

    @staticmethod
    def unchecked(source: Poset, target: Poset, image) -> "MonotoneMap":
        """Skip validation: for maps monotone by construction.

        Composites of monotone maps and functor images built by this
        package are monotone for structural reasons; validating them
        again is quadratic in carriers that reach tens of thousands of
        points.  Tests re-validate every builder on small carriers.
        """
        obj = object.__new__(MonotoneMap)
        object.__setattr__(obj, "source", source)
        object.__setattr__(obj, "target", target)
        object.__setattr__(obj, "image", tuple(image))
        return obj

    @staticmethod
    def identity(p: Poset) -> "MonotoneMap":
        return MonotoneMap.unchecked(p, p, tuple(range(p.n)))


def binary_meet(p: Poset, i: int, j: int) -> Optional[int]:
    lb = p.down[i] & p.down[j]
    for m in bits(lb):
        if lb & ~p.down[m] == 0:
            return m
    return None


def binary_join(p: Poset, i: int, j: int) -> Optional[int]:
    ub = p.up[i] & p.up[j]
    for m in bits(ub):
        if ub & ~p.up[m] == 0:
            return m
    return None


@dataclass(frozen=True)
class MeetJoinTables:
    """Binary meet/join tables; entries are None where no bound exists."""

    meet: tuple[tuple[Optional[int], ...], ...]
    join: tuple[tuple[Optional[int], ...], ...]
    meet_failure: Optional[tuple[int, int]]
    join_failure: Optional[tuple[int, int]]

    @property
    def meet_total(self) -> bool:
        return self.meet_failure is None

    @property
    def join_total(self) -> bool:
        return self.join_failure is None

    @property
    def is_lattice(self) -> bool:
        return self.meet_total and self.join_total


def meets_joins(p: Poset) -> MeetJoinTables:
    """Both binary tables; the first failing pair is identified per table."""
    meet_rows, join_rows = [], []
    meet_fail = join_fail = None
    for i in range(p.n):
        mrow, jrow = [], []
        for j in range(p.n):
            m = binary_meet(p, i, j)
            jn = binary_join(p, i, j)
            if m is None and meet_fail is None:
                meet_fail = (i, j)
            if jn is None and join_fail is None:
                join_fail = (i, j)
            mrow.append(m)
            jrow.append(jn)
        meet_rows.append(tuple(mrow))
        join_rows.append(tuple(jrow))
    return MeetJoinTables(tuple(meet_rows), tuple(join_rows), meet_fail, join_fail)


def is_lattice(p: Poset) -> bool:
    if p.n == 0:
        return False
    return all(
        binary_meet(p, i, j) is not None and binary_join(p, i, j) is not None
        for i in range(p.n)
        for j in range(i, p.n)
    )


def is_complete_lattice(p: Poset) -> bool:
    """Every subset has a supremum.

    A finite poset is a complete lattice iff it is a lattice with a top
    and a bottom (sup of the empty set); tests cross-check this against
    an exhaustive all-subsets oracle.
    """
    if p.n == 0:
        return False
    return p.bottom() is not None and p.top() is not None and is_lattice(p)


def is_distributive_lattice(p: Poset) -> bool:
    """Does meet distribute over join on all triples?  Requires a lattice."""
    tables = meets_joins(p)
    if not tables.is_lattice:
        which = "meet" if not tables.meet_total else "join"
        pair = tables.meet_failure or tables.join_failure
        raise NotALattice(pair, which)
    meet, join = tables.meet, tables.join
    for x in range(p.n):
        for y in range(p.n):
            for z in range(p.n):
                if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
                    return False
    return True


def is_frame(p: Poset) -> bool:
    """Finite frames are exactly the distributive complete lattices."""
    return is_complete_lattice(p) and is_distributive_lattice(p)


def poset_isomorphism(p: Poset, r: Poset) -> Optional[tuple[int, ...]]:
    """An order-isomorphism p -> r as an index table, if one exists.

    Fast reject on the comparability profile (multiset of down/up degree
    pairs), then backtracking search.
    """
    if p.n != r.n:
        return None
    pprof = [(popcount(p.down[i]), popcount(p.up[i])) for i in range(p.n)]
    rprof = [(popcount(r.down[i]), popcount(r.up[i])) for i in range(r.n)]
    if sorted(pprof) != sorted(rprof):
        return None
    n = p.n
    assign = [-1] * n

    def extend(x: int, used: int) -> bool:
        if x == n:
            return True
        for y in range(n):
            if used >> y & 1 or rprof[y] != pprof[x]:
                continue
            ok = True
            for x2 in range(x):
                y2 = assign[x2]
                if p.leq(x, x2) != r.leq(y, y2) or p.leq(x2, x) != r.leq(y2, y):
                    ok = False
                    break
            if ok:
                assign[x] = y
                if extend(x + 1, used | 1 << y):
                    return True
                assign[x] = -1
        return False

    if extend(0, 0):
        return tuple(assign)
    return None


def enumerate_labeled_posets(n: int, allow_large: bool = False) -> Iterator[Poset]:
    """Every labelled poset on 0..n-1 exactly once, in a fixed order.

    All 2^(n(n-1)) candidate strict relations are filtered by the order
    axioms.  n > GENERATION_CAP needs allow_large=True.
    """
    if n > GENERATION_CAP and not allow_large:
        raise CapExceeded(n, GENERATION_CAP)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    refl = [1 << i for i in range(n)]
    for code in range(1 << len(pairs)):
        rows = list(refl)
        ok = True
        for b, (i, j) in enumerate(pairs):
            if code >> b & 1:
                if rows[j] >> i & 1:
                    ok = False  # antisymmetry
                    break
                rows[i] |= 1 << j
        if not ok:
            continue
        for i in range(n):
            row = rows[i]
            probe = row
            while probe:
                low = probe & -probe
                j = low.bit_length() - 1
                probe ^= low
                if rows[j] & ~row:
                    ok = False  # transitivity
                    break
            if not ok:
                break
        if ok:
            yield poset_from_up_rows(rows)


def generate_monotone_maps(src: Poset, dst: Poset, limit: Optional[int] = None) -> list[MonotoneMap]:
    """All monotone maps src -> dst in a fixed order (optionally truncated)."""
    order = src.linear_extension()
    out: list[MonotoneMap] = []
    image = [0] * src.n

    def extend(t: int) -> bool:
        if t == len(order):
            out.append(MonotoneMap(src, dst, tuple(image)))
            return limit is not None and len(out) >= limit
        x = order[t]
        below = src.down[x] & ~(1 << x)
        for v in range(dst.n):
            ok = all(dst.leq(image[b], v) for b in bits(below))
            if ok:
                image[x] = v
                if extend(t + 1):
                    return True
        return False

    extend(0)
    return out
