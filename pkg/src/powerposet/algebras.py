"""Eilenberg-Moore algebras of the power-construction monads.

A structure map for a construction T on a carrier P is a monotone map
T(P) -> P satisfying the unit law (it retracts the unit) and the
associativity law (collapsing a second-level family first by the
multiplication or first by the mapped structure map agrees).  The
enumerator searches all monotone maps, with the unit law pinning the
values on unit images, monotone interval propagation pruning the rest,
and associativity instances checked as soon as their inputs are
assigned; survivors are re-verified by an independent law checker.

Uniqueness of structure maps is predicted by the KZ inequalities (both
constructions are poset-functors whose units compare pointwise with
their functored images); the enumerator still searches exhaustively and
treats a second find as a bug, never as theory failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import kernels
from .caps import SWEEP_CAP, SizeCapExceeded
from .commutativity import QH_MONAD, phi_component
from .poset import (
    MonotoneMap,
    Poset,
    binary_meet,
    bits,
    is_complete_lattice,
    is_distributive_lattice,
    is_frame,
    is_lattice,
    mask_of,
    meets_joins,
)
from .powerdomains import (
    HOARE_MONAD,
    SMYTH_MONAD,
    MonadData,
    eta,
    hoare,
    hoare_map,
    iota,
    mu,
    smyth,
    smyth_map,
    theta,
)
from .report import EXHAUSTIVE, FAIL, PASS, VerificationReport, masks_to_lists


class InducedLawViolation(RuntimeError):
    """An induced algebra failed its laws; this is a library bug, not data."""


_MONADS: dict[str, MonadData] = {
    "H": HOARE_MONAD,
    "Q": SMYTH_MONAD,
    "QH": QH_MONAD,
}


def monad_for(tag: str) -> MonadData:
    try:
        return _MONADS[tag]
    except KeyError:
        raise ValueError(f"unknown monad tag: {tag!r}") from None


@dataclass(frozen=True)
class StructureMap:
    """A verified algebra structure map for one construction on one carrier."""

    monad_tag: str
    carrier: Poset
    alpha: MonotoneMap
    unit_verified: bool
    assoc_verified: bool


@dataclass(frozen=True)
class AlgebraReport:
    """Recomputed per-carrier facts; nothing here is cached across carriers."""

    monad_tag: str
    carrier_size: int
    structure_maps: tuple[StructureMap, ...]
    facts: dict


def verify_algebra_laws(
    tag: str, p: Poset, alpha: MonotoneMap, cap: Optional[int] = None
) -> tuple[bool, bool, Optional[dict]]:
    """Independent law checker: unit retraction and associativity.

    Associativity runs through the functor action on alpha, a separate
    code path from the enumerator's memberwise closures.
    """
    monad = monad_for(tag)
    unit = monad.unit(p, cap)
    unit_ok = all(alpha.image[unit.image[x]] == x for x in range(p.n))
    mult = monad.mult(p, cap)
    talpha = monad.map(alpha, cap)
    witness = None
    assoc_ok = True
    for z in range(mult.source.n):
        if alpha.image[mult.image[z]] != alpha.image[talpha.image[z]]:
            assoc_ok = False
            witness = {"law": "alpha(mult(z)) = alpha(T(alpha)(z))", "index": z}
            break
    if not unit_ok and witness is None:
        witness = {"law": "alpha(unit(x)) = x"}
    return unit_ok, assoc_ok, witness


def enumerate_structure_maps(
    tag: str,
    p: Poset,
    cap: Optional[int] = None,
    node_cap: int = SWEEP_CAP,
) -> list[StructureMap]:
    """All structure maps for the construction on this carrier, exhaustively.

    Deterministic: candidates come out of a fixed-order backtracking
    search.  Raises SizeCapExceeded only when candidates survive the
    monotone search but the second-level carrier needed to confirm
    associativity cannot be built under the cap.
    """
    monad = monad_for(tag)
    tp = monad.carrier(p, cap)
    tpo = tp.as_poset
    unit = monad.unit(p, cap)
    if p.n == 0:
        return []

    forced: dict[int, int] = {}
    for x in range(p.n):
        forced[unit.image[x]] = x

    allowed = [p.full_mask] * tpo.n
    for e, c in forced.items():
        allowed[e] = 1 << c
    for w in range(tpo.n):
        for e, c in forced.items():
            if e != w and tpo.leq(e, w):
                allowed[w] &= p.up[c]
            if e != w and tpo.leq(w, e):
                allowed[w] &= p.down[c]

    # associativity probes for the memberwise constructions
    early = None
    if tag in ("H", "Q"):
        try:
            t2 = monad.carrier(tpo, cap)
            mult = monad.mult(p, cap)
            close = p.down_closure if tag == "H" else p.up_closure
            instances = [
                (tuple(bits(t2.elements[z])), mult.image[z])
                for z in range(len(t2))
            ]

            def early(image: list[int]) -> bool:
                for members, m_target in instances:
                    if image[m_target] < 0:
                        continue
                    vals = 0
                    for j in members:
                        v = image[j]
                        if v < 0:
                            break
                        vals |= 1 << v
                    else:
                        t2_elem = tp.index_of(close(vals))
                        if image[t2_elem] >= 0 and image[t2_elem] != image[m_target]:
                            return False
                return True

        except SizeCapExceeded:
            early = None

    order = tpo.linear_extension()
    image = [-1] * tpo.n
    candidates: list[tuple[int, ...]] = []
    nodes = 0

    def extend(t: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise SizeCapExceeded("structure-map search", node_cap)
        if t == tpo.n:
            candidates.append(tuple(image))
            return
        e = order[t]
        opts = allowed[e]
        for b in bits(tpo.down[e] & ~(1 << e)):
            opts &= p.up[image[b]]
        for v in bits(opts):
            image[e] = v
            if early is None or early(image):
                extend(t + 1)
        image[e] = -1

    extend(0)
    out = []
    for img in candidates:
        alpha = MonotoneMap(tpo, p, img)
        unit_ok, assoc_ok, _ = verify_algebra_laws(tag, p, alpha, cap)
        if unit_ok and assoc_ok:
            out.append(StructureMap(tag, p, alpha, unit_ok, assoc_ok))
    return out


def algebra_report(tag: str, p: Poset, cap: Optional[int] = None) -> AlgebraReport:
    maps = enumerate_structure_maps(tag, p, cap)
    facts = {
        "admits": bool(maps),
        "count": len(maps),
        "is_lattice": is_lattice(p),
        "is_complete_lattice": is_complete_lattice(p),
    }
    if facts["is_lattice"]:
        facts["is_distributive"] = is_distributive_lattice(p)
        facts["is_frame"] = is_frame(p)
    for sm in maps:
        carrier = monad_for(tag).carrier(p, cap)
        values = sm.alpha.image
        if tag == "H":
            facts["alpha_is_sup"] = all(
                values[i] == _sup_of_mask(p, m) for i, m in enumerate(carrier.elements)
            )
        elif tag == "Q":
            facts["alpha_is_inf"] = all(
                values[i] == _inf_of_mask(p, m) for i, m in enumerate(carrier.elements)
            )
        else:
            # a composite family collapses to the inf of its members' sups
            hp = hoare(p, cap)
            agree = True
            for i, fam in enumerate(carrier.elements):
                sups = mask_of(_sup_of_mask(p, hp.elements[j]) for j in bits(fam))
                agree = agree and values[i] == _inf_of_mask(p, sups)
            facts["alpha_is_inf_of_sups"] = agree
    return AlgebraReport(tag, p.n, tuple(maps), facts)


def _sup_of_mask(p: Poset, mask: int) -> Optional[int]:
    ub = p.full_mask
    for i in bits(mask):
        ub &= p.up[i]
    for cand in bits(ub):
        if ub & ~p.up[cand] == 0:
            return cand
    return None


def _inf_of_mask(p: Poset, mask: int) -> Optional[int]:
    lb = p.full_mask
    for i in bits(mask):
        lb &= p.down[i]
    for cand in bits(lb):
        if lb & ~p.down[cand] == 0:
            return cand
    return None


LAW_H_ALGEBRA = (
    "a structure map for the down-set construction exists iff the carrier is a "
    "complete lattice, and then alpha(A) = sup A"
)


def check_H_algebra_characterization(p: Poset, cap: Optional[int] = None) -> VerificationReport:
    maps = enumerate_structure_maps("H", p, cap)
    complete = is_complete_lattice(p)
    points = 1
    if bool(maps) != complete:
        return VerificationReport(
            "algebras-H", LAW_H_ALGEBRA, FAIL, EXHAUSTIVE, points,
            witness={"admits": bool(maps), "complete_lattice": complete},
        )
    if maps:
        hp = hoare(p, cap)
        for sm in maps:
            for i, mask in enumerate(hp.elements):
                points += 1
                if sm.alpha.image[i] != _sup_of_mask(p, mask):
                    return VerificationReport(
                        "algebras-H", LAW_H_ALGEBRA, FAIL, EXHAUSTIVE, points,
                        witness={"element": masks_to_lists(mask)},
                    )
    return VerificationReport(
        "algebras-H", LAW_H_ALGEBRA, PASS, EXHAUSTIVE, points,
        details={"admits": bool(maps), "count": len(maps)},
    )


LAW_Q_ALGEBRA = (
    "a structure map for the up-set construction computes infima: alpha(K) = inf K, "
    "so all nonempty up-sets have infima and binary meets exist"
)


def check_Q_algebra_necessities(
    p: Poset, sm: StructureMap, cap: Optional[int] = None
) -> VerificationReport:
    if sm.monad_tag != "Q" or sm.carrier != p:
        raise ValueError("structure map does not belong to this carrier/construction")
    qp = smyth(p, cap)
    points = 0
    for i, mask in enumerate(qp.elements):
        points += 1
        inf = _inf_of_mask(p, mask)
        if inf is None or sm.alpha.image[i] != inf:
            return VerificationReport(
                "algebras-Q", LAW_Q_ALGEBRA, FAIL, EXHAUSTIVE, points,
                witness={"element": masks_to_lists(mask), "inf": inf},
            )
    for i in range(p.n):
        for j in range(i, p.n):
            points += 1
            if binary_meet(p, i, j) is None:
                return VerificationReport(
                    "algebras-Q", LAW_Q_ALGEBRA, FAIL, EXHAUSTIVE, points,
                    witness={"pair": [i, j], "note": "no binary meet"},
                )
    return VerificationReport("algebras-Q", LAW_Q_ALGEBRA, PASS, EXHAUSTIVE, points)


LAW_HOMOMORPHISM = (
    "h(alpha_A(t)) = alpha_B(T(h)(t)); for the up-set construction homomorphisms "
    "preserve binary infs, for the down-set construction arbitrary sups"
)


def check_algebra_homomorphism(
    tag: str,
    f: MonotoneMap,
    alpha_a: StructureMap,
    alpha_b: StructureMap,
    cap: Optional[int] = None,
    subset_cap: int = 1 << 12,
) -> VerificationReport:
    """Homomorphism square for f between two verified algebras.

    The square is swept pointwise on the first-level carrier of the
    source.  The verdict reflects whether f is a homomorphism; the
    structural consequences (inf/sup preservation) are recorded and
    must agree with the square.
    """
    monad = monad_for(tag)
    if alpha_a.carrier != f.source or alpha_b.carrier != f.target:
        raise ValueError("algebras do not match the map's endpoints")
    tf = monad.map(f, cap)
    lhs = alpha_a.alpha.then(f)
    rhs = tf.then(alpha_b.alpha)
    points = lhs.source.n
    square_ok = lhs.image == rhs.image
    square_witness = None
    if not square_ok:
        bad = next(i for i, (a, b) in enumerate(zip(lhs.image, rhs.image)) if a != b)
        square_witness = {"law": "square", "index": bad}

    preserves = True
    if tag == "Q":
        for i in range(f.source.n):
            for j in range(i, f.source.n):
                points += 1
                mi = binary_meet(f.source, i, j)
                mj = binary_meet(f.target, f.image[i], f.image[j])
                if mi is not None and (mj is None or f.image[mi] != mj):
                    preserves = False
    elif tag == "H":
        src = f.source
        n_subsets = 1 << src.n
        subsets = range(n_subsets) if n_subsets <= subset_cap else None
        if subsets is None:
            raise SizeCapExceeded("sup-preservation sweep", subset_cap)
        for mask in subsets:
            points += 1
            s1 = _sup_of_mask(src, mask)
            s2 = _sup_of_mask(f.target, f.image_mask(mask))
            if s1 is not None and (s2 is None or f.image[s1] != s2):
                preserves = False

    consistent = square_ok == preserves
    verdict = PASS if consistent else FAIL
    return VerificationReport(
        "algebra-homomorphism", LAW_HOMOMORPHISM, verdict, EXHAUSTIVE, points,
        witness=square_witness if not consistent else None,
        details={"square": square_ok, "preserves_structure": preserves},
    )


LAW_KZ = (
    "unit at the carrier of T compares pointwise with T of the unit "
    "(below for the up-set side, above for the down-set side); mult is adjoint "
    "to T(unit): mult.T(unit) = id and the other composite compares with id"
)


def check_KZ(
    p: Poset, cap: Optional[int] = None, sweep_cap: int = SWEEP_CAP
) -> VerificationReport:
    """Pointwise KZ inequalities for both constructions on one carrier."""
    points = 0
    strict = {"H": 0, "Q": 0}

    qp = smyth(p, cap)
    qpo = qp.as_poset
    th = theta(p, cap)
    for k in range(qpo.n):
        # unit at the Smyth carrier: the principal up-set of k
        lhs = qpo.up[k]
        rhs = qpo.up_closure(mask_of(th.image[x] for x in bits(qp.elements[k])))
        points += 1
        if rhs & ~lhs:
            return VerificationReport(
                "kz", LAW_KZ, FAIL, EXHAUSTIVE, points,
                witness={"side": "Q", "law": "unit_Q <= Q(unit)", "index": k},
            )
        if rhs != lhs:
            strict["Q"] += 1

    hp = hoare(p, cap)
    hpo = hp.as_poset
    et = eta(p, cap)
    for a in range(hpo.n):
        lhs = hpo.down[a]
        rhs = hpo.down_closure(mask_of(et.image[x] for x in bits(hp.elements[a])))
        points += 1
        if rhs & ~lhs:
            return VerificationReport(
                "kz", LAW_KZ, FAIL, EXHAUSTIVE, points,
                witness={"side": "H", "law": "unit_H >= H(unit)", "index": a},
            )
        if rhs != lhs:
            strict["H"] += 1

    # adjunction (KZ2): exact unit retraction plus the one-sided composite
    qtheta = smyth_map(th, cap)
    io = iota(p, cap)
    for k in range(qpo.n):
        points += 1
        if io.image[qtheta.image[k]] != k:
            return VerificationReport(
                "kz", LAW_KZ, FAIL, EXHAUSTIVE, points,
                witness={"side": "Q", "law": "mult(Q(unit)(k)) = k", "index": k},
            )
    q2 = kernels.upset_masks(qpo.down, sweep_cap)
    if q2 is None:
        raise SizeCapExceeded("Smyth second-level sweep", sweep_cap)
    for z in q2:
        if not z:
            continue
        points += 1
        union = qp.union_of(z)
        back = qpo.up_closure(mask_of(th.image[x] for x in bits(union)))
        # Q(unit)(mult(z)) >= z in reverse inclusion: index sets shrink
        if back & ~z:
            return VerificationReport(
                "kz", LAW_KZ, FAIL, EXHAUSTIVE, points,
                witness={"side": "Q", "law": "Q(unit)(mult(z)) >= z",
                         "family": masks_to_lists(z)},
            )

    heta = [et.image[x] for x in range(p.n)]
    m = mu(p, cap)
    hh = hoare(hpo, cap)
    for a in range(hpo.n):
        points += 1
        fam = hpo.down_closure(mask_of(heta[x] for x in bits(hp.elements[a])))
        if m.image[hh.index_of(fam)] != a:
            return VerificationReport(
                "kz", LAW_KZ, FAIL, EXHAUSTIVE, points,
                witness={"side": "H", "law": "mult(H(unit)(a)) = a", "index": a},
            )
    h2 = kernels.downset_masks(hpo.down, sweep_cap)
    if h2 is None:
        raise SizeCapExceeded("Hoare second-level sweep", sweep_cap)
    for z in h2:
        points += 1
        union = hp.union_of(z)
        back = hpo.down_closure(mask_of(heta[x] for x in bits(union)))
        if back & ~z:
            return VerificationReport(
                "kz", LAW_KZ, FAIL, EXHAUSTIVE, points,
                witness={"side": "H", "law": "H(unit)(mult(z)) <= z",
                         "family": masks_to_lists(z)},
            )

    return VerificationReport(
        "kz", LAW_KZ, PASS, EXHAUSTIVE, points,
        details={"strict_points_H": strict["H"], "strict_points_Q": strict["Q"]},
    )


def induced_algebra(lam_tag: str, qh_alg: StructureMap, cap: Optional[int] = None) -> StructureMap:
    """Precompose a composite-construction algebra with a monad morphism.

    "Q-unit-H" yields the induced Smyth algebra, "theta-H" the induced
    Hoare algebra.  The result must pass its own laws; a violation is a
    bug in this library, reported as InducedLawViolation.
    """
    if qh_alg.monad_tag != "QH":
        raise ValueError("induced algebras start from a composite-construction algebra")
    p = qh_alg.carrier
    if lam_tag == "Q-unit-H":
        lam = smyth_map(eta(p, cap), cap)
        tag = "Q"
    elif lam_tag == "theta-H":
        lam = theta(hoare(p, cap).as_poset, cap)
        tag = "H"
    else:
        raise ValueError(f"unknown monad morphism: {lam_tag!r}")
    alpha = lam.then(qh_alg.alpha)
    unit_ok, assoc_ok, witness = verify_algebra_laws(tag, p, alpha, cap)
    if not (unit_ok and assoc_ok):
        raise InducedLawViolation(f"induced {tag}-algebra failed its laws: {witness}")
    return StructureMap(tag, p, alpha, unit_ok, assoc_ok)


LAW_QH_ALGEBRA = (
    "a composite-construction structure map is unique; its carrier is a frame; "
    "the composite carrier is a distributive lattice; alpha is a lattice "
    "homomorphism, a Smyth-algebra homomorphism, and alpha.phi a Hoare-algebra "
    "homomorphism"
)


def check_QH_algebra_theorems(p: Poset, cap: Optional[int] = None) -> VerificationReport:
    """Every consequence the composite-algebra theory promises, on one carrier."""
    maps = enumerate_structure_maps("QH", p, cap)
    points = 1
    details: dict = {"admits": bool(maps), "count": len(maps)}
    if not maps:
        return VerificationReport(
            "algebras-QH", LAW_QH_ALGEBRA, PASS, EXHAUSTIVE, points, details=details
        )

    def fail(**kw):
        return VerificationReport(
            "algebras-QH", LAW_QH_ALGEBRA, FAIL, EXHAUSTIVE, points,
            witness=kw, details=details,
        )

    if len(maps) != 1:
        return fail(law="uniqueness", count=len(maps))
    sm = maps[0]
    alpha = sm.alpha

    if not is_frame(p):
        return fail(law="carrier is a frame")
    carrier = QH_MONAD.carrier(p, cap)
    cpo = carrier.as_poset
    if not (is_complete_lattice(cpo) and is_distributive_lattice(cpo)):
        return fail(law="composite carrier is a distributive lattice")
    details["frame"] = True

    # lattice homomorphism: meets are unions, joins are intersections
    tables = meets_joins(cpo)
    ptables = meets_joins(p)
    for i in range(cpo.n):
        for j in range(cpo.n):
            points += 1
            if alpha.image[tables.meet[i][j]] != ptables.meet[alpha.image[i]][alpha.image[j]]:
                return fail(law="alpha preserves binary meets", pair=[i, j])
            if alpha.image[tables.join[i][j]] != ptables.join[alpha.image[i]][alpha.image[j]]:
                return fail(law="alpha preserves binary joins", pair=[i, j])
            if carrier.index_of(carrier.elements[i] | carrier.elements[j]) != tables.meet[i][j]:
                return fail(law="meet in the composite carrier is union", pair=[i, j])

    # alpha is a homomorphism of Smyth algebras
    alpha_q = smyth_map(eta(p, cap), cap).then(alpha)
    lhs = smyth_map(alpha, cap).then(alpha_q)
    rhs = iota(hoare(p, cap).as_poset, cap).then(alpha)
    points += lhs.source.n
    if lhs.image != rhs.image:
        return fail(law="alpha is a Smyth-algebra homomorphism")

    # alpha.phi is a homomorphism of Hoare algebras
    alpha_h = theta(hoare(p, cap).as_poset, cap).then(alpha)
    g = phi_component(p, cap).then(alpha)
    lhs = hoare_map(g, cap).then(alpha_h)
    rhs = mu(smyth(p, cap).as_poset, cap).then(g)
    points += lhs.source.n
    if lhs.image != rhs.image:
        return fail(law="alpha.phi is a Hoare-algebra homomorphism")

    # induced algebras verify by construction
    induced_algebra("Q-unit-H", sm, cap)
    induced_algebra("theta-H", sm, cap)
    details["induced"] = ["Q", "H"]
    return VerificationReport(
        "algebras-QH", LAW_QH_ALGEBRA, PASS, EXHAUSTIVE, points, details=details
    )
