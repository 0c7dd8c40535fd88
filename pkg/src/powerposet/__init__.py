"""Power constructions on finite posets, with exhaustive law checking.

The package computes the down-set (Hoare) and nonempty-up-set (Smyth)
hyperspaces of finite posets, the monad structure both carry, the
exchange maps between their composites, and the algebras of all three
monads, and verifies every law, diagram, and characterization involved
at desk scale, either exhaustively or by seeded sampling.

All values are immutable; every operation is a pure function of its
inputs, so concurrent callers are safe and identical runs produce
identical reports.
"""

from .caps import (
    CARRIER_CAP,
    FAMILY_CAP,
    GENERATION_CAP,
    SWEEP_CAP,
    SizeCapExceeded,
)
from .poset import (
    CapExceeded,
    MeetJoinTables,
    MonotoneMap,
    NotALattice,
    NotAntisymmetric,
    NotMonotone,
    NotReflexive,
    NotTransitive,
    Poset,
    PosetError,
    enumerate_labeled_posets,
    generate_monotone_maps,
    is_complete_lattice,
    is_distributive_lattice,
    is_frame,
    is_lattice,
    meets_joins,
    poset_isomorphism,
    validate_poset,
)
from .powerdomains import (
    HOARE_MONAD,
    SMYTH_MONAD,
    HyperPoset,
    MonadData,
    TargetNotCompleteLattice,
    check_universal_property,
    eta,
    hoare,
    hoare_map,
    iota,
    mu,
    smyth,
    smyth_map,
    theta,
    verify_monad_laws,
)
from .topology import (
    FiniteSpace,
    InternalInvariantBroken,
    NotATopology,
    NotT0,
    SetFamily,
    as_finite_space,
    check_KC,
    check_coherent,
    check_consonance,
    check_sober_trivialities,
    check_well_filtered,
    compact_saturated,
    lower_vietoris,
    scott_opens,
    scott_space,
    upper_vietoris,
)
from .commutativity import (
    PHI_LAW,
    PSI_LAW,
    QH_MONAD,
    CompositeMonad,
    DistLawSide,
    composite_monad,
    gamma,
    phi,
    phi_component,
    phi_prime,
    psi,
    psi_component,
    psi_prime,
    qh,
    qh_map,
    rho,
    verify_distributive_law,
    verify_iso,
    verify_monad_morphism,
    verify_rho_identities,
)
from .algebras import (
    AlgebraReport,
    InducedLawViolation,
    StructureMap,
    algebra_report,
    check_algebra_homomorphism,
    check_H_algebra_characterization,
    check_KZ,
    check_Q_algebra_necessities,
    check_QH_algebra_theorems,
    enumerate_structure_maps,
    induced_algebra,
    verify_algebra_laws,
)
from .catalog import CATALOG, catalog_names, catalog_poset
from .documents import ParseError, PosetDocument, load_document, parse_document, to_dot
from .report import VerificationReport

__version__ = "0.1.0"
