"""Galois module structure of differentials of HKG covers and a liftability oracle."""

from .differentials import (
    DifferentialTable,
    ModuleMultiset,
    decompose,
    differential_table,
    dimension_check,
    divisor_degree,
    simple_counts,
    u_to_v,
    v_to_u,
)
from .exactmath import GroupSpec, PadicDigits, make_group, padic_digits, resolve_a0, type_of_index, validate_group
from .lifting import (
    LiftReport,
    PartitionCertificate,
    brute_force_decide,
    decide,
    dihedral_decide,
    explicit_w01_pairing,
    general_decide,
    verify_certificate,
)
from .ramification import (
    BProfile,
    JumpSequence,
    b_value,
    family_jumps,
    genus_generic,
    genus_special,
    kgb_vanishes,
    lower_to_upper,
    pi_profile,
    upper_to_lower,
    validate_obus_pries,
)

__version__ = "0.1.0"
from .fixtures import load_fixture
