"""Proper holomorphic maps between complex ellipsoids and generalized
Hartogs triangles: exact existence decisions, synthesis of the classified
map families, batched numerical evaluation, and property verification.

The public surface is re-exported here; the implementation lives in

- ``exactnum``: exact arithmetic over the rationals extended by sqrt(2)
- ``domains``: the two domain types, boundary strata, and samplers
- ``existence``: witnesses and deciders for the three existence problems
- ``maps``: the map expression IR, constructors, and the text format
- ``verify``: statistical properness, automorphism, and stratum checks
- ``cli``: the ``holomap`` command line entry point and the parsers
"""

from .errors import (
    BranchViolated,
    CongruenceViolated,
    DegenerateBlaschke,
    DimensionMismatch,
    DivisionByZero,
    DomainViolation,
    HolomapError,
    InstanceTooLarge,
    NonPositiveParameter,
    NotAStabilizer,
    NotInBall,
    NotInvertible,
    NotUnimodular,
    NotUnitary,
    ParseError,
    PreconditionViolated,
    UnsupportedDimension,
    UnsupportedStratum,
    WrongNodeType,
    ZeroFixRequired,
)
from .exactnum import (
    ONE,
    SQRT2,
    ZERO,
    ExactScalar,
    classify_scalar,
    format_scalar,
    to_float,
)
from .domains import (
    Ellipsoid,
    HartogsTriangle,
    StratumTag,
    format_domain,
    gap_ellipsoid,
    gaps_hartogs,
    min_gap_arr,
    sample_interior,
    sample_interior_arr,
    sample_near_stratum_arr,
    strata,
)
from .existence import (
    EllipsoidWitness,
    Hartogs11Witness,
    Hartogs1mWitness,
    NonExistence,
    Permutation,
    decide_ellipsoid,
    decide_hartogs_1_1,
    decide_hartogs_1_m,
    enumerate_matchings,
    find_matching,
    natural_ratio_matrix,
    revalidate,
    stabilizer,
)
from .maps import (
    BlaschkeProduct,
    Compose,
    EAut,
    H2Aut,
    H2Proper,
    HFpsProper,
    MapExpr,
    Permute,
    PowerMap,
    compose,
    enumerate_r,
    format_complex,
    format_map,
    invert_aut,
    is_landucci_form,
    make_ball_aut,
    make_ellipsoid_aut,
    make_hartogs_1_1_aut,
    synth_ellipsoid_proper,
    synth_hartogs_1_1_proper,
    synth_hartogs_1_m_proper,
)

from .verify import (
    VerificationReport,
    check_aut,
    check_into,
    check_properness,
    check_stratum_preservation,
    oracle,
    oracle_admissible_r,
    oracle_ellipsoid,
    oracle_hartogs_1_1,
)
from .parser import parse_domain, parse_map, parse_point, parse_scalar

__version__ = "0.1.0"
