"""Degree-0 immersed plane curves: invariants and the canonical retraction."""

from .curves import (
    ArgumentLift,
    PeriodicCurve,
    SpeedFunction,
    UnitLoop,
    arclength_resample,
    argument_lift,
    average_argument,
    derivative,
    evaluate_series,
    image_gap,
    image_length,
    integrate_velocity,
    loop_degree,
    normalize_basepoint,
    parameter_grid,
    reparametrize,
    resample,
    reverse,
    rotate,
    rotation_degree,
    split_velocity,
    translate,
    variation_average,
    weighted_argument_mean,
)
from .documents import (
    CurveDocument,
    document_from_curve,
    dump_document,
    fourier_document,
    load_curve_document,
    load_path_document,
    path_to_document,
    validate_path_document,
)
from .errors import (
    AtPole,
    BadDiffeo,
    HullDegenerate,
    Imm0Error,
    InvariantError,
    InvariantViolation,
    NewtonDiverged,
    NonIntegerWinding,
    NonPeriodic,
    NonZeroDegree,
    NoPositiveSolution,
    NotBased,
    NotClosed,
    NotImmersed,
    NumericError,
    OutOfRange,
    ParseError,
    TailTooLarge,
    Undersampled,
    VarTooSmall,
    ZeroSequence,
)
from .gallery import gerono_figure_eight, random_immersion
from .rendering import render_path
from .retraction import (
    HomotopyPath,
    PathFrame,
    SectionCoefficients,
    canonical_curve,
    canonical_loop,
    canonical_speed,
    fiber_retract,
    rescale_variation,
    retract_curve,
    retract_loop,
    retraction_parameter,
    section_loop,
    triangle_section,
)
from .sequences import (
    BasedLoopFunction,
    RapidSequence,
    contract_based_loop,
    loop_to_sequence,
    sequence_to_loop,
    shuffle_homotopy,
    smooth_step,
    sphere_normalize,
    stereographic_contract,
)

__version__ = "0.1.0"
