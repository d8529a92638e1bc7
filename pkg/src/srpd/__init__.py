"""Exact sub-Riemannian geometry of parallelizable distributions on spheres.

The package builds distributions from polynomial frames on unit spheres,
derives their metric structure, computes the Weitzenboeck and sub-Riemannian
connections with torsion and curvature, determines bracket-generating steps,
and verifies the built-in S^3 and S^7 examples against reference fixtures.
All arithmetic is exact rational; equality always means equality of canonical
normal forms on the sphere.
"""

from .ratpoly import (
    DimensionMismatch,
    Poly,
    PointNotOnSphere,
    QPoly,
    Rational,
    random_sphere_point,
    reduce,
    sphere_relation,
)
from .vfield import (
    OneForm,
    SymTensor2,
    VectorField,
    direct_deriv,
    dot,
    flat,
    is_tangent,
    lie_bracket,
    linear_field,
    pair,
    radial_field,
    tensor_apply,
)
from .frame import (
    DependentFrame,
    GramSingular,
    InvalidVerticalFrame,
    NonConstantGram,
    NotTangent,
    PDistribution,
    RankCertificate,
    build,
    dual_forms,
    generic_rank,
    pointwise_rank_certify,
    random_horizontal,
    random_qpoly,
    random_tangent,
    sr_metric,
)
from .bracketgen import (
    ClassificationTable,
    CompletionInfo,
    FlagLevel,
    FlagReport,
    StepVerdict,
    SubframeRow,
    classify_subframes,
    flag,
    is_involutive,
    step,
)
from .connection import (
    CoefficientTable,
    Connection,
    HatConnection,
    MissingVerticalFrame,
    NotHorizontal,
    PropertyCheck,
    PropertyReport,
    SubRiemannianConnection,
    WeitzenbockConnection,
    curvature,
    hat_connection,
    hlie,
    killing_check,
    metric_compat_check,
    sr_characterization_report,
    sr_connection,
    torsion,
    weitzenbock,
)
from .specio import (
    DistributionSpec,
    ExprSyntaxError,
    NegativeExponent,
    SpecFileError,
    UnknownVariable,
    dumps_spec,
    format_poly,
    load_spec,
    loads_spec,
    parse_expr,
    parse_qpoly,
)
from .verify import verify_example
from . import builtin

__version__ = "0.1.0"
