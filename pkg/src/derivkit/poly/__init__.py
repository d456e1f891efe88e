from .certificate import (
    CertificateCheck,
    ElementaryOperatorsContext,
    Gen,
    PolynomialContext,
    Product,
    Scale,
    Sum,
    TensorAlgebraContext,
    cert_to_text,
    evaluate,
    verify_certificate,
)
from .decompose import (
    decompose_one_variable,
    diagonal_restriction,
    divide_by_difference,
    transfer_quotient,
)
from .membership import (
    DEFAULT_MAX_DEGREE,
    MembershipVerdict,
    decide_membership_poly,
    doubled_variables,
    graded_tlie_component,
    vanishes_on_diagonal,
)
from .polynomial import MultiPoly, parse_poly, uniform_components
