"""Exception types raised across the package.

All errors derive from :class:`ToolkitError` so callers can catch the whole
family at once (the verification harness does exactly that and converts any
failure into a failed check).
"""


class ToolkitError(Exception):
    """Base class for every error raised by this package."""


class NotHermitian(ToolkitError):
    """Input matrix is not Hermitian within the requested tolerance."""


class IndefiniteInput(ToolkitError):
    """Matrix has an eigenvalue below the negative clipping tolerance."""


class DimensionMismatch(ToolkitError):
    """Operands live in incompatible spaces."""


class NotContraction(ToolkitError):
    """Operator norm exceeds 1 beyond the admitted tolerance."""


class NotCnu(ToolkitError):
    """Contraction has a unimodular eigenvalue, hence a unitary part."""


class NotResolvent(ToolkitError):
    """Requested boundary point is not in the resolvent set."""


class SingularResolvent(ToolkitError):
    """A resolvent-type factor is numerically singular at the given point."""


class DegenerateRegularity(ToolkitError):
    """Regular-type constant is not bounded away from zero."""


class DomainError(ToolkitError):
    """Evaluation point lies outside the admissible domain."""


class IllConditioned(ToolkitError):
    """Linear system condition estimate exceeds the trust threshold."""


class SingularNormalizer(ToolkitError):
    """Normalizing Gram matrix is singular; inverse square root undefined."""


class BadBeta(ToolkitError):
    """Interior base point must satisfy 0 < |beta| < 1."""


class NotInHbeta(ToolkitError):
    """Vector does not represent a model function vanishing at beta."""


class BadParam(ToolkitError):
    """Invalid parameter value."""


class ParseError(ToolkitError):
    """Operator file could not be parsed."""


class ShapeError(ToolkitError):
    """Operator file declares inconsistent shapes."""
