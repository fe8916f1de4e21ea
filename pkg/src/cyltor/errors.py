"""Exception types shared across the library.

Every named precondition failure raises its own class so callers (and the
CLI, which maps them to exit code 3) can tell exactly which contract broke.
"""


class CyltorError(Exception):
    """Base class for all library errors."""


class ParseError(CyltorError):
    """Malformed plain-text or JSON input."""


class NotAUnit(CyltorError):
    """Inversion of a series whose constant term is zero."""


class BadAugmentation(CyltorError):
    """log/exp applied to a series with the wrong constant term."""


class TruncationMismatch(CyltorError):
    """Operands carry different truncation caps or ranks."""


class NonzeroConstantTerm(CyltorError):
    """Cyclic projection of a series with nonzero constant term."""


class SingularAugmentation(CyltorError):
    """Matrix whose rational reduction is not invertible."""


class PreconditionViolated(CyltorError):
    """Graded log-determinant asked below the actual leading degree."""


class AugmentationNotZero(CyltorError):
    """Alternating-sum input matrix with a unit entry."""


class FiltrationTooShallow(CyltorError):
    """Johnson value requested beyond the automorphism's filtration degree."""


class NotHomogeneous(CyltorError):
    """Operation defined only for homogeneous inputs."""


class DegreeOnePartSingular(CyltorError):
    """Automorphism whose linear part is not invertible."""


class NotAHomologyCylinder(CyltorError):
    """Presentation whose abelianization fails the cylinder condition."""


class InconsistentRelators(CyltorError):
    """Label solve left a nonzero relator residual."""


class NotTorelli(CyltorError):
    """Normalized torsion requested for a non-Torelli boundary action."""


class NonIntegralEulerShift(CyltorError):
    """Degree-one normalization did not land on an integral homology class."""


class LowerDegreeNonzero(CyltorError):
    """Graded torsion slice requested while lower slices do not vanish."""
