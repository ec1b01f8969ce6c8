"""Exception hierarchy shared by the whole package.

Verification *failures* (an axiom not holding on some input) are never
exceptions: they come back as report data.  Exceptions are reserved for
contract violations -- bad shapes, broken preconditions, malformed files.
"""


class LyError(Exception):
    """Base class for every error raised by this package."""


class DimMismatch(LyError):
    """Coordinate lengths or matrix sides do not match the expected dimension."""


class ShapeMismatch(LyError):
    """A tensor or cochain has the wrong shape for the requested operation."""


class IndexOutOfRange(LyError, IndexError):
    """A basis index is outside ``range(dim)``."""


class InvalidStructure(LyError):
    """Structure constants violate an antisymmetry required at construction."""


class CompositionNotZero(LyError):
    """Two maps fed to a quotient-dimension computation do not compose to zero."""


class SingularMatrix(LyError):
    """A matrix that must be invertible is not."""


class NotLieAlgebra(LyError):
    """Binary constants fail antisymmetry or the Jacobi identity."""


class NotLeibniz(LyError):
    """Constants fail the left Leibniz identity."""


class NotReductive(LyError):
    """A claimed reductive splitting fails [N,N] in N or [N,M] in M."""


class ZeroScale(LyError):
    """Weight rescaling by zero is undefined."""


class InvalidReynolds(LyError):
    """An operator fails the weighted Reynolds identities it must satisfy."""


class NotDerivation(LyError):
    """A map fails the binary or ternary Leibniz rule."""


class MissingModuleOp(LyError):
    """A module operator is required but absent from the representation."""


class MixedAlgebras(LyError):
    """Representations over different algebras or operators were combined."""


class InvalidInput(LyError):
    """A precondition on the inputs of an operation does not hold."""


class InternalInconsistency(LyError):
    """A derived identity failed although the identities implying it passed.

    This signals a bug in the package (or an input outside the theory's
    guarantees), never a property of valid user data.
    """


class DegreeOutOfRange(LyError):
    """A cochain degree outside the supported range was requested."""


class OrderTooLow(LyError):
    """A deformation of higher truncation order is required."""


class OrderMismatch(LyError):
    """Deformation and isomorphism truncation orders differ."""


class NotCoboundary(LyError):
    """A cochain that has to bound does not; the obstruction class is nonzero."""


class NotCocycle(LyError):
    """A cochain that has to be closed is not."""


class NotSection(LyError):
    """A map claimed to be a section does not split the projection."""


class IncompatibleData(LyError):
    """Two extensions do not live over the same base data."""


class ParseError(LyError):
    """Malformed input file.  Carries the file name and line number."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
            if line is not None:
                where += f"{line}:"
            where += " "
        super().__init__(where + message)


class NameNotFound(LyError):
    """A cross-reference names an object missing from the workspace."""
