"""Exception hierarchy for u2sing.

Every failure mode that callers are expected to handle gets its own class;
``U2SingError`` is the common base so the CLI can map any library failure to
a nonzero exit status without enumerating subclasses.
"""


class U2SingError(Exception):
    """Base class for all u2sing errors."""


class NonCircleLeftFactor(U2SingError):
    """Left quaternion of a pair is not of the form exp(i*theta)."""


class BothZero(U2SingError):
    """Hopf projection requested at (0, 0)."""


class InvalidParameters(U2SingError):
    """Group family parameters violate the catalog coprimality conditions."""


class ClosureOverflow(U2SingError):
    """Closure enumeration exceeded twice the expected group order."""


class NotCoprime(U2SingError):
    """Cyclic type (a, beta) with gcd(a, beta) != 1."""


class OrbitCountMismatch(U2SingError):
    """Singular-orbit computation did not find exactly three orbits."""


class TableDisagreement(U2SingError):
    """Algorithmic singularity triple disagrees with the family table."""


class CrossCheckFailure(U2SingError):
    """Two independent derivations of the same invariant disagree."""


class SnapFailure(U2SingError):
    """A float that must be an integer (or exact rational) is not, within
    the snap tolerance."""


class MalformedGraph(U2SingError):
    """Plumbing graph does not have the shape an operation requires."""


class NoCandidate(U2SingError):
    """No central self-intersection value satisfies all compactification
    criteria inside the scan window."""


class AmbiguousCandidate(U2SingError):
    """The compactification criteria disagree; both candidates reported in
    the exception message."""
