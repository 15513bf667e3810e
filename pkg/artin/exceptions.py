class ArtinException(Exception):
    """
    Base class for every error raised by the library, so callers (and the command line) can separate library
    failures from programming errors.
    """
    pass


class GraphSyntaxException(ArtinException):
    """
    A presentation graph, word or certificate document could not be parsed at all (malformed JSON, unknown
    letter, missing field).
    """
    pass


class ValidationException(ArtinException):
    """
    The document parsed but describes an invalid object: a loop, a duplicate edge, a label below 2 or a
    repeated generator name.
    """
    pass


class PreconditionException(ArtinException):
    """
    An operation was called on input outside its domain, for example asking for the hyperbolic type of a graph
    which is not two-dimensional.
    """
    pass


class ModulusMismatchException(ArtinException):
    """
    Two dihedral elements with different labels were combined.
    """
    pass


class IdentityInputException(ArtinException):
    """
    An elliptic classification was requested for the identity element, which fixes everything.
    """
    pass


class SpecException(ArtinException):
    """
    An elliptic or contact specification is malformed: zero power, letters outside the vertex group, unknown
    case tag.
    """
    pass


class ModeException(ArtinException):
    """
    A right-angled only routine was given a graph with a label above 2.
    """
    pass


class TranslationException(ArtinException):
    """
    The word translation into the amalgam presentation failed its self check.  Nothing computed through the
    translation can be trusted when this is raised.
    """
    pass


class ResourceLimitException(ArtinException):
    """
    A ball or sweep grew past the configured vertex budget (``ARTIN_BUDGET``).
    """
    pass


class PointOutsideBallException(ResourceLimitException):
    """
    A distance or separation query named a point that is not part of the constructed ball; a bigger ball would
    answer it.
    """
    pass


class StructureViolationException(ArtinException):
    """
    A structural check on a built ball failed.  ``witness`` holds the offending cycle, cliques or vertex.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnresolvedException(ArtinException):
    """
    A bounded search finished without reaching its target.  ``window`` is the range that was searched; it is
    not a proof that the target is never reached.
    """

    def __init__(self, message, window):
        super().__init__(message)
        self.window = window


class CaseMismatchException(ArtinException):
    """
    A contact specification does not match the elliptic element it is paired with (the contact is not on the
    fixed set, or the case does not apply to this kind of element).
    """
    pass


class BallTooSmallException(ArtinException):
    """
    The constructed ball cannot decide the requested inequality.  ``required_radius`` is the radius needed.
    """

    def __init__(self, message, required_radius):
        super().__init__(message)
        self.required_radius = required_radius


class AngleTooSmallException(ArtinException):
    """
    An angle inequality failed.  ``distance`` is the exact offending angular distance.
    """

    def __init__(self, message, distance):
        super().__init__(message)
        self.distance = distance


class DisjointnessUnknownException(ArtinException):
    """
    The fixed sets of the two elliptic elements could not be shown to be disjoint and no assumption was given.
    """
    pass


class CertificateException(ArtinException):
    """
    Re-verification of a certificate failed.  ``path`` locates the first failing record inside the document.
    """

    def __init__(self, message, path=()):
        super().__init__(message)
        self.path = tuple(path)


__all__ = [name for name in dir() if name.endswith('Exception')]
