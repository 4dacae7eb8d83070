"""Exception types shared across the engine."""


class BraidFloerError(Exception):
    """Base class for all engine errors."""


class MalformedWord(BraidFloerError):
    """Braid word text does not match the grammar."""


class GeneratorOutOfRange(BraidFloerError):
    """Braid letter |i| >= number of strands."""


class NonEmbeddedInput(BraidFloerError):
    """An input arc self-intersects or two arcs of one system cross."""


class DegeneratePosition(BraidFloerError):
    """Tangency, triple point, or collinear overlap; caller must perturb."""


class MissingContactPoint(BraidFloerError):
    """A diagram lacks the contact slot for some arc pair."""


class GradingAnomaly(BraidFloerError):
    """Inconsistent relative grading (diagram bug or index miscalibration)."""


class UncalibratedDecoration(BraidFloerError):
    """A decoration/end pair absent from the fitted index table appeared."""


class CalibrationError(BraidFloerError):
    """No index parameter table satisfies all calibration equalities."""


class ChainMapViolation(BraidFloerError):
    """A claimed chain map fails to commute with the differentials."""


class PreconditionViolated(BraidFloerError):
    """An operation was called outside its stated precondition."""


class UnknownTarget(BraidFloerError):
    """Unrecognized reproduction target name."""
