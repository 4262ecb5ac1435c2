"""Exception types shared across the package."""


class QwTreeError(ValueError):
    """Base class for all qwtree4 domain errors."""


class MalformedParams(QwTreeError):
    """Parameter vectors are structurally unusable (empty, length mismatch, non-integer)."""


class NonIncreasingQ(QwTreeError):
    """Leaf counts are not nonnegative and strictly increasing."""


class NonPositiveA(QwTreeError):
    """A stem-count entry is < 1."""


class DiameterNot4(QwTreeError):
    """Fewer than two stems carry a leaf, so the tree's diameter is below 4."""


class RootNotConverged(RuntimeError):
    """The secular-equation root finder failed to reach its tolerance."""


class InterlacingViolated(QwTreeError):
    """Inputs do not satisfy q_1 < lambda_1^2 < q_2 < ... < q_t < lambda_t^2."""


class NotStronglyCospectral(QwTreeError):
    """The requested vertex pair is not strongly cospectral."""


class PairNotCospectral(QwTreeError):
    """A scan selector named a vertex pair that is not strongly cospectral."""


class UnknownFamily(QwTreeError):
    """Parameters match none of the implemented readout families."""


class ParityViolation(QwTreeError):
    """An index or family parameter that must be odd is even."""


class EvenK(QwTreeError):
    """A square-root multiplier that must be odd for a schedule is even."""


class ConditionsViolated(QwTreeError):
    """One or more of the three-class family conditions fails.

    The ``failed`` attribute lists the violated condition labels.
    """

    def __init__(self, failed: list[str]):
        self.failed = list(failed)
        super().__init__("conditions violated: " + ", ".join(self.failed))


class EpsilonRange(QwTreeError):
    """epsilon must lie strictly between 0 and 1/2."""


class NoPgst(QwTreeError):
    """The family admits no pretty good state transfer for these parameters."""
