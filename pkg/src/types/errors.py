"""
Error types shared across the package.
"""


class SensorfixError(Exception):
    """Base class for every domain error raised by sensorfix."""


# Numerics / classifiers


class DegenerateVariance(SensorfixError, ValueError):
    """A class (or class pair) has no spread on a feature."""

    def __init__(self, message: str, means_differ: bool = False):
        super().__init__(message)
        self.means_differ = means_differ


class SingularCovariance(SensorfixError, ValueError):
    """Ridge-regularized pooled covariance still not invertible."""


class DimensionMismatch(SensorfixError, ValueError):
    """Sample width differs from what the model was trained on."""


class RankDeficient(UserWarning):
    """Requested PLS latent variables exceed the achievable rank; clipped."""


# UOS engine / self-repair


class EmptyPreselection(SensorfixError, ValueError):
    """No feature passes the FDS pre-selection: the model would be blind."""


class LastSensor(SensorfixError, ValueError):
    """Removing this sensor would leave the array empty."""


class RepairInProgress(SensorfixError, RuntimeError):
    """Another repair session is still active on this state."""


class AlignmentGap(SensorfixError, RuntimeError):
    """A reservoir template has no matching SR pool entry at merge time."""


# Data sources


class OrderingViolation(SensorfixError, ValueError):
    """Replica gains would permute the class response ordering of a sensor."""


class MalformedLine(SensorfixError, ValueError):
    """A dataset line does not match `<gas>;<conc> <idx>:<value> ...`."""


class MissingFeatureIndex(SensorfixError, ValueError):
    """A dataset line lacks one of the expected feature indices."""


class InsufficientRecords(SensorfixError, ValueError):
    """Not enough records match the requested subset."""

    def __init__(self, message: str, deficits: dict | None = None):
        super().__init__(message)
        self.deficits = deficits or {}


# Harness / CLI


class ScheduleOutOfRange(SensorfixError, ValueError):
    """A fault event falls outside the test stream."""


class ExperimentAborted(SensorfixError, RuntimeError):
    """Too many runs failed for the statistics to be trusted."""


class ChecksumMismatch(SensorfixError, RuntimeError):
    """An artifact no longer matches the checksum recorded in its manifest."""


class ConfigError(SensorfixError, ValueError):
    """Experiment or CLI configuration is invalid."""


class ReplayMismatch(SensorfixError, RuntimeError):
    """A replayed run does not reproduce its archived record."""


class UnknownRun(SensorfixError, LookupError):
    """No archived record carries the requested run index."""
