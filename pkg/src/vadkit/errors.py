"""Error taxonomy shared by every vadkit module.

Each error carries a stable machine-readable ``code`` so that CLI
consumers and foreign-language wrappers can map failures one-to-one
without parsing prose.
"""


class VadkitError(Exception):
    """Base class for all vadkit domain errors."""

    code = "vadkit-error"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


# --- lexicon ---------------------------------------------------------------

class MalformedLine(VadkitError):
    code = "malformed-line"


class DuplicateTerm(VadkitError):
    code = "duplicate-term"


class ScoreOutOfRange(VadkitError):
    code = "score-out-of-range"


class SubsetTermMissing(VadkitError):
    code = "subset-term-missing"


class BasicEmotionUnresolvable(VadkitError):
    code = "basic-emotion-unresolvable"


class InvalidConfig(VadkitError):
    code = "invalid-config"


# --- space -----------------------------------------------------------------

class InvalidCount(VadkitError):
    code = "invalid-count"


class EmptyProbeSet(VadkitError):
    code = "empty-probe-set"


class TargetUnreachable(VadkitError):
    code = "target-unreachable"


# --- clustering ------------------------------------------------------------

class DegenerateSeeds(VadkitError):
    code = "degenerate-seeds"


class EmptySpace(VadkitError):
    code = "empty-space"


class AssignmentMismatch(VadkitError):
    code = "assignment-mismatch"


class InvalidDocument(VadkitError):
    """A serialized space/model/report file failed validation."""

    code = "invalid-document"


# --- metrics ---------------------------------------------------------------

class LengthMismatch(VadkitError):
    code = "length-mismatch"


class EmptyInput(VadkitError):
    code = "empty-input"


class TooFewSamples(VadkitError):
    code = "too-few-samples"


class NotAProbability(VadkitError):
    code = "not-a-probability"


class NotOneHot(VadkitError):
    code = "not-one-hot"


# --- similarity ------------------------------------------------------------

class DimensionMismatch(VadkitError):
    code = "dimension-mismatch"


class ZeroVector(VadkitError):
    code = "zero-vector"


class NoOverlapWithVocabulary(VadkitError):
    code = "no-overlap-with-vocabulary"


# --- harness ---------------------------------------------------------------

class MalformedRecord(VadkitError):
    code = "malformed-record"


class DuplicateSampleId(VadkitError):
    code = "duplicate-sample-id"


class UnknownLabel(VadkitError):
    code = "unknown-label"


class MissingLabels(VadkitError):
    code = "missing-labels"


class UnmatchedSampleId(VadkitError):
    code = "unmatched-sample-id"


class NoJoinedRecords(VadkitError):
    code = "no-joined-records"
