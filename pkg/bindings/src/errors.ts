/**
 * Typed error taxonomy mirroring the vadkit CLI's machine-readable codes
 * one-to-one. Data errors (exit code 2) are surfaced as the matching
 * subclass with the original message; usage errors (exit code 1) become
 * VadkitUsageError.
 */

export class VadkitError extends Error {
  constructor(message: string, readonly code: string) {
    super(message);
    this.name = new.target.name;
  }
}

export class VadkitUsageError extends VadkitError {
  constructor(message: string) {
    super(message, "usage");
  }
}

/** Base for every exit-code-2 failure reported by the CLI. */
export class VadkitDataError extends VadkitError {}

export class MalformedLineError extends VadkitDataError {
  constructor(m: string) {
    super(m, "malformed-line");
  }
}
export class DuplicateTermError extends VadkitDataError {
  constructor(m: string) {
    super(m, "duplicate-term");
  }
}
export class ScoreOutOfRangeError extends VadkitDataError {
  constructor(m: string) {
    super(m, "score-out-of-range");
  }
}
export class SubsetTermMissingError extends VadkitDataError {
  constructor(m: string) {
    super(m, "subset-term-missing");
  }
}
export class BasicEmotionUnresolvableError extends VadkitDataError {
  constructor(m: string) {
    super(m, "basic-emotion-unresolvable");
  }
}
export class InvalidConfigError extends VadkitDataError {
  constructor(m: string) {
    super(m, "invalid-config");
  }
}
export class InvalidCountError extends VadkitDataError {
  constructor(m: string) {
    super(m, "invalid-count");
  }
}
export class EmptyProbeSetError extends VadkitDataError {
  constructor(m: string) {
    super(m, "empty-probe-set");
  }
}
export class TargetUnreachableError extends VadkitDataError {
  constructor(m: string) {
    super(m, "target-unreachable");
  }
}
export class DegenerateSeedsError extends VadkitDataError {
  constructor(m: string) {
    super(m, "degenerate-seeds");
  }
}
export class EmptySpaceError extends VadkitDataError {
  constructor(m: string) {
    super(m, "empty-space");
  }
}
export class AssignmentMismatchError extends VadkitDataError {
  constructor(m: string) {
    super(m, "assignment-mismatch");
  }
}
export class InvalidDocumentError extends VadkitDataError {
  constructor(m: string) {
    super(m, "invalid-document");
  }
}
export class LengthMismatchError extends VadkitDataError {
  constructor(m: string) {
    super(m, "length-mismatch");
  }
}
export class EmptyInputError extends VadkitDataError {
  constructor(m: string) {
    super(m, "empty-input");
  }
}
export class TooFewSamplesError extends VadkitDataError {
  constructor(m: string) {
    super(m, "too-few-samples");
  }
}
export class NotAProbabilityError extends VadkitDataError {
  constructor(m: string) {
    super(m, "not-a-probability");
  }
}
export class NotOneHotError extends VadkitDataError {
  constructor(m: string) {
    super(m, "not-one-hot");
  }
}
export class DimensionMismatchError extends VadkitDataError {
  constructor(m: string) {
    super(m, "dimension-mismatch");
  }
}
export class ZeroVectorError extends VadkitDataError {
  constructor(m: string) {
    super(m, "zero-vector");
  }
}
export class NoOverlapWithVocabularyError extends VadkitDataError {
  constructor(m: string) {
    super(m, "no-overlap-with-vocabulary");
  }
}
export class MalformedRecordError extends VadkitDataError {
  constructor(m: string) {
    super(m, "malformed-record");
  }
}
export class DuplicateSampleIdError extends VadkitDataError {
  constructor(m: string) {
    super(m, "duplicate-sample-id");
  }
}
export class UnknownLabelError extends VadkitDataError {
  constructor(m: string) {
    super(m, "unknown-label");
  }
}
export class MissingLabelsError extends VadkitDataError {
  constructor(m: string) {
    super(m, "missing-labels");
  }
}
export class UnmatchedSampleIdError extends VadkitDataError {
  constructor(m: string) {
    super(m, "unmatched-sample-id");
  }
}
export class NoJoinedRecordsError extends VadkitDataError {
  constructor(m: string) {
    super(m, "no-joined-records");
  }
}
export class IoError extends VadkitDataError {
  constructor(m: string) {
    super(m, "io");
  }
}

type DataErrorCtor = new (message: string) => VadkitDataError;

export const ERROR_CLASSES: Readonly<Record<string, DataErrorCtor>> = {
  "malformed-line": MalformedLineError,
  "duplicate-term": DuplicateTermError,
  "score-out-of-range": ScoreOutOfRangeError,
  "subset-term-missing": SubsetTermMissingError,
  "basic-emotion-unresolvable": BasicEmotionUnresolvableError,
  "invalid-config": InvalidConfigError,
  "invalid-count": InvalidCountError,
  "empty-probe-set": EmptyProbeSetError,
  "target-unreachable": TargetUnreachableError,
  "degenerate-seeds": DegenerateSeedsError,
  "empty-space": EmptySpaceError,
  "assignment-mismatch": AssignmentMismatchError,
  "invalid-document": InvalidDocumentError,
  "length-mismatch": LengthMismatchError,
  "empty-input": EmptyInputError,
  "too-few-samples": TooFewSamplesError,
  "not-a-probability": NotAProbabilityError,
  "not-one-hot": NotOneHotError,
  "dimension-mismatch": DimensionMismatchError,
  "zero-vector": ZeroVectorError,
  "no-overlap-with-vocabulary": NoOverlapWithVocabularyError,
  "malformed-record": MalformedRecordError,
  "duplicate-sample-id": DuplicateSampleIdError,
  "unknown-label": UnknownLabelError,
  "missing-labels": MissingLabelsError,
  "unmatched-sample-id": UnmatchedSampleIdError,
  "no-joined-records": NoJoinedRecordsError,
  io: IoError,
};

const DIAGNOSTIC = /^vadkit: error\[([a-z-]+)\]: ([\s\S]*)$/m;

/** Turn an exit-code-2 stderr diagnostic into the matching typed error. */
export function dataErrorFromStderr(stderr: string): VadkitDataError {
  const match = DIAGNOSTIC.exec(stderr);
  if (match) {
    const [, code, message] = match;
    const ctor = ERROR_CLASSES[code];
    if (ctor) {
      return new ctor(message.trim());
    }
    return new VadkitDataError(message.trim(), code);
  }
  return new VadkitDataError(stderr.trim() || "unknown data error", "vadkit-error");
}
