"""Exception hierarchy for the suite.

Every error carries a stable machine-readable ``code`` so the CLI can emit
structured error records.
"""


class NormlensError(Exception):
    code = "error"

    def to_record(self) -> dict:
        return {"error": self.code, "message": str(self)}


class MalformedInputError(NormlensError):
    code = "malformed-input"


class IntroductionNotFoundError(NormlensError):
    code = "not-found"


class UnknownVenueError(NormlensError):
    code = "unknown-venue"


class DuplicateIdError(NormlensError):
    code = "duplicate-id"


class EmptyCorpusError(NormlensError):
    code = "empty-corpus"


class InsufficientCommunitiesError(NormlensError):
    code = "insufficient-communities"


class UnknownCommunityError(NormlensError):
    code = "unknown-community"


class EmptySentenceError(NormlensError):
    code = "empty-sentence"


class EmptyDocumentError(NormlensError):
    code = "empty-document"


class ScorerUnavailableError(NormlensError):
    code = "scorer-unavailable"


class JudgeUnavailableError(NormlensError):
    code = "judge-unavailable"


class ClassifierUnavailableError(NormlensError):
    code = "classifier-unavailable"


class InsufficientDataError(NormlensError):
    code = "insufficient-data"


class ZeroVarianceError(NormlensError):
    code = "zero-variance"


class BackendUnavailableError(NormlensError):
    code = "backend-unavailable"


class ConfigMismatchError(NormlensError):
    code = "config-mismatch"
