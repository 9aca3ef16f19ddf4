"""Exception hierarchy. Every error carries a stable machine-readable ``code``."""

from __future__ import annotations


class AtlasError(Exception):
    code = "ATLAS_ERROR"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self), "details": _plain(self.details)}


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    return str(obj)


# lie_core
class AntisymmetryViolation(AtlasError):
    code = "ANTISYMMETRY_VIOLATION"


class JacobiViolation(AtlasError):
    code = "JACOBI_VIOLATION"


class DimMismatch(AtlasError):
    code = "DIM_MISMATCH"


class NotSolvable(AtlasError):
    code = "NOT_SOLVABLE"


class FlagSearchFailed(AtlasError):
    code = "FLAG_SEARCH_FAILED"


class MalformedAlgebra(AtlasError):
    code = "MALFORMED_ALGEBRA"


# subalgebra_search
class NoWitnessFound(AtlasError):
    code = "NO_WITNESS_FOUND"


class NoncommutingPair(AtlasError):
    code = "NONCOMMUTING_PAIR"


class NotClosed(AtlasError):
    code = "NOT_CLOSED"


class TemplateMismatch(AtlasError):
    code = "TEMPLATE_MISMATCH"


# ft_classifier
class InconsistentFlags(AtlasError):
    code = "INCONSISTENT_FLAGS"


class BadParams(AtlasError):
    code = "BAD_PARAMS"


# finite_frames
class InvalidGroup(AtlasError):
    code = "INVALID_GROUP"


class EmptyShiftSet(AtlasError):
    code = "EMPTY_SHIFT_SET"


class NotAFrame(AtlasError):
    code = "NOT_A_FRAME"


class NotAFrameOnH(AtlasError):
    code = "NOT_A_FRAME_ON_H"


class NotAProjection(AtlasError):
    code = "NOT_A_PROJECTION"


class NotCommuting(AtlasError):
    code = "NOT_COMMUTING"


class NotASubgroup(AtlasError):
    code = "NOT_A_SUBGROUP"


# pointset_geometry
class EmptyCenters(AtlasError):
    code = "EMPTY_CENTERS"


# amalgam_analysis
class WidthUnresolvable(AtlasError):
    code = "WIDTH_UNRESOLVABLE"


# matrix_groups
class SizeMismatch(AtlasError):
    code = "SIZE_MISMATCH"


class DependentSpan(AtlasError):
    code = "DEPENDENT_SPAN"


class UnknownName(AtlasError):
    code = "UNKNOWN_NAME"


# cli
class ParseError(AtlasError):
    code = "PARSE_ERROR"


class CapExceeded(AtlasError):
    code = "CAP_EXCEEDED"
