"""Exception hierarchy.

Every error raised on bad input derives from :class:`DcnetError`; the CLI
reports ``<ClassName>: <message>`` on stderr and exits with status 1.
"""

from __future__ import annotations


class DcnetError(Exception):
    """Base class for all domain errors."""


# -- parsing / structural validation ----------------------------------------

class DcnSyntaxError(DcnetError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CycleDetected(DcnetError):
    pass


class MultipleRoots(DcnetError):
    pass


class NoRoot(DcnetError):
    pass


class UnlabeledLeaf(DcnetError):
    pass


class TaxonNotALeaf(DcnetError):
    pass


class DuplicateArc(DcnetError):
    pass


class DuplicateTaxon(DcnetError):
    pass


class DuplicateLabel(DcnetError):
    pass


class InvalidLabel(DcnetError):
    pass


class TooManyTaxa(DcnetError):
    pass


class EmptyTaxonSet(DcnetError):
    pass


class NoSuchVertex(DcnetError):
    pass


# -- comparison ---------------------------------------------------------------

class NotDistinctCluster(DcnetError):
    pass


class TaxonSetMismatch(DcnetError):
    pass


class IndexMissingCluster(DcnetError):
    pass


class InvalidP(DcnetError):
    pass


class InvalidN(DcnetError):
    pass


class TooLarge(DcnetError):
    pass


# -- simplification -----------------------------------------------------------

class VertexIsRoot(DcnetError):
    pass


class VertexIsLeaf(DcnetError):
    pass


class NoSuchCluster(DcnetError):
    pass


class NoSuchArc(DcnetError):
    pass


class ArcNotRedundant(DcnetError):
    pass


class KeepMissingTrivial(DcnetError):
    pass


class KeepNotSubsetOfVertices(DcnetError):
    pass


class NoAdmissibleInstance(DcnetError):
    pass


class StepFailed(DcnetError):
    """A step of a simplification sequence was invalid at its turn."""

    def __init__(self, index: int, cause: DcnetError):
        super().__init__(f"step {index}: {type(cause).__name__}: {cause}")
        self.index = index
        self.cause = cause


# -- hybrid out-degree-1 networks ----------------------------------------------

class NotO1Network(DcnetError):
    pass


class AlreadyHasO1Hybrid(DcnetError):
    pass


class NotExtendedDC(DcnetError):
    pass


# -- search / generation ----------------------------------------------------------

class SearchTooLarge(DcnetError):
    pass


class GenerationExhausted(DcnetError):
    pass
