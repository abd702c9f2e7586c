"""Exception types shared across the package.

Every error carries a ``stage`` label naming the pipeline stage it belongs
to; the CLI surfaces it in machine-readable error objects.
"""

from __future__ import annotations


class RecordMinerError(Exception):
    """Base class for all errors raised by this package."""

    stage = "pipeline"

    def __init__(self, message: str, *, stage: str | None = None):
        super().__init__(message)
        if stage is not None:
            self.stage = stage


class EmptyInput(RecordMinerError):
    """Input is empty or whitespace-only."""

    stage = "dom"


class EncodingError(RecordMinerError):
    """Input bytes cannot be decoded with the given encoding hint."""

    stage = "dom"


class UnknownNode(RecordMinerError):
    """A node id does not exist in the document."""

    stage = "layout"


class NotAnElement(RecordMinerError):
    """The node exists but is a text node where an element is required."""

    stage = "layout"


class NoChildren(RecordMinerError):
    """The element has no element children to work with."""

    stage = "region"


class SchemaError(RecordMinerError):
    """A ground-truth file does not match the annotation schema."""

    stage = "eval"


class DuplicateSelector(SchemaError):
    """Two annotation records share the same selector."""


class SelectorResolutionError(RecordMinerError):
    """A truth selector does not resolve to a node in the page."""

    stage = "eval"


class EmptyCorpus(RecordMinerError):
    """The corpus directory contains no pages."""

    stage = "eval"


class InputNotFound(RecordMinerError):
    """The named input file does not exist."""

    stage = "input"


class FetchError(RecordMinerError):
    """A network fetch failed.

    ``kind`` is one of ``"timeout"``, ``"status"``, ``"network"`` or
    ``"url"``; ``status`` holds the HTTP status code when kind=="status".
    """

    stage = "fetch"

    def __init__(self, message: str, *, kind: str = "network",
                 status: int | None = None):
        super().__init__(message)
        self.kind = kind
        self.status = status


class UsageError(RecordMinerError):
    """Bad command line or configuration input."""

    stage = "usage"
