"""Exception types shared across the package."""


class MasksError(Exception):
    """Base class for every error raised by this package."""


# --- Kripke model / logic ---

class UnknownWorld(MasksError):
    pass


class UnknownAgent(MasksError):
    pass


class EmptyAgentSet(MasksError):
    pass


# --- formula text syntax ---

class ParseError(MasksError):
    """Syntax error carrying the byte span of the offending region."""

    def __init__(self, message: str, start: int, end: int):
        super().__init__(f"{message} (at {start}..{end})")
        self.message = message
        self.start = start
        self.end = end


class ModelFormatError(MasksError):
    """Malformed model text file."""


# --- state-space reduction ---

class MissingSingletonWorld(MasksError):
    pass


class UnknownClass(MasksError):
    pass


class EmptySet(MasksError):
    pass


# --- perturbations / knowledge extraction ---

class InvalidSpec(MasksError):
    pass


class ShapeMissing(MasksError):
    pass


class ClassifierFailure(MasksError):
    """A classifier raised while evaluating a perturbation point."""

    def __init__(self, message: str, index: int):
        super().__init__(f"{message} (point index {index})")
        self.index = index


# --- ensemble aggregation ---

class EmptyEnsemble(MasksError):
    pass


class EmptyKnowledgeSet(MasksError):
    pass


# --- product models ---

class DuplicateAgentName(MasksError):
    pass


class EmptyComponentModel(MasksError):
    pass


class ProductTooLarge(MasksError):
    pass


# --- binary file formats (weights, IDX) ---

class FileFormatError(MasksError):
    """Malformed binary file; ``offset`` names the failing byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class BadMagic(FileFormatError):
    pass


class TruncatedFile(FileFormatError):
    pass


class DimMismatch(FileFormatError):
    pass


class NonFiniteWeight(FileFormatError):
    pass


class CountMismatch(FileFormatError):
    pass
