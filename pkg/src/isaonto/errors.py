"""Exception types shared across the pipeline."""


class IsaOntoError(Exception):
    """Base class for all package errors."""


class LexiconLoadError(IsaOntoError):
    def __init__(self, message: str, file: str | None = None, line: int | None = None):
        where = ""
        if file is not None:
            where = f"{file}:{line}: " if line is not None else f"{file}: "
        super().__init__(where + message)
        self.file = file
        self.line = line


class EmptySentenceError(IsaOntoError):
    pass


class NotIsaSentence(IsaOntoError):
    def __init__(self, reason: str, source_index: int | None = None):
        super().__init__(reason)
        self.reason = reason
        self.source_index = source_index


class NoTemplateMatch(IsaOntoError):
    pass


class InvalidPosDependency(IsaOntoError):
    def __init__(self, subject_tag: str, object_tag: str):
        super().__init__(f"invalid subject/object POS pair ({subject_tag}, {object_tag})")
        self.pair = (subject_tag, object_tag)


class UnsupportedShape(IsaOntoError):
    pass


class PosMismatch(UnsupportedShape):
    pass


class UnknownDimension(IsaOntoError):
    pass


class DefinitionCycle(IsaOntoError):
    def __init__(self, cycle):
        super().__init__("definition cycle: " + " -> ".join(cycle))
        self.cycle = list(cycle)


class DLParseError(IsaOntoError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class EmptyOntology(IsaOntoError):
    pass
