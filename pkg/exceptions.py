class SpecError(Exception):
    pass


class ParseError(SpecError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class UnknownGenerator(SpecError):
    pass


class DuplicateDefinition(SpecError):
    pass


class InvalidStructure(SpecError):
    pass


class InvalidParams(SpecError):
    pass


class MissingAction(SpecError):
    pass


class TruncationExceeded(Exception):
    pass


class NotASolution(Exception):
    pass


class NotVirasoroAtZero(Exception):
    pass


class HypothesisViolated(Exception):
    pass


class MalformedBracket(Exception):
    pass
