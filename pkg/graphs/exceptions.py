from django.core.exceptions import ValidationError


class InstanceFormatError(ValidationError):
    """Malformed instance, solution, edge-list or CNF document."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, code="format")


class InvalidInstanceError(ValidationError):
    def __init__(self, message):
        super().__init__(message, code="invalid_instance")


class UnreachableTargetError(ValidationError):
    def __init__(self, source, target):
        self.source = source
        self.target = target
        super().__init__(f"vertex {target} is unreachable from {source}", code="unreachable")


class PathCapExceededError(ValidationError):
    def __init__(self, pair_index, cap):
        self.pair_index = pair_index
        self.cap = cap
        super().__init__(
            f"terminal pair {pair_index} has more than {cap} shortest paths",
            code="path_cap",
        )


class ParameterTooLargeError(ValidationError):
    def __init__(self, message):
        super().__init__(message, code="parameter")


class GadgetInputError(ValidationError):
    def __init__(self, message):
        super().__init__(message, code="gadget_input")


class GadgetConstructionError(ValidationError):
    """A generated instance failed its own structural self-check."""

    def __init__(self, message):
        super().__init__(message, code="gadget_construction")
