"""Exception hierarchy shared by every layer of the shell."""


class VcshError(Exception):
    """Base class for all library errors."""


class LogicSyntaxError(VcshError, SyntaxError):
    def __init__(self, position, expected, text=""):
        self.position = position
        self.expected = frozenset(expected)
        self.source_text = text
        found = text[position:position + 12] if text else ""
        want = ", ".join(sorted(self.expected)) or "end of input"
        msg = f"at position {position}: expected {want}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)


class CompositionMismatch(VcshError):
    pass


class WorldMismatch(VcshError):
    pass


class EnumerationCapExceeded(VcshError):
    def __init__(self, cardinality, cap):
        self.cardinality = cardinality
        self.cap = cap
        super().__init__(f"domain of size {cardinality} exceeds enumeration cap {cap}")


class UnknownIndex(VcshError):
    pass


class UnboundVariable(VcshError):
    pass


class UnknownConstant(VcshError):
    pass


class SortMismatch(VcshError):
    pass


class ImproperDescription(VcshError):
    """A description whose satisfier set is not a singleton."""


class NoWitness(ImproperDescription):
    pass


class NonUnique(ImproperDescription):
    def __init__(self, message, witnesses=()):
        self.witnesses = tuple(witnesses)
        super().__init__(message)


class UnknownEntity(VcshError):
    pass


class NameClash(VcshError):
    pass


class UnknownReference(VcshError):
    pass


class FormatError(VcshError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class CommandError(VcshError):
    pass
