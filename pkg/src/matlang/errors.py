"""Exception hierarchy shared by all modules."""


class MatlangError(Exception):
    """Base class for every error raised by the package."""


# linear algebra

class DimensionMismatch(MatlangError):
    pass


class NotSquare(MatlangError):
    pass


class NotSymmetric(MatlangError):
    pass


class ConvergenceFailure(MatlangError):
    pass


# language

class MatlangSyntaxError(MatlangError):
    def __init__(self, position, expected, text=None):
        self.position = position
        self.expected = expected
        self.text = text
        super().__init__(f"syntax error at byte {position}: expected {expected}")


class SortError(MatlangError):
    def __init__(self, node, expected, actual):
        self.node = node
        self.expected = expected
        self.actual = actual
        super().__init__(f"sort error in {node}: expected {expected}, got {actual}")


class FragmentViolation(MatlangError):
    def __init__(self, forbidden):
        self.forbidden = sorted(set(forbidden))
        super().__init__("operations outside fragment: " + ", ".join(self.forbidden))


class EvalModeError(MatlangError):
    pass


class UnknownFunction(MatlangError):
    pass


# partitions / equivalence

class OrderMismatch(MatlangError):
    def __init__(self, n, m):
        self.n, self.m = n, m
        super().__init__(f"graphs have different orders: {n} vs {m}")


class StabilityViolation(MatlangError):
    def __init__(self, c, d, e, detail=""):
        self.triple = (c, d, e)
        super().__init__(f"structure constant p^({c},{d}) not constant on class {e}" + (f": {detail}" if detail else ""))


class PreconditionFailed(MatlangError):
    pass


class EigenvaluePairingFailure(MatlangError):
    pass


class NotDistinguishable(MatlangError):
    pass


# corpus

class FormatError(MatlangError):
    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"{message} (byte {offset})")


class RecoveryFailure(MatlangError):
    def __init__(self, entry, detail=""):
        self.entry = entry
        super().__init__(f"recovery failed for corpus entry {entry!r}" + (f": {detail}" if detail else ""))


class CorpusMismatch(MatlangError):
    def __init__(self, entry, detail=""):
        self.entry = entry
        super().__init__(f"corpus entry {entry!r} does not match: {detail}")
