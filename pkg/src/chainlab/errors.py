"""Exception hierarchy.

Every error carries a ``code`` naming it in reports; the CLI maps
``ChainLabError`` subclasses to exit status 2.
"""


class ChainLabError(Exception):
    code = "ChainLabError"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_json(self):
        out = {"code": self.code, "message": str(self)}
        if self.details:
            out["details"] = self.details
        return out


class SizeCapExceeded(ChainLabError):
    code = "SizeCapExceeded"


class NonMonicPolynomial(ChainLabError):
    code = "NonMonicPolynomial"


class MalformedSpec(ChainLabError):
    code = "MalformedSpec"


class DegenerateRing(ChainLabError):
    code = "DegenerateRing"


class NotAnIdeal(ChainLabError):
    code = "NotAnIdeal"


class ParseError(ChainLabError):
    code = "SyntaxError"

    def __init__(self, message, pos=None, text=None):
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message, pos=pos)
        self.pos = pos
        self.text = text


class MissingVariable(ChainLabError):
    code = "MissingVariable"


class BasePointInvalid(ChainLabError):
    code = "BasePointInvalid"


class MalformedMorphism(ChainLabError):
    code = "MalformedMorphism"


class BaseMismatch(ChainLabError):
    code = "BaseMismatch"


class UndecidedSyntactically(ChainLabError):
    code = "UndecidedSyntactically"


class UnknownBuiltin(ChainLabError):
    code = "UnknownBuiltin"


class UnknownFamily(ChainLabError):
    code = "UnknownFamily"


class NotAChainRing(ChainLabError):
    code = "NotAChainRing"

    def __init__(self, message, witness=None, labels=None):
        details = {}
        if witness is not None:
            details["witness"] = list(witness)
        if labels is not None:
            details["witness_labels"] = list(labels)
        super().__init__(message, **details)
        self.witness = witness


class NotLocal(ChainLabError):
    code = "NotLocal"


class NotPrimeCharacteristic(ChainLabError):
    code = "NotPrimeCharacteristic"


class NotDivisibleAtLevel(ChainLabError):
    code = "NotDivisibleAtLevel"

    def __init__(self, level):
        super().__init__(f"b does not divide a at level {level}", level=level)
        self.level = level


class DeepestCoordinateZero(ChainLabError):
    code = "DeepestCoordinateZero"


class ChainMismatch(ChainLabError):
    code = "ChainMismatch"
