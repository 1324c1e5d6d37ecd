"""Exception types raised by qcomplement.

Every error carries a short invariant name (``.invariant``) so front ends
can report which check failed without parsing the message.
"""


class QuantumInputError(ValueError):
    """Base class for rejected inputs."""

    invariant = "InvalidInput"

    def __str__(self):
        return f"{self.invariant}: {super().__str__()}"


class NotHermitian(QuantumInputError):
    invariant = "NotHermitian"


class NotPositive(QuantumInputError):
    invariant = "NotPositive"

    def __init__(self, message, min_eigenvalue=None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class TraceNotOne(QuantumInputError):
    invariant = "TraceNotOne"


class DimensionMismatch(QuantumInputError):
    invariant = "DimensionMismatch"


class BadSubsystemIndex(QuantumInputError):
    invariant = "BadSubsystemIndex"


class NotUnitary(QuantumInputError):
    invariant = "NotUnitary"


class NotOrthonormal(QuantumInputError):
    invariant = "NotOrthonormal"


class NotPrime(QuantumInputError):
    invariant = "NotPrime"


class TooFewMeasurements(QuantumInputError):
    invariant = "TooFewMeasurements"


class TooManyMeasurements(QuantumInputError):
    invariant = "TooManyMeasurements"


class InstanceTooLarge(QuantumInputError):
    invariant = "InstanceTooLarge"


class EigenDecompositionFailure(ArithmeticError):
    invariant = "EigenDecompositionFailure"

    def __str__(self):
        return f"{self.invariant}: {super().__str__()}"


class MalformedFile(QuantumInputError):
    invariant = "MalformedFile"
