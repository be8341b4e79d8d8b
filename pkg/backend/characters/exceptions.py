from django.core.exceptions import ValidationError


class CubiclError(ValidationError):
    """Domain error; the validation code is the class name."""

    def __init__(self, message, params=None):
        super().__init__(message, code=type(self).__name__, params=params)

    @property
    def name(self):
        return type(self).__name__

    def __str__(self):
        return f'{self.name}: {" ".join(self.messages)}'


class NotPrimePower(CubiclError):
    pass


class NotOdd(CubiclError):
    pass


class NotNonKummer(CubiclError):
    pass


class LevelMismatch(CubiclError):
    pass


class NotCubeRoot(CubiclError):
    pass


class NotPrime(CubiclError):
    pass


class NotSquarefree(CubiclError):
    pass


class HasBaseDivisor(CubiclError):
    pass


class NotPrimitive(CubiclError):
    pass


class NonzeroRemainder(CubiclError):
    pass


class DegreeZero(CubiclError):
    pass


class OddGenus(CubiclError):
    pass


class SeriesDiverges(CubiclError):
    pass


class OutOfRegion(CubiclError):
    pass


class PoleAt(CubiclError):
    pass


class TailTooLarge(CubiclError):
    pass


class BadLiteral(CubiclError):
    pass


class TooFewDegrees(CubiclError):
    pass
