"""Exception types raised across the package."""


class WeightlessError(Exception):
    """Base class for every error raised by this package."""


class EvenCharacteristic(WeightlessError, ValueError):
    pass


class NotPrime(WeightlessError, ValueError):
    pass


class FieldTooLarge(WeightlessError, ValueError):
    pass


class OddPrimePowerRequired(WeightlessError, ValueError):
    pass


class CharAtZero(WeightlessError, ValueError):
    pass


class AmbientMismatch(WeightlessError, ValueError):
    pass


class BudgetExceeded(WeightlessError, RuntimeError):
    pass


class ContainmentViolation(WeightlessError, AssertionError):
    """Restricted cuspidal space escaped the weightless space (internal bug)."""


class NoSeparatingPair(WeightlessError, RuntimeError):
    pass


class CharacterTableError(WeightlessError, AssertionError):
    pass


class ConfigError(WeightlessError, ValueError):
    pass
