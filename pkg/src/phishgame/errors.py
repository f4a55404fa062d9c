"""Exception types shared across the simulator."""


class PhishgameError(Exception):
    """Base class for simulator errors."""


class ConfigurationError(PhishgameError):
    """A scenario or episode configuration is invalid."""


class ProtocolOrderError(PhishgameError):
    """An engine action was attempted in a phase that forbids it."""


class IllegalStrategyError(PhishgameError):
    """An attacker strategy is not legal for the configured scenario."""


class DomainError(PhishgameError):
    """An analytic quantity is undefined for the given inputs."""
