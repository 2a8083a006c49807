"""Error types shared across the package."""


class ContractViolationError(ValueError):
    """An argument or state violated a documented interface contract."""


class ConfigError(ValueError):
    """Experiment configuration failed validation."""


class NonFiniteError(RuntimeError):
    """A loss or state became NaN/Inf; the run must abort with diagnostics."""


class EmptyBufferError(RuntimeError):
    """Sampling was requested from an empty replay buffer; skip the update."""
