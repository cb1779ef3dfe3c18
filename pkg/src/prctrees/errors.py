"""Exception types shared across the package."""


class InputError(ValueError):
    """User-supplied data violates an operation's contract (bad shapes, values, files)."""


class ConfigError(ValueError):
    """A configuration value is out of range or inconsistent with the data."""
