"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """Raised when a function receives an argument outside its domain."""


class ConfigError(ValueError):
    """Raised when a simulation configuration fails validation.

    ``fields`` maps each offending field name to a short diagnostic.
    """

    def __init__(self, fields):
        self.fields = dict(fields)
        detail = "; ".join(f"{name}: {msg}" for name, msg in self.fields.items())
        super().__init__(f"invalid configuration ({detail})")
