"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument violates an operation's precondition."""


class OutOfRangeError(InvalidArgumentError):
    """A sample lies outside the quantizer's open interval (-1, 1)."""


class DivergenceError(ArithmeticError):
    """A chaotic orbit escaped the divergence guard."""

    def __init__(self, map_name, step, value):
        self.map_name = map_name
        self.step = step
        self.value = value
        super().__init__(f"orbit of {map_name} diverged at step {step} (|x| = {abs(value):.3g})")


class ConfigError(ValueError):
    """Invalid experiment configuration or command line."""
