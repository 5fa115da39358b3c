"""Exception types shared across the package."""


class TowerMismatchError(ValueError):
    """Operands live in towers with no prefix relation; call ``unify`` first."""


class ResourceError(RuntimeError):
    """A configured resource cap (coefficient bits, vertex count) was exceeded."""

    def __init__(self, message: str, cap: int):
        super().__init__(f"{message} (cap = {cap})")
        self.cap = cap


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class CrosscheckError(AssertionError):
    """Two independent decision paths disagreed."""
