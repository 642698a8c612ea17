"""Exception types shared across the package."""


class CapacityError(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its configured cap."""

    def __init__(self, what, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: {size} items exceeds enumeration cap {cap}")


def check_capacity(what, size, cap):
    if size > cap:
        raise CapacityError(what, size, cap)
