"""Exception types raised across the package."""


class McKayError(Exception):
    pass


class NotRational(McKayError, ValueError):
    """A value expected to be rational has a nonzero irrational part."""


class InvalidSpec(McKayError, ValueError):
    """Group parameters violate a catalog constraint, or the group string is malformed."""


class SpecMismatch(McKayError, ValueError):
    pass


class OrderCapExceeded(McKayError):
    pass


class Unsupported(McKayError):
    pass


class InvalidId(McKayError, ValueError):
    pass


class NotACharacter(McKayError, ValueError):
    pass


class InvalidIndex(McKayError, ValueError):
    pass


class NotABijection(McKayError, ValueError):
    pass


class SearchCapExceeded(McKayError):
    pass


class IndexOutOfRange(McKayError, IndexError):
    pass


class InvalidM(McKayError, ValueError):
    pass


class MapNotBijective(McKayError, ValueError):
    pass


class NotBijective(McKayError, ValueError):
    pass


class NotATree(McKayError, ValueError):
    """Input graph has a cycle, is disconnected, or the signing is not a proper 2-colouring."""
