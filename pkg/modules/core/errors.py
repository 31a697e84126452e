"""
Lab Errors

Exception hierarchy shared by the numerical modules.
"""


class LabError(Exception):
    """Base exception for pySpecLab computations"""
    pass


class DomainError(LabError):
    """Raised when an argument lies outside the domain of an operation"""
    pass


class ScopeError(LabError):
    """Raised when an input is valid mathematically but not supported here"""
    pass


class PreconditionError(LabError):
    """Raised when a documented precondition does not hold"""
    pass


class GridError(LabError):
    """Raised for invalid grids, step sizes or radius sequences"""
    pass


class RegularValueError(LabError):
    """Raised when a level is not a regular value of the smoothed function"""
    pass


class FiniteEscapeError(LabError):
    """Raised when a Riccati solution blows up before the end of the grid"""

    def __init__(self, message, escape_time):
        super().__init__(message)
        self.escape_time = escape_time
