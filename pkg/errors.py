# Error hierarchy for the planner. Every error a caller can act on derives
# from CdtError; the CLI maps InputError to exit code 1 and InfeasibleError
# to exit code 2.


class CdtError(Exception):
    pass


class InputError(CdtError):
    """Malformed input: bad map, bad point, bad encoding, bad task"""


class InfeasibleError(CdtError):
    """Well-formed query with no answer under the tether constraint"""


# geom
class EndpointMismatch(InputError):
    pass


# dissection
class InvalidEnvironment(InputError):
    pass


class PointInObstacle(InputError):
    pass


class PointOutsideBoundary(InputError):
    pass


class NotAdjacent(InputError):
    pass


class UnknownCell(InputError):
    pass


# encoding
class JunctionMismatch(InputError):
    pass


class PathLeavesFreeSpace(InputError):
    pass


class InvalidEncoding(InputError):
    pass


# tcs
class AnchorInObstacle(InputError):
    pass


class GoalInObstacle(InputError):
    pass


class TooManyEncodings(InputError):
    pass


class InvalidTether(InputError):
    pass


# oracle
class ResolutionTooCoarse(InputError):
    pass


# cli
class InvalidTask(InputError):
    pass


# planners
class NoFeasiblePath(InfeasibleError):
    pass


class InfeasibleStartConfig(InfeasibleError):
    pass


class NoFeasibleTour(InfeasibleError):
    pass


class NoPath(InfeasibleError):
    pass
