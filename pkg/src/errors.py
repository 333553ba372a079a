"""
异常体系
输入错误退出码 2，内部不变量破坏退出码 3
"""


class PlanarError(Exception):
    """所有库异常的基类"""
    exit_code = 1


class InputError(PlanarError, ValueError):
    """输入不合法（图、参数、权重等）"""
    exit_code = 2


class InvariantBreach(PlanarError, RuntimeError):
    """内部不变量被破坏，通常意味着需要换种子重试"""
    exit_code = 3


# ---- 输入类 ----
class MissingReverse(InputError):
    pass


class RotationMismatch(InputError):
    pass


class NotPlanarEmbedding(InputError):
    pass


class DisconnectedGraph(InputError):
    pass


class Disconnected(InputError):
    """直径为无穷（存在不可达点对）"""
    pass


class BadParams(InputError):
    pass


class TargetTooSmall(InputError):
    pass


class SiteNotOnHole(InputError):
    pass


class WeightsMissing(InputError):
    pass


class SiteNotPreprocessed(InputError):
    pass


class NegativeArc(InputError):
    pass


class NegativeCycle(InputError):
    pass


class EmptyRange(InputError):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class TreeNotSpanning(InputError):
    pass


class EmptyBisector(InputError):
    pass


class NotOnVersion(InputError):
    pass


# ---- 不变量类 ----
class TieDetected(InvariantBreach):
    pass


class NonContiguousUpdate(InvariantBreach):
    pass


class NoTightEndpoint(InvariantBreach):
    pass


class TraceStuck(InvariantBreach):
    pass


class CountMismatch(InvariantBreach):
    pass


class AssertionBreach(InvariantBreach):
    pass
