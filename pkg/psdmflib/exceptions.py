"""
Python-PSDMF tries its best to provide human-readable errors in all situations.
This is a list of all exceptions or warnings that Python-PSDMF can throw/raise.
"""


class BasePsdmfWarning(Warning):
    """
    Base warning class for PSDMF warnings.
    """


class DimensionWarning(BasePsdmfWarning):
    """
    Warning raised when requested dimensions can't be realised exactly and were adjusted.
    """


class StratificationWarning(BasePsdmfWarning):
    """
    Warning raised when labeled samples can't cover every class.
    """


class RegularizationWarning(BasePsdmfWarning):
    """
    Warning raised when a linear solve had to be ridge-regularised.
    """


class BasePsdmfError(Exception):
    """
    Base exception class for PSDMF exceptions.
    """


class NonFiniteError(BasePsdmfError, ValueError):
    """
    NaN or Inf value detected.
    """
    def __init__(self, where):
        self.where = where
        super().__init__(f'Non-finite value detected in {where}')


class ShapeMismatchError(BasePsdmfError, ValueError):
    """
    Operands have incompatible shapes.
    """
    def __init__(self, operation, *shapes):
        self.operation = operation
        self.shapes = shapes
        super().__init__(f"Incompatible shapes for {operation}: {' vs '.join(str(s) for s in shapes)}")


class EmptyMatrixError(BasePsdmfError, ValueError):
    """
    Matrix has no rows or no columns.
    """
    def __init__(self, where):
        super().__init__(f'{where} requires at least one row and one column')


class AsymmetricAffinityError(BasePsdmfError, ValueError):
    """
    Affinity matrix isn't symmetric.
    """
    def __init__(self):
        super().__init__('Affinity matrix must be symmetric with a zero diagonal and nonnegative entries')


class NeighborCountError(BasePsdmfError, ValueError):
    """
    Neighbor count is out of range for the number of samples.
    """
    def __init__(self, k, n_samples):
        super().__init__(f'Neighbor count k={k} must satisfy 1 <= k < N with N={n_samples} >= 2')


class RankError(BasePsdmfError, ValueError):
    """
    Requested factorization rank is out of range.
    """
    def __init__(self, k, rows, cols):
        super().__init__(f'Rank k={k} must satisfy 1 <= k <= min(rows, cols) for a {rows}x{cols} matrix')


class LayerSizeError(BasePsdmfError, ValueError):
    """
    Layer size exceeds the row count of the matrix being factorized.
    """
    def __init__(self, view, layer, size, rows):
        super().__init__(
            f'Layer {layer} of view {view} asks for {size} factors but the matrix being factorized has {rows} rows')


class PartitionError(BasePsdmfError, ValueError):
    """
    Total dimension and common factor ratio can't be partitioned into view-specific and common blocks.
    """
    def __init__(self, total_dim, ratio, views):
        super().__init__(
            f'K={total_dim} with lambda={ratio} over P={views} views leaves no room for both K_s and K_c')


class LabelError(BasePsdmfError, ValueError):
    """
    Class label is out of range or labels are missing.
    """
    def __init__(self, reason):
        super().__init__(reason)


class MetricInputError(BasePsdmfError, ValueError):
    """
    Metric received empty or mismatched label vectors.
    """
    def __init__(self, reason):
        super().__init__(reason)


class DatasetError(BasePsdmfError, ValueError):
    """
    Multi-view dataset is inconsistent.
    """
    def __init__(self, reason):
        super().__init__(reason)


class DatasetFormatError(BasePsdmfError, ValueError):
    """
    Dataset file can't be parsed.
    """
    def __init__(self, path, line, reason):
        self.path = path
        self.line = line
        super().__init__(f'{path}, line {line}: {reason}')


class ConfigError(BasePsdmfError, ValueError):
    """
    Configuration value is missing or invalid.
    """
    def __init__(self, key_path, reason):
        self.key_path = key_path
        super().__init__(f'Invalid configuration at "{key_path}": {reason}')


class InvariantError(BasePsdmfError, AssertionError):
    """
    Solver invariant violated while running in debug mode.
    """
    def __init__(self, reason):
        super().__init__(reason)


class RunnerClassError(BasePsdmfError):
    """
    Runner isn't a class or isn't a BaseRunner subclass.
    """
    def __init__(self):
        super().__init__("Runner isn't a class or isn't a BaseRunner subclass")


class NotFittedError(BasePsdmfError):
    """
    Model has to be fitted before predictions can be made.
    """
    def __init__(self):
        super().__init__('Model is not fitted yet, call fit() first')
