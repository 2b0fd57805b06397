import math
import enum
import warnings
import dataclasses

from .. import exceptions, seminmf, utilities
from ..datasets import NormalizeMode


class VRule(enum.Enum):
    majorized = 'majorized'
    printed = 'printed'
    default = 'majorized'


@dataclasses.dataclass
class PsdmfConfig:
    mu: float = 0.1
    beta: float = 10.0
    gamma: float = 10.0
    lambda_ratio: float = 0.5
    total_dim: int = 100
    layer_sizes: tuple = (100, 50)
    knn_k: int = 5
    label_fraction: float = 0.1
    max_iter: int = 200
    tol: float = 1e-5
    seed: int = 0
    normalize: str = NormalizeMode.default.value
    v_rule: str = VRule.default.value
    pretrain_max_iter: int = 100
    pretrain_tol: float = 1e-6
    init: str = seminmf.InitMethod.kmeans.value
    debug: bool = False

    def __post_init__(self):
        for name in ('mu', 'beta', 'gamma', 'lambda_ratio', 'label_fraction', 'tol', 'pretrain_tol'):
            setattr(self, name, self._coerce(name, float))
        for name in ('total_dim', 'knn_k', 'max_iter', 'seed', 'pretrain_max_iter'):
            setattr(self, name, self._coerce(name, int))

        self.layer_sizes = tuple(utilities.parse_list(self.layer_sizes, int, 'psdmf.layer_sizes'))
        self.debug = utilities.to_bool(self.debug, 'psdmf.debug')

        for name in ('mu', 'beta', 'gamma'):
            if getattr(self, name) < 0:
                raise exceptions.ConfigError(f'psdmf.{name}', 'must be nonnegative')

        if not 0 < self.lambda_ratio < 1:
            raise exceptions.ConfigError('psdmf.lambda_ratio', 'must lie in (0, 1)')
        if not 0 < self.label_fraction <= 1:
            raise exceptions.ConfigError('psdmf.label_fraction', 'must lie in (0, 1]')
        if not self.layer_sizes or min(self.layer_sizes) < 1:
            raise exceptions.ConfigError('psdmf.layer_sizes', 'needs at least one strictly positive size')
        if self.total_dim < 2 or self.knn_k < 1 or self.max_iter < 1 or self.tol < 0:
            raise exceptions.ConfigError('psdmf', 'total_dim >= 2, knn_k >= 1, max_iter >= 1 and tol >= 0 required')

        for name, enum_class in (('normalize', NormalizeMode), ('v_rule', VRule), ('init', seminmf.InitMethod)):
            try:
                setattr(self, name, enum_class(getattr(self, name)).value)
            except ValueError:
                raise exceptions.ConfigError(f'psdmf.{name}', f'unknown value "{getattr(self, name)}"')

    def _coerce(self, name, cast):
        try:
            return cast(getattr(self, name))
        except (TypeError, ValueError):
            raise exceptions.ConfigError(f'psdmf.{name}', f'"{getattr(self, name)}" is not a {cast.__name__}')

    def partition(self, views):
        """
        Returns (K_s, K_c) such that K_c + P·K_s = K and K_c / (K_s + K_c) is as close to λ as integers allow.

        :param int views: (required). Number of views P.
        """
        exact = self.total_dim * (1 - self.lambda_ratio) / (views * (1 - self.lambda_ratio) + self.lambda_ratio)
        specific = math.floor(exact + 1e-9)
        common = self.total_dim - views * specific

        if specific < 1 or common < 1:
            raise exceptions.PartitionError(self.total_dim, self.lambda_ratio, views)

        if abs(exact - specific) > 1e-9:
            warnings.warn(f'K={self.total_dim} can not be split exactly with lambda={self.lambda_ratio} over {views} '
                          f'views, using K_s={specific}, K_c={common} (lambda={common / (specific + common):.4f})',
                          exceptions.DimensionWarning)

        return specific, common

    def final_layer_sizes(self, views):
        """
        Returns the layer sizes with the last one equal to K_s + K_c.

        :param int views: (required). Number of views P.
        """
        specific, common = self.partition(views)
        sizes = list(self.layer_sizes)

        if sizes[-1] != specific + common:
            warnings.warn(f'Last layer size {sizes[-1]} replaced by K_s + K_c = {specific + common}',
                          exceptions.DimensionWarning)
            sizes[-1] = specific + common

        return sizes

    def seminmf_options(self):
        return seminmf.SemiNmfOptions(max_iter=self.pretrain_max_iter, tol=self.pretrain_tol,
                                      seed=self.seed, init=self.init)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def to_dict(self):
        result = dataclasses.asdict(self)
        result['layer_sizes'] = list(self.layer_sizes)
        return result
