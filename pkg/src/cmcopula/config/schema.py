from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, model_validator
from typing_extensions import Annotated

SCHEMA_VERSION = 1

Matrix = List[List[float]]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class TimesGrid(_Strict):
    """
    Explicit grid points starting at 0.
    """

    times: List[float] = Field(min_length=2)


class UniformGrid(_Strict):
    """
    Equidistant grid on [0, horizon].
    """

    horizon: PositiveFloat
    step: PositiveFloat


class FactorRule(_Strict):
    """
    Rate max(0, offset + scale * Z[factor]) read at the left grid point of every cell.
    """

    factor: int = 0
    offset: float = 0.0
    scale: float = 1.0


RateSpec = Union[float, List[float], FactorRule]


class MatricesGenerator(_Strict):
    """
    One row-major intensity matrix per cell.
    """

    kind: Literal["matrices"]
    matrices: List[Matrix]


class ConstantGenerator(_Strict):
    """
    One intensity matrix used on every cell.
    """

    kind: Literal["constant"]
    matrix: Matrix


ComponentGenerator = Annotated[Union[MatricesGenerator, ConstantGenerator], Field(discriminator="kind")]


class KronSumGenerator(_Strict):
    """
    Conditionally independent components with the given generators.
    """

    kind: Literal["kron-sum"]
    components: List[ComponentGenerator] = Field(min_length=1)
    marginal_initials: Optional[List[List[float]]] = None


class CommonJumpGenerator(_Strict):
    """
    Two absorbing components with a common jump at rate c.
    """

    kind: Literal["common-jump"]
    a: RateSpec
    b: RateSpec
    c: RateSpec


class WeakOnlyGenerator(_Strict):
    """
    Two absorbing components that are only weakly Markov consistent.
    """

    kind: Literal["weak-only"]
    a: RateSpec
    b: RateSpec
    c: RateSpec


class PerfectDependenceGenerator(_Strict):
    """
    `copies` identical components following `marginal`.
    """

    kind: Literal["perfect-dependence"]
    marginal: ComponentGenerator
    copies: PositiveInt
    marginal_initial: Optional[List[float]] = None


class JointJumpsGenerator(_Strict):
    """
    Four-state chain with simultaneous jumps between (0,0) and (1,1), in its original version or in the
    version whose off-diagonal states move.
    """

    kind: Literal["joint-jumps", "joint-jumps-version"]
    a: RateSpec
    b: RateSpec


GeneratorSpec = Annotated[
    Union[
        MatricesGenerator,
        ConstantGenerator,
        KronSumGenerator,
        CommonJumpGenerator,
        WeakOnlyGenerator,
        PerfectDependenceGenerator,
        JointJumpsGenerator,
    ],
    Field(discriminator="kind"),
]


class PointMass(_Strict):
    """
    Chain started in one full state.
    """

    state: List[int]


class ProductInitial(_Strict):
    """
    Independent initial coordinates with the given laws.
    """

    marginals: List[List[float]]


InitialSpec = Union[List[float], PointMass, ProductInitial]


class TolerancesSpec(_Strict):
    """
    Overrides of the default tolerances.
    """

    structural: Optional[PositiveFloat] = None
    transition: Optional[PositiveFloat] = None
    support: Optional[PositiveFloat] = None


class PoolSpec(_Strict):
    """
    Premium parameters of an insured pool.
    """

    discount_rate: float = Field(default=0.0, ge=0.0)
    benefit_rate: float = Field(default=1.0, ge=0.0)
    evaluation_time: float = Field(default=0.0, ge=0.0)


class ModelConfig(_Strict):
    """
    Versioned JSON description of a model along one scenario.
    """

    schema_version: Literal[1] = SCHEMA_VERSION
    components: Optional[List[PositiveInt]] = Field(default=None, min_length=1)
    grid: Union[TimesGrid, UniformGrid]
    factor: Optional[List[List[float]]] = None
    generator: GeneratorSpec
    initial: Optional[InitialSpec] = None
    tolerances: Optional[TolerancesSpec] = None
    pool: Optional[PoolSpec] = None

    @model_validator(mode="after")
    def _check_generator_fields(self) -> "ModelConfig":
        if isinstance(self.generator, (MatricesGenerator, ConstantGenerator)) and self.components is None:
            raise ValueError("`components` is required for generators given as matrices.")
        if self.initial is not None and isinstance(self.generator, WeakOnlyGenerator):
            raise ValueError("`initial` is not supported for weak-only generators, which start in (0,0).")
        if self.initial is not None and isinstance(self.generator, PerfectDependenceGenerator):
            raise ValueError("`initial` is not supported for perfect-dependence generators; use `marginal_initial`.")
        return self
