import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
from pydantic import ValidationError

from cmcopula._types import PathLike
from cmcopula.chain import CmcModel, FactorScenario, GeneratorPath, InitialLaw, ProductStateSpace, RatePath
from cmcopula.chain.rates import RateLike
from cmcopula.config.exceptions import ConfigParseError
from cmcopula.config.schema import (
    SCHEMA_VERSION,
    CommonJumpGenerator,
    ComponentGenerator,
    ConstantGenerator,
    FactorRule,
    JointJumpsGenerator,
    KronSumGenerator,
    MatricesGenerator,
    ModelConfig,
    PerfectDependenceGenerator,
    PointMass,
    ProductInitial,
    RateSpec,
    TimesGrid,
    WeakOnlyGenerator,
)
from cmcopula.config.settings import Tolerances
from cmcopula.copulae import (
    CopulaCandidate,
    CopulaKind,
    InitialProvenance,
    MarginalSpec,
    MarginalTarget,
    build_common_jump,
    build_conditional_independence,
    build_perfect_dependence,
    build_weak_only,
    joint_jumps,
    joint_jumps_version,
)
from cmcopula.exceptions import CmcError
from cmcopula.premium import PoolModel

logger = logging.getLogger(__name__)


def read_config(path: PathLike) -> ModelConfig:
    """
    Reads and validates a model config file.

    Args:
        path: JSON file.

    Returns:
        The parsed config.

    Raises:
        ConfigParseError: If the file is missing, is not JSON or does not match the schema.
    """
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as error:
        raise ConfigParseError(path, "file not found") from error
    except json.JSONDecodeError as error:
        raise ConfigParseError(path, f"not valid JSON ({error.msg} at line {error.lineno})") from error
    return parse_config(payload, path)


def parse_config(payload: Dict[str, Any], path: PathLike = "<memory>") -> ModelConfig:
    """
    Validates an already decoded config.

    Args:
        payload: Decoded JSON object.
        path: Where it came from, for messages.

    Returns:
        The parsed config.

    Raises:
        ConfigParseError: If the payload does not match the schema.
    """
    try:
        return ModelConfig.model_validate(payload)
    except ValidationError as error:
        first = error.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise ConfigParseError(path, f"{location}: {first['msg']}") from error


def _scenario(config: ModelConfig) -> FactorScenario:
    if isinstance(config.grid, TimesGrid):
        return FactorScenario.from_times(config.grid.times, config.factor)
    return FactorScenario.uniform(config.grid.horizon, config.grid.step, config.factor)


def _rate(spec: RateSpec, scenario: FactorScenario) -> RateLike:
    if isinstance(spec, FactorRule):
        return RatePath.from_factor(scenario, spec.factor, spec.offset, spec.scale)
    return spec


def _component_path(spec: ComponentGenerator, scenario: FactorScenario, tol: float) -> GeneratorPath:
    if isinstance(spec, ConstantGenerator):
        return GeneratorPath.constant(scenario, spec.matrix, tol)
    return GeneratorPath.from_matrices(scenario, spec.matrices, tol)


def _initial(config: ModelConfig, space: ProductStateSpace) -> Optional[InitialLaw]:
    spec = config.initial
    if spec is None:
        return None
    if isinstance(spec, PointMass):
        return InitialLaw.point_mass(space, spec.state)
    if isinstance(spec, ProductInitial):
        return InitialLaw.product(spec.marginals)
    return InitialLaw(np.asarray(spec, dtype=float))


def _first_state(size: int) -> np.ndarray:
    probs = np.zeros(size)
    probs[0] = 1.0
    return probs


def build_from_config(config: ModelConfig) -> CopulaCandidate:
    """
    Builds the candidate a config describes; models given as bare matrices become custom candidates.

    Args:
        config: The parsed config.

    Returns:
        The candidate.
    """
    tolerances = tolerances_from_config(config)
    tol = tolerances.structural
    scenario = _scenario(config)
    generator = config.generator

    if isinstance(generator, (MatricesGenerator, ConstantGenerator)):
        space = ProductStateSpace(tuple(config.components or ()))
        path = _component_path(generator, scenario, tol)
        initial = _initial(config, space) or InitialLaw.point_mass(space, (0,) * space.n_components)
        return CopulaCandidate(CmcModel(space, path, initial), CopulaKind.CUSTOM, InitialProvenance.SUPPLIED)

    if isinstance(generator, KronSumGenerator):
        paths = [_component_path(component, scenario, tol) for component in generator.components]
        initials = generator.marginal_initials or [_first_state(path.dimension) for path in paths]
        spec = MarginalSpec(tuple(MarginalTarget(path, initial) for path, initial in zip(paths, initials)))
        initial = _initial(config, spec.space)
        return build_conditional_independence(spec, None if initial is None else initial, tol)

    if isinstance(generator, CommonJumpGenerator):
        rates = (_rate(generator.a, scenario), _rate(generator.b, scenario), _rate(generator.c, scenario))
        initial = _initial(config, ProductStateSpace((2, 2)))
        return build_common_jump(scenario, *rates, initial=initial, tol=tol)

    if isinstance(generator, WeakOnlyGenerator):
        rates = (_rate(generator.a, scenario), _rate(generator.b, scenario), _rate(generator.c, scenario))
        return build_weak_only(scenario, *rates, tol=tol)

    if isinstance(generator, PerfectDependenceGenerator):
        path = _component_path(generator.marginal, scenario, tol)
        initial = generator.marginal_initial or _first_state(path.dimension)
        spec = MarginalSpec.replicate(MarginalTarget(path, initial), generator.copies)
        return build_perfect_dependence(spec, tol)

    assert isinstance(generator, JointJumpsGenerator)
    build = joint_jumps if generator.kind == "joint-jumps" else joint_jumps_version
    initial = _initial(config, ProductStateSpace((2, 2)))
    return build(scenario, _rate(generator.a, scenario), _rate(generator.b, scenario), initial)


def tolerances_from_config(config: ModelConfig, base: Optional[Tolerances] = None) -> Tolerances:
    """
    Default tolerances updated with the config's overrides.

    Args:
        config: The parsed config.
        base: Tolerances to start from.

    Returns:
        The effective tolerances.
    """
    base = base or Tolerances()
    if config.tolerances is None:
        return base
    return base.override(**config.tolerances.model_dump())


def load_candidate(path: PathLike) -> CopulaCandidate:
    """
    Reads a config file and builds its candidate.

    Args:
        path: JSON file.

    Returns:
        The candidate.

    Raises:
        ConfigParseError: If the file is invalid or describes an invalid model.
    """
    config = read_config(path)
    try:
        candidate = build_from_config(config)
    except CmcError as error:
        raise ConfigParseError(path, str(error)) from error
    logger.debug("Loaded %s candidate on %d states from %s", candidate.kind.value, candidate.model.dimension, path)
    return candidate


def load_model_config(path: PathLike) -> CmcModel:
    """
    Reads a config file and builds its model.

    Args:
        path: JSON file.

    Returns:
        The model.

    Raises:
        ConfigParseError: If the file is invalid or describes an invalid model.
    """
    return load_candidate(path).model


def load_pool(path: PathLike) -> PoolModel:
    """
    Reads a config file with a `pool` section.

    Args:
        path: JSON file.

    Returns:
        The pool.

    Raises:
        ConfigParseError: If the file is invalid or has no pool section.
    """
    config = read_config(path)
    if config.pool is None:
        raise ConfigParseError(path, "missing `pool` section")
    candidate = load_candidate(path)
    try:
        return PoolModel(candidate, **config.pool.model_dump())
    except (CmcError, ValueError) as error:
        raise ConfigParseError(path, str(error)) from error


def dump_model_config(model: CmcModel, tolerances: Optional[Tolerances] = None) -> Dict[str, Any]:
    """
    Canonical config of a model: per-cell matrices on an explicit grid.

    Args:
        model: The model.
        tolerances: Tolerances to record; omitted by default.

    Returns:
        JSON-ready dictionary that `parse_config` reads back into the same model.
    """
    payload: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "components": list(model.space.components),
        "grid": {"times": model.scenario.grid.tolist()},
        "factor": model.scenario.values.tolist(),
        "generator": {"kind": "matrices", "matrices": model.generator.stacked().tolist()},
        "initial": model.initial.probs.tolist(),
    }
    if tolerances is not None:
        payload["tolerances"] = {
            "structural": tolerances.structural,
            "transition": tolerances.transition,
            "support": tolerances.support,
        }
    return payload
