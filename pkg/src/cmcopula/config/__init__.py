from .exceptions import ConfigParseError
from .loader import (
    build_from_config,
    dump_model_config,
    load_candidate,
    load_model_config,
    load_pool,
    parse_config,
    read_config,
    tolerances_from_config,
)
from .schema import SCHEMA_VERSION, ModelConfig
from .settings import Tolerances

__all__ = [
    "ConfigParseError",
    "ModelConfig",
    "SCHEMA_VERSION",
    "Tolerances",
    "build_from_config",
    "dump_model_config",
    "load_candidate",
    "load_model_config",
    "load_pool",
    "parse_config",
    "read_config",
    "tolerances_from_config",
]
