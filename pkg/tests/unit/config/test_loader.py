# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, disallowed-name, missing-return-type-doc

import json

import numpy as np
import pytest

from cmcopula.chain import kron_sum
from cmcopula.config import (
    ConfigParseError,
    Tolerances,
    build_from_config,
    dump_model_config,
    load_candidate,
    load_model_config,
    load_pool,
    parse_config,
    read_config,
    tolerances_from_config,
)
from cmcopula.copulae import CopulaKind
from tests.unit.fixtures import weak_only

UNIFORM = {"horizon": 1.0, "step": 0.25}


def _write(tmp_path, payload, name="model.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_weak_only_config():
    config = parse_config({"grid": UNIFORM, "generator": {"kind": "weak-only", "a": 1.0, "b": 2.0, "c": 0.5}})

    candidate = build_from_config(config)

    assert candidate.kind == CopulaKind.WEAK_ONLY
    assert candidate.model.scenario.n_cells == 4
    np.testing.assert_allclose(candidate.generator[0, 0], [-3.5, 2.0, 1.0, 0.5])


def test_kron_sum_config():
    first, second = [[-1.0, 1.0], [2.0, -2.0]], [[-3.0, 3.0], [0.0, 0.0]]
    config = parse_config(
        {
            "grid": UNIFORM,
            "generator": {
                "kind": "kron-sum",
                "components": [{"kind": "constant", "matrix": first}, {"kind": "constant", "matrix": second}],
            },
        }
    )

    candidate = build_from_config(config)

    assert candidate.kind == CopulaKind.CONDITIONAL_INDEPENDENCE
    np.testing.assert_allclose(candidate.generator[2], kron_sum(first, second).entries)
    np.testing.assert_array_equal(candidate.model.initial.probs, [1.0, 0.0, 0.0, 0.0])


def test_common_jump_rate_driven_by_factor():
    config = parse_config(
        {
            "grid": {"times": [0.0, 0.5, 1.0]},
            "factor": [[1.0], [2.0], [3.0]],
            "generator": {"kind": "common-jump", "a": {"factor": 0, "offset": 0.5}, "b": 4.0, "c": 0.25},
        }
    )

    candidate = build_from_config(config)

    np.testing.assert_allclose(candidate.rates["a"].values, [1.5, 2.5])
    np.testing.assert_allclose(candidate.generator[1, 0], [-6.25, 3.75, 2.25, 0.25])


def test_joint_jumps_and_perfect_dependence_configs():
    version = build_from_config(
        parse_config({"grid": UNIFORM, "generator": {"kind": "joint-jumps-version", "a": 1.0, "b": 2.0}})
    )
    perfect = build_from_config(
        parse_config(
            {
                "grid": UNIFORM,
                "generator": {
                    "kind": "perfect-dependence",
                    "marginal": {"kind": "constant", "matrix": [[-1.0, 1.0], [2.0, -2.0]]},
                    "copies": 3,
                },
            }
        )
    )

    assert version.model.space.components == (2, 2)
    assert perfect.kind == CopulaKind.PERFECT_DEPENDENCE
    assert perfect.model.space.components == (2, 2, 2)


def test_matrices_config_with_point_mass():
    config = parse_config(
        {
            "components": [2],
            "grid": UNIFORM,
            "generator": {"kind": "constant", "matrix": [[-1.0, 1.0], [0.0, 0.0]]},
            "initial": {"state": [1]},
        }
    )

    candidate = build_from_config(config)

    assert candidate.kind == CopulaKind.CUSTOM
    np.testing.assert_array_equal(candidate.model.initial.probs, [0.0, 1.0])


@pytest.mark.parametrize(
    "payload, message",
    [
        ({"grid": UNIFORM, "generator": {"kind": "constant", "matrix": [[0.0]]}}, "components"),
        ({"grid": UNIFORM, "generator": {"kind": "weak-only", "a": 1, "b": 1, "c": 1}, "colour": "red"}, "colour"),
        ({"grid": UNIFORM, "generator": {"kind": "teleport"}}, "generator"),
        ({"schema_version": 2, "grid": UNIFORM, "generator": {"kind": "weak-only", "a": 1, "b": 1, "c": 1}}, "schema"),
        ({"grid": {"horizon": -1.0, "step": 0.5}, "generator": {"kind": "weak-only", "a": 1, "b": 1, "c": 1}}, "grid"),
        ({"components": [], "grid": UNIFORM, "generator": {"kind": "constant", "matrix": [[0.0]]}}, "components"),
        (
            {"grid": UNIFORM, "generator": {"kind": "weak-only", "a": 1, "b": 1, "c": 1}, "initial": {"state": [0, 1]}},
            "initial",
        ),
        (
            {
                "grid": UNIFORM,
                "generator": {
                    "kind": "perfect-dependence",
                    "marginal": {"kind": "constant", "matrix": [[0.0]]},
                    "copies": 2,
                },
                "initial": [1.0],
            },
            "marginal_initial",
        ),
    ],
)
def test_invalid_payloads_are_rejected(payload, message):
    with pytest.raises(ConfigParseError) as error:
        parse_config(payload)

    assert message in str(error.value)


def test_unreadable_files(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")

    with pytest.raises(ConfigParseError, match="not valid JSON"):
        read_config(broken)
    with pytest.raises(ConfigParseError, match="file not found"):
        read_config(tmp_path / "missing.json")


def test_invalid_model_becomes_parse_error(tmp_path):
    path = _write(tmp_path, {"grid": UNIFORM, "generator": {"kind": "common-jump", "a": 1.0, "b": 1.0, "c": 2.0}})

    with pytest.raises(ConfigParseError) as error:
        load_candidate(path)

    assert error.value.path == str(path)


def test_dumped_config_reads_back_into_same_model(tmp_path):
    model = weak_only(0.5).model

    path = _write(tmp_path, dump_model_config(model, Tolerances()))
    loaded = load_model_config(path)

    np.testing.assert_allclose(loaded.generator.stacked(), model.generator.stacked())
    np.testing.assert_allclose(loaded.scenario.grid, model.scenario.grid)
    np.testing.assert_array_equal(loaded.initial.probs, model.initial.probs)
    assert loaded.space.components == (2, 2)


def test_tolerances_from_config():
    config = parse_config(
        {
            "grid": UNIFORM,
            "generator": {"kind": "weak-only", "a": 1, "b": 1, "c": 1},
            "tolerances": {"transition": 1e-4},
        }
    )

    tolerances = tolerances_from_config(config)

    assert tolerances.transition == 1e-4
    assert tolerances.structural == Tolerances().structural
    assert tolerances.override(structural=1e-6, support=None).structural == 1e-6
    assert tolerances.override().support == Tolerances().support


def test_load_pool(tmp_path):
    generator = {"kind": "weak-only", "a": 1.0, "b": 1.0, "c": 1.0}
    priced = _write(tmp_path, {"grid": UNIFORM, "generator": generator, "pool": {"evaluation_time": 0.5}})
    bare = _write(tmp_path, {"grid": UNIFORM, "generator": generator}, "bare.json")
    off_grid = _write(
        tmp_path, {"grid": UNIFORM, "generator": generator, "pool": {"evaluation_time": 0.3}}, "off_grid.json"
    )

    pool = load_pool(priced)

    assert pool.evaluation_time == 0.5
    assert pool.n_individuals == 2
    with pytest.raises(ConfigParseError, match="pool"):
        load_pool(bare)
    with pytest.raises(ConfigParseError):
        load_pool(off_grid)
