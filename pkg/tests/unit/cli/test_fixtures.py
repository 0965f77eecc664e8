# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, disallowed-name, missing-return-type-doc

import pytest

from cmcopula_cli.fixtures import (
    FIXTURES,
    STOCHASTIC_FIXTURES,
    FixtureContext,
    FixtureResult,
    fixture_names,
    resolve_fixture,
)
from cmcopula_cli.run import RunConfig, run


@pytest.mark.parametrize("name", sorted(set(FIXTURES) - STOCHASTIC_FIXTURES))
def test_deterministic_fixtures_pass(name):
    result = FIXTURES[name](FixtureContext())

    failed = [claim.claim for claim in result.claims if not claim.passed]
    assert result.claims
    assert not failed


def test_aliases_resolve_to_registered_fixtures():
    assert resolve_fixture("joint-jumps") == "example-3.6"
    assert resolve_fixture("joint-jumps-version") == "example-3.8"
    assert resolve_fixture("weak-only") == "weak-only"
    assert set(FIXTURES) <= set(fixture_names())
    with pytest.raises(KeyError):
        resolve_fixture("example-9")


def test_premium_fixture_needs_seed():
    with pytest.raises(ValueError):
        FIXTURES["premium"](FixtureContext())


@pytest.mark.slow
def test_premium_fixture_passes():
    result = FIXTURES["premium"](FixtureContext(seed=2024))

    assert result.passed, result.to_dict()


def test_fixture_result_collects_claims():
    result = FixtureResult("demo")
    result.add("holds", True)
    result.add("breaks", False, "measured 2")

    assert not result.passed
    assert result.to_dict()["claims"][1] == {"claim": "breaks", "passed": False, "detail": "measured 2"}


def test_run_reports_exit_codes(tmp_path):
    assert run(RunConfig(command="reproduce", out=tmp_path, fixtures=("kron-copula",))).exit_code == 0
    assert run(RunConfig(command="reproduce", out=tmp_path, fixtures=("premium",))).exit_code == 2
    assert run(RunConfig(command="solve", out=tmp_path)).exit_code == 2
