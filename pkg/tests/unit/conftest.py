# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, missing-return-type-doc

import pytest

import cmcopula
from cmcopula.chain import FactorScenario
from cmcopula.copulae import CopulaCandidate
from tests.unit.fixtures import unit_scenario, weak_only


@pytest.fixture(autouse=True)
def no_global_handlers(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(cmcopula, "event_handlers", [])


@pytest.fixture
def scenario() -> FactorScenario:
    return unit_scenario()


@pytest.fixture
def weak_only_candidate() -> CopulaCandidate:
    return weak_only(1.0)
