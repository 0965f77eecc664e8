# pylint: disable=missing-docstring, missing-return-doc, missing-param-doc, disallowed-name, missing-return-type-doc

import pytest

from cmcopula.audit import BufferEventHandler, EventTracker
from cmcopula.premium import PoolModel, PremiumEntry, PremiumQuote, price, price_closed_form
from tests.unit.fixtures import weak_only


@pytest.fixture
def pool() -> PoolModel:
    return PoolModel(weak_only(1.0), evaluation_time=0.5)


def test_quote_holds_both_filtrations(pool):
    quote = price(pool, 2000, seed=5)

    assert quote.method == "monte-carlo"
    assert quote.n_paths == 2000 and quote.seed == 5
    assert {entry.filtration for entry in quote.entries} == {"individual", "pool"}
    assert sum(entry.count for entry in quote.entries if entry.component == 0 and entry.filtration == "pool") == 2000
    assert quote.individual(0, 1).premium == pytest.approx(0.5)


def test_same_seed_gives_same_quote(pool):
    assert price(pool, 500, seed=3).to_dict() == price(pool, 500, seed=3).to_dict()


def test_sparse_strata_are_excluded(pool):
    quote = price(pool, 50, seed=1, min_stratum=20)

    assert quote.excluded
    excluded = {(k, filtration, stratum) for k, filtration, stratum in quote.excluded}
    for entry in quote.entries:
        assert entry.count >= 20
        assert (entry.component, entry.filtration, entry.stratum) not in excluded


def test_quote_renders_as_table_and_frame(pool):
    quote = price(pool, 1000, seed=2)

    frame = quote.to_frame()
    assert list(frame.columns) == ["individual", "filtration", "stratum", "premium", "standard_error", "count"]
    assert set(frame["individual"]) == {1, 2}
    table = quote.table()
    assert "filtration" in table
    assert "(0,1)" in table
    assert set(quote.to_dict()["gaps"]) == {"0", "1"}


def test_pricing_is_reported(pool):
    handler = BufferEventHandler()

    price(pool, 200, seed=4, event_tracker=EventTracker.initialize_with_handlers([handler]))

    output = handler.buffer.getvalue()
    assert "price weak-only" in output
    assert "simulate paths=200" in output


@pytest.mark.slow
def test_monte_carlo_agrees_with_closed_form(pool):
    estimated = price(pool, 100_000, seed=2024)
    exact = price_closed_form(pool)

    for entry in estimated.entries:
        reference = exact.find(entry.component, entry.filtration, entry.stratum)
        if entry.standard_error == 0.0:
            assert entry.premium == pytest.approx(reference.premium, abs=1e-9)
        else:
            assert abs(entry.premium - reference.premium) <= 4.0 * entry.standard_error


@pytest.mark.slow
def test_monte_carlo_separates_pool_strata(pool):
    quote = price(pool, 100_000, seed=7)

    low, middle, high = quote.pool(0, (0, 1)), quote.individual(0, 0), quote.pool(0, (0, 0))
    assert low.premium + 4 * low.standard_error < middle.premium - 4 * middle.standard_error
    assert middle.premium + 4 * middle.standard_error < high.premium - 4 * high.standard_error


def test_gap_z_scores_combine_both_standard_errors():
    quote = PremiumQuote(
        method="monte-carlo",
        evaluation_time=0.5,
        entries=[
            PremiumEntry(0, "individual", (0,), 0.30, 0.03, 100),
            PremiumEntry(0, "individual", (1,), 0.50, 0.0, 100),
            PremiumEntry(0, "pool", (0, 0), 0.35, 0.04, 60),
            PremiumEntry(0, "pool", (1, 1), 0.50, 0.0, 50),
            PremiumEntry(0, "pool", (1, 0), 0.40, 0.0, 50),
        ],
    )

    scores = quote.gap_z_scores(0)

    assert scores[(0, 0)] == pytest.approx(1.0)
    assert scores[(1, 1)] == 0.0
    assert scores[(1, 0)] == float("inf")


@pytest.mark.slow
def test_simulated_gaps_vanish_without_joint_jumps():
    independent = PoolModel(weak_only(0.0), evaluation_time=0.5)

    quote = price(independent, 100_000, seed=2024)
    scores = quote.gap_z_scores(0)

    assert set(scores) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert max(abs(score) for score in scores.values()) <= 4.0
