import pytest
from hypothesis import given, strategies as st

from iitkit.indices import (
    TradeType,
    TradeTypeMethod,
    UndefinedIndexError,
    balassa_index,
    balassa_performance,
    classify_trade_type,
    grubel_lloyd_simple,
    grubel_lloyd_synthetic,
    vona_synthetic,
)

from conftest import make_flow, make_group

AER = TradeTypeMethod.abd_el_rahman()
VONA = TradeTypeMethod.vona()

positive = st.floats(0.0, 1e9, allow_nan=False)


class TestBalassa:
    def test_balanced(self):
        assert balassa_index(make_flow(100, 100)) == 0.0

    def test_unidirectional(self):
        assert balassa_index(make_flow(100, 0)) == 1.0

    def test_hand_value(self):
        assert balassa_index(make_flow(100, 5)) == pytest.approx(95 / 105, abs=1e-12)

    def test_performance_bounds(self):
        assert balassa_performance(make_flow(100, 0)) == 1.0
        assert balassa_performance(make_flow(0, 50)) == -1.0
        assert balassa_performance(make_flow(100, 100)) == 0.0

    def test_zero_trade_rejected(self):
        with pytest.raises(UndefinedIndexError):
            balassa_index(make_flow(0, 0))


class TestGrubelLloyd:
    def test_perfect_overlap(self):
        assert grubel_lloyd_simple(make_flow(100, 100)) == 1.0

    def test_one_way(self):
        assert grubel_lloyd_simple(make_flow(100, 0)) == 0.0

    def test_hand_value(self):
        assert grubel_lloyd_simple(make_flow(100, 5)) == pytest.approx(10 / 105, abs=1e-12)

    def test_synthetic_single_member_reduces_to_simple(self):
        flow = make_flow(100, 100)
        assert grubel_lloyd_synthetic(make_group([flow])) == grubel_lloyd_simple(flow)

    def test_synthetic_aggregate_balance_is_not_overlap(self):
        group = make_group([make_flow(100, 0, code="1"), make_flow(0, 100, code="2")])
        assert grubel_lloyd_synthetic(group) == 0.0

    def test_synthetic_hand_value(self):
        group = make_group([make_flow(100, 80, code="1"), make_flow(10, 50, code="2")])
        assert grubel_lloyd_synthetic(group) == pytest.approx(0.75, abs=1e-12)

    @given(positive, positive)
    def test_complement_of_balassa(self, x, m):
        if x + m == 0:
            return
        flow = make_flow(x, m)
        assert grubel_lloyd_simple(flow) + balassa_index(flow) == pytest.approx(1.0, abs=1e-12)

    @given(positive, positive)
    def test_closed_forms_agree(self, x, m):
        if x + m == 0:
            return
        flow = make_flow(x, m)
        alt = ((x + m) - abs(x - m)) / (x + m)
        assert grubel_lloyd_simple(flow) == pytest.approx(alt, abs=1e-12)


class TestTradeType:
    def test_aer_below_threshold(self):
        assert classify_trade_type(make_flow(100, 5), AER) is TradeType.ONE_WAY

    def test_vona_counts_any_bidirectional(self):
        assert classify_trade_type(make_flow(100, 5), VONA) is TradeType.TWO_WAY

    def test_aer_boundary_inclusive(self):
        assert classify_trade_type(make_flow(100, 10), AER) is TradeType.TWO_WAY

    def test_unidirectional_is_one_way_for_both(self):
        flow = make_flow(100, 0)
        assert classify_trade_type(flow, AER) is TradeType.ONE_WAY
        assert classify_trade_type(flow, VONA) is TradeType.ONE_WAY

    @given(
        st.floats(0.001, 1e6, allow_nan=False),
        st.floats(0.0, 1e6, allow_nan=False),
        st.floats(1e-6, 1e6, allow_nan=False),
    )
    def test_scale_invariance(self, x, m, c):
        flow, scaled = make_flow(x, m), make_flow(x * c, m * c)
        for method in (AER, VONA):
            assert classify_trade_type(flow, method) is classify_trade_type(scaled, method)

    def test_threshold_validation(self):
        with pytest.raises(ValueError):
            TradeTypeMethod.abd_el_rahman(0.0)
        with pytest.raises(ValueError):
            TradeTypeMethod.abd_el_rahman(1.0)


class TestVonaSynthetic:
    def test_all_two_way(self):
        group = make_group([make_flow(10, 9, code="1"), make_flow(5, 5, code="2")])
        assert vona_synthetic(group, AER) == 1.0

    def test_hand_value_aer(self):
        group = make_group([make_flow(100, 5, code="1"), make_flow(50, 50, code="2")])
        assert vona_synthetic(group, AER) == pytest.approx(100 / 205, abs=1e-12)

    def test_hand_value_vona(self):
        group = make_group([make_flow(100, 5, code="1"), make_flow(50, 50, code="2")])
        assert vona_synthetic(group, VONA) == 1.0

    @given(
        st.lists(st.tuples(positive, positive), min_size=1, max_size=12),
        st.sampled_from([0.05, 0.10, 0.20]),
    )
    def test_aer_never_exceeds_vona(self, pairs, threshold):
        flows = [make_flow(x, m, code=str(i)) for i, (x, m) in enumerate(pairs)]
        flows = [f for f in flows if f.total_trade > 0]
        if not flows:
            return
        group = make_group(flows)
        aer = vona_synthetic(group, TradeTypeMethod.abd_el_rahman(threshold))
        assert aer <= vona_synthetic(group, VONA)
        assert 0.0 <= aer <= 1.0
