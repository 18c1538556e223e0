"""Metric configuration and validation."""

from fractions import Fraction

import pytest

from mqmkit.errors import UnknownSeverityError
from mqmkit.model import (
    ErrorTypeNode,
    MetricSpec,
    RangeThresholds,
    SeverityLevel,
    SeveritySystem,
    default_core_metric,
    default_severity_system,
    load_metric,
    metric_from_doc,
    metric_to_doc,
    validate_metric,
)


def make_spec(**overrides) -> MetricSpec:
    base = dict(
        id="m1",
        typology=(ErrorTypeNode(id="accuracy", name="Accuracy"),),
        severity=default_severity_system(),
        pt=Fraction(85),
        app=Fraction(20),
    )
    base.update(overrides)
    return MetricSpec(**base)


class TestValidateMetric:
    def test_default_paperlike_spec_is_clean(self):
        report = validate_metric(make_spec())
        assert report.ok
        assert report.violations == ()

    def test_pt_equal_to_msv_flags_dpi(self):
        report = validate_metric(make_spec(pt=Fraction(100)))
        assert not report.ok
        assert any("DPI must be positive" in v.message for v in report.violations)

    def test_out_of_order_multipliers_flagged(self):
        severity = SeveritySystem(
            levels=(
                SeverityLevel("Minor", Fraction(1)),
                SeverityLevel("Major", Fraction(5)),
                SeverityLevel("Odd", Fraction(0)),
                SeverityLevel("Critical", Fraction(25)),
            )
        )
        report = validate_metric(make_spec(severity=severity))
        assert any("non-decreasing" in v.message for v in report.violations)

    def test_reports_every_violation_not_just_first(self):
        severity = SeveritySystem(levels=(SeverityLevel("Only", Fraction(1)),))
        report = validate_metric(
            make_spec(severity=severity, pt=Fraction(100), app=Fraction(0))
        )
        paths = {v.path for v in report.violations}
        assert "severity.levels" in paths
        assert "pt" in paths
        assert "app" in paths

    def test_negative_weight_flagged(self):
        node = ErrorTypeNode(id="style", name="Style", weight=Fraction(-1))
        report = validate_metric(make_spec(typology=(node,)))
        assert any("weight" in v.path for v in report.violations)

    def test_duplicate_node_ids_flagged(self):
        nodes = (
            ErrorTypeNode(id="accuracy", name="Accuracy"),
            ErrorTypeNode(id="accuracy", name="Again"),
        )
        report = validate_metric(make_spec(typology=nodes))
        assert any("duplicate" in v.message for v in report.violations)

    def test_missing_parent_flagged(self):
        nodes = (ErrorTypeNode(id="child", name="Child", parent_id="ghost"),)
        report = validate_metric(make_spec(typology=nodes))
        assert any("parent" in v.message for v in report.violations)

    def test_parent_cycle_flagged(self):
        nodes = (
            ErrorTypeNode(id="a", name="A", parent_id="b"),
            ErrorTypeNode(id="b", name="B", parent_id="a"),
        )
        report = validate_metric(make_spec(typology=nodes))
        assert any("cycle" in v.message for v in report.violations)

    def test_deep_legal_hierarchy_is_clean(self):
        nodes = (
            ErrorTypeNode(id="accuracy", name="Accuracy"),
            ErrorTypeNode(id="mistranslation", name="Mistranslation", parent_id="accuracy"),
            ErrorTypeNode(id="false_friend", name="False friend", parent_id="mistranslation"),
        )
        assert validate_metric(make_spec(typology=nodes)).ok

    def test_threshold_ordering_flagged(self):
        report = validate_metric(
            make_spec(range_thresholds=RangeThresholds(sqc_max_words=5000, linear_max_words=250))
        )
        assert any("linear_max_words" in v.path for v in report.violations)

    def test_validation_is_pure(self):
        spec = make_spec(pt=Fraction(100))
        assert validate_metric(spec) == validate_metric(spec)


class TestDefaultCoreMetric:
    def test_seven_top_level_dimensions(self):
        spec = default_core_metric()
        top_level = [node for node in spec.typology if node.parent_id is None]
        assert len(top_level) == 7

    def test_all_weights_one(self):
        spec = default_core_metric()
        assert all(node.weight == 1 for node in spec.typology)

    def test_default_multipliers(self):
        spec = default_core_metric()
        assert [level.multiplier for level in spec.severity.levels] == [0, 1, 5, 25]

    def test_defaults_validate_clean(self):
        assert validate_metric(default_core_metric()).ok

    def test_default_parameters(self):
        spec = default_core_metric()
        assert spec.msv == 100
        assert spec.rwc == 1000
        assert spec.pt == 85
        assert spec.app == 20
        assert spec.range_thresholds == RangeThresholds(250, 5000)
        assert spec.rounding_decimals == 2

    def test_critical_auto_fail_defaults_off(self):
        assert default_core_metric().severity.critical_auto_fail is False


class TestSeveritySystem:
    def test_multiplier_lookup(self):
        severity = default_severity_system()
        assert severity.multiplier_for("Major") == 5

    def test_unknown_severity_raises(self):
        with pytest.raises(UnknownSeverityError, match="Blocker"):
            default_severity_system().multiplier_for("Blocker")

    def test_critical_is_last_level(self):
        assert default_severity_system().critical_name == "Critical"


class TestSerialization:
    def test_round_trip_preserves_spec(self):
        spec = default_core_metric()
        assert metric_from_doc(metric_to_doc(spec)) == spec

    def test_decimal_values_read_exactly(self):
        doc = metric_to_doc(make_spec(app=Fraction("15.6")))
        spec = metric_from_doc(doc)
        assert spec.app == Fraction(78, 5)

    def test_unknown_field_rejected(self):
        doc = metric_to_doc(make_spec())
        doc["surprise"] = 1
        with pytest.raises(Exception, match="unknown metric field"):
            metric_from_doc(doc)

    def test_load_metric_rejects_bad_json(self):
        with pytest.raises(Exception, match="not valid JSON"):
            load_metric("{nope")

    def test_dpi_property(self):
        assert make_spec().dpi == 15
