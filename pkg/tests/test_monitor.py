"""Hierarchy updates, algedonic signalling, escalation, reports."""

import dataclasses

import pytest

from causalwatch import (
    AdvisoryReport,
    Evidence,
    EventRecord,
    Hierarchy,
    LadderQuery,
    MonitorConfig,
    UnitNode,
    aggregate,
    posterior,
)
from causalwatch.errors import CausalwatchError

from .conftest import make_schema


HOT_TAU = 0.55  # online posteriors climb gradually; see persistence_step tests
                # for the rule itself at the default tau


def _chain_hierarchy(schema, depth=3, extra_calm_leaf=False, **cfg):
    """leaf u1 -> m2 -> ... -> root; optionally a second calm leaf under m2."""
    units = [UnitNode(unit_id="u1", level=1, parent="m2" if depth > 1 else None)]
    for lvl in range(2, depth + 1):
        parent = f"m{lvl + 1}" if lvl < depth else None
        units.append(UnitNode(unit_id=f"m{lvl}", level=lvl, parent=parent))
    if extra_calm_leaf:
        units.append(UnitNode(unit_id="u2", level=1, parent="m2"))
    return Hierarchy(schema, units, MonitorConfig(**cfg))


def _feed(h, unit, n, value, label, start_ts=0):
    for i in range(n):
        yield h.update_unit(
            EventRecord(unit, start_ts + i, {"a0": value}, label)
        )


def _train_calm(h, unit, n=20, start_ts=0):
    for out in _feed(h, unit, n, "v0", "c1", start_ts):
        assert out == []


class TestMonitorConfig:
    def test_defaults(self):
        cfg = MonitorConfig()
        assert (cfg.tau, cfg.k, cfg.window) == (0.8, 3, 10)

    def test_validation(self):
        with pytest.raises(CausalwatchError):
            MonitorConfig(tau=1.5)
        with pytest.raises(CausalwatchError):
            MonitorConfig(k=0)
        with pytest.raises(CausalwatchError):
            MonitorConfig(k=5, window=3)


class TestPersistenceRule:
    """Hand-crafted posterior sequences against the threshold/persistence rule."""

    @staticmethod
    def _run(sequence, tau=0.8, k=3):
        from causalwatch.monitor import persistence_step

        streak, fired = 0, []
        for d in sequence:
            streak, fire = persistence_step(streak, d, tau, k)
            fired.append(fire)
        return streak, fired

    def test_two_hot_windows_do_not_fire(self):
        streak, fired = self._run([0.9, 0.9])
        assert streak == 2 and fired == [False, False]

    def test_fires_on_exactly_the_third_hot_window(self):
        streak, fired = self._run([0.9, 0.9, 0.9])
        assert streak == 3 and fired == [False, False, True]

    def test_cool_window_resets(self):
        _, fired = self._run([0.9, 0.9, 0.5, 0.9, 0.9, 0.9])
        assert fired == [False, False, False, False, False, True]

    def test_threshold_is_inclusive(self):
        _, fired = self._run([0.8, 0.8, 0.8])
        assert fired[-1] is True

    def test_below_threshold_never_fires(self):
        _, fired = self._run([0.79] * 50)
        assert not any(fired)


class TestHierarchyStructure:
    def test_parent_must_be_one_level_above(self):
        schema = make_schema(1, 2, 2)
        units = [
            UnitNode(unit_id="u1", level=1, parent="r"),
            UnitNode(unit_id="r", level=3, parent=None),
        ]
        with pytest.raises(CausalwatchError, match="one level above"):
            Hierarchy(schema, units, MonitorConfig())

    def test_unknown_parent(self):
        schema = make_schema(1, 2, 2)
        units = [UnitNode(unit_id="u1", level=1, parent="ghost")]
        with pytest.raises(CausalwatchError, match="unknown parent"):
            Hierarchy(schema, units, MonitorConfig())


class TestUpdateUnit:
    def test_streak_below_persistence_no_signal(self):
        schema = make_schema(1, 2, 2)  # c0 is the distress class
        h = _chain_hierarchy(schema, depth=1, tau=HOT_TAU)
        _train_calm(h, "u1")
        outs = list(_feed(h, "u1", 2, "v1", "c0", start_ts=100))
        assert outs == [[], []]
        assert h.units["u1"].streak == 2

    def test_signal_on_third_consecutive_hot_window(self):
        schema = make_schema(1, 2, 2)
        h = _chain_hierarchy(schema, depth=1, tau=HOT_TAU)
        _train_calm(h, "u1")
        outs = list(_feed(h, "u1", 3, "v1", "c0", start_ts=100))
        assert outs[0] == [] and outs[1] == []
        (signal,) = outs[2]
        assert signal.unit_id == "u1"
        assert signal.streak == 3
        assert signal.severity >= HOT_TAU
        assert h.signal_log == [signal]

    def test_streak_resets_on_cool_window(self):
        schema = make_schema(1, 2, 2)
        h = _chain_hierarchy(schema, depth=1, tau=HOT_TAU)
        _train_calm(h, "u1")
        list(_feed(h, "u1", 2, "v1", "c0", start_ts=100))
        list(_feed(h, "u1", 1, "v0", "c1", start_ts=200))
        assert h.units["u1"].streak == 0
        outs = list(_feed(h, "u1", 3, "v1", "c0", start_ts=300))
        assert outs[2][0].streak == 3

    def test_quiet_stream_emits_nothing(self):
        schema = make_schema(1, 2, 2)
        h = _chain_hierarchy(schema, depth=2)
        _train_calm(h, "u1", n=50)
        assert h.signal_log == []

    def test_unknown_unit_errors(self):
        schema = make_schema(1, 2, 2)
        h = _chain_hierarchy(schema, depth=1)
        with pytest.raises(CausalwatchError, match="unknown unit"):
            h.update_unit(EventRecord("ghost", 0, {"a0": "v0"}, "c0"))


class TestAggregate:
    def test_identical_children(self):
        p = {"c0": 0.3, "c1": 0.7}
        assert aggregate([p, p, p]) == pytest.approx(p)

    def test_mean_of_two(self):
        got = aggregate([{"c0": 0.2, "c1": 0.8}, {"c0": 0.8, "c1": 0.2}])
        assert got["c0"] == pytest.approx(0.5, abs=1e-12)
        assert got["c1"] == pytest.approx(0.5, abs=1e-12)

    def test_max_mode(self):
        got = aggregate([{"c0": 0.2, "c1": 0.8}, {"c0": 0.6, "c1": 0.4}], mode="max")
        assert got["c0"] == pytest.approx(0.6 / 1.4, abs=1e-12)

    def test_no_children_errors(self):
        with pytest.raises(CausalwatchError):
            aggregate([])

    def test_three_level_rollup_hand_computed(self):
        schema = make_schema(1, 2, 2)
        units = [
            UnitNode(unit_id="a", level=1, parent="m"),
            UnitNode(unit_id="b", level=1, parent="m"),
            UnitNode(unit_id="m", level=2, parent="r"),
            UnitNode(unit_id="c", level=2, parent="r"),
            UnitNode(unit_id="r", level=3, parent=None),
        ]
        h = Hierarchy(schema, units, MonitorConfig())
        h.units["a"].window.append({"c0": 0.9, "c1": 0.1})
        h.units["b"].window.append({"c0": 0.5, "c1": 0.5})
        h.units["c"].window.append({"c0": 0.1, "c1": 0.9})
        # m = mean(a, b) = (0.7, 0.3); r = mean(m, c) = (0.4, 0.6)
        assert h.aggregated_posterior("m")["c0"] == pytest.approx(0.7, abs=1e-12)
        assert h.aggregated_posterior("r")["c0"] == pytest.approx(0.4, abs=1e-12)
        assert sum(h.aggregated_posterior("r").values()) == pytest.approx(1.0, abs=1e-9)


class TestEscalation:
    def test_all_hot_chain_climbs_to_root(self):
        schema = make_schema(1, 2, 2)
        h = _chain_hierarchy(schema, depth=3, tau=HOT_TAU)
        _train_calm(h, "u1")
        list(_feed(h, "u1", 2, "v1", "c0", start_ts=100))
        emitted = h.update_unit(EventRecord("u1", 102, {"a0": "v1"}, "c0"))
        # origin signal plus one hop per ancestor (m2, m3)
        assert [s.unit_id for s in emitted] == ["u1", "m2", "m3"]
        assert emitted[-1].escalated_to is None

    def test_quiet_parent_stops_escalation(self):
        schema = make_schema(1, 2, 2)
        h = _chain_hierarchy(schema, depth=2, extra_calm_leaf=True, tau=HOT_TAU)
        _train_calm(h, "u1")
        _train_calm(h, "u2")
        list(_feed(h, "u1", 2, "v1", "c0", start_ts=100))
        emitted = h.update_unit(EventRecord("u1", 102, {"a0": "v1"}, "c0"))
        # mean with the calm sibling keeps m2 below threshold
        assert [s.unit_id for s in emitted] == ["u1"]

    def test_root_level_signal_terminates(self):
        schema = make_schema(1, 2, 2)
        h = _chain_hierarchy(schema, depth=1, tau=HOT_TAU)
        _train_calm(h, "u1")
        emitted = []
        for out in _feed(h, "u1", 3, "v1", "c0", start_ts=100):
            emitted.extend(out)
        assert len(emitted) == 1
        assert emitted[0].escalated_to is None

    def test_orphan_unit_errors(self):
        from causalwatch import AlgedonicSignal

        schema = make_schema(1, 2, 2)
        h = _chain_hierarchy(schema, depth=1)
        ghost = AlgedonicSignal("ghost", 0, 0.9, 3, None)
        with pytest.raises(CausalwatchError, match="orphan"):
            h.escalate(ghost)


class TestAdvisoryReport:
    def test_posteriors_only_when_no_queries(self):
        schema = make_schema(1, 2, 2)
        h = _chain_hierarchy(schema, depth=2)
        _train_calm(h, "u1")
        rep = h.advisory_report(timestamp=123)
        assert rep.query_answers == []
        assert set(rep.unit_posteriors) == {"u1", "m2"}
        assert rep.advisory_only is True

    def test_deterministic_on_same_snapshot(self):
        schema = make_schema(1, 2, 2)
        h = _chain_hierarchy(schema, depth=2)
        _train_calm(h, "u1")
        q = LadderQuery(level="association", evidence_x=Evidence.of(a0="v0"))
        r1 = h.advisory_report([q], timestamp=5)
        r2 = h.advisory_report([q], timestamp=5)
        assert r1.to_json() == r2.to_json()

    def test_report_posterior_matches_direct_call(self):
        schema = make_schema(1, 2, 2)
        h = _chain_hierarchy(schema, depth=1)
        _train_calm(h, "u1")
        rep = h.advisory_report(timestamp=0)
        direct = posterior(h.units["u1"].store, Evidence.of(a0="v0")).scores
        assert rep.unit_posteriors["u1"] == pytest.approx(direct)

    def test_query_errors_reported_not_fatal(self):
        schema = make_schema(1, 2, 2)
        h = _chain_hierarchy(schema, depth=1)
        _train_calm(h, "u1")
        bad = LadderQuery(
            level="intervention",
            evidence_x=Evidence.of(a0="v0"),
            outcome_y=Evidence.of(a0="v1"),
        )  # no do target
        rep = h.advisory_report([bad], timestamp=0)
        assert "error" in rep.query_answers[0]

    def test_report_type_has_no_action_field(self):
        fields = {f.name for f in dataclasses.fields(AdvisoryReport)}
        assert fields == {
            "timestamp",
            "unit_posteriors",
            "active_signals",
            "query_answers",
            "advisory_only",
        }

    def test_empty_hierarchy_errors(self):
        schema = make_schema(1, 2, 2)
        h = Hierarchy(schema, [], MonitorConfig())
        with pytest.raises(CausalwatchError, match="empty"):
            h.advisory_report()
