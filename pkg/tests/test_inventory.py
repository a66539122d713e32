import dataclasses
import datetime as dt
import json
import random

import pytest

from seeds import add_assessed, make_input, new_record, random_store

from eucrisk.inventory import (
    IntegrityError,
    AlreadyClosed,
    DateOrder,
    InconsistentResult,
    InventoryStore,
    Lifecycle,
    MissingField,
    ResidualExceedsInherent,
    RetiredRecord,
    RiskRegisterEntry,
    RiskStatus,
    ScaleViolation,
    StoreDocument,
    UnknownId,
    UnknownRisk,
)
from eucrisk.rating import RatingBand, assess


def entry(inherent=(4, 4), residual=(2, 3), opened=dt.date(2019, 1, 10)):
    return RiskRegisterEntry(
        risk_id="", euca_id="", description="no support for Access database",
        inherent_likelihood=inherent[0], inherent_severity=inherent[1],
        residual_likelihood=residual[0], residual_severity=residual[1],
        opened=opened,
    )


class TestUpsert:
    def test_new_record_gets_fresh_id_and_live_status(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("Complaints DB", "Complaints"))
        assert record.id.startswith("euca-")
        assert record.lifecycle_status is Lifecycle.LIVE
        assert record.created_at == record.updated_at

    def test_update_preserves_created_at_and_advances_updated_at(self):
        times = iter([dt.datetime(2019, 1, 1, tzinfo=dt.timezone.utc),
                      dt.datetime(2019, 2, 1, tzinfo=dt.timezone.utc)])
        store = InventoryStore(clock=lambda: next(times))
        record = store.upsert_euca(new_record("Complaints DB", "Complaints"))
        updated = store.upsert_euca(dataclasses.replace(record, manager="New Manager"))
        assert updated.created_at == record.created_at
        assert updated.updated_at > record.updated_at
        assert updated.manager == "New Manager"

    def test_update_unknown_id_rejected(self):
        store = InventoryStore()
        with pytest.raises(UnknownId):
            store.upsert_euca(new_record("X", "Y", **{"id": "euca-missing"}))

    @pytest.mark.parametrize("missing", ["name", "department", "manager"])
    def test_required_fields_enforced(self, missing):
        store = InventoryStore()
        record = new_record("App", "Dept")
        with pytest.raises(MissingField):
            store.upsert_euca(dataclasses.replace(record, **{missing: "  "}))

    def test_upsert_cannot_wipe_governance_state(self):
        store = InventoryStore()
        record = add_assessed(store, "App", "Claims", RatingBand.GREEN, impact=2)
        stripped = dataclasses.replace(record, assessments=(), next_review=None,
                                       risk_ids=())
        after = store.upsert_euca(stripped)
        assert len(after.assessments) == 1
        assert after.next_review is not None


class TestRecordAssessment:
    def test_attach_sets_next_review_from_result(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("App", "Claims"))
        inp = make_input(3, 3, 5, failures=5, on=dt.date(2018, 7, 9))
        result = assess(inp)
        assert result.band is RatingBand.RED
        updated = store.record_assessment(record.id, inp, result)
        assert updated.next_review == dt.date(2019, 7, 9)
        assert updated.band is RatingBand.RED

    def test_result_is_recomputed_and_compared(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("App", "Claims"))
        inp = make_input(2, 2, 3)
        tampered = dataclasses.replace(assess(inp), band=RatingBand.BLUE)
        with pytest.raises(InconsistentResult):
            store.record_assessment(record.id, inp, tampered)

    def test_history_grows_by_one_per_reassessment(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("App", "Claims"))
        first = make_input(3, 3, 5, failures=8)
        store.record_assessment(record.id, first, assess(first))
        second = make_input(3, 3, 5, failures=2)
        updated = store.record_assessment(record.id, second, assess(second))
        assert len(updated.assessments) == 2
        assert updated.latest_assessment.input == second

    def test_unknown_record_rejected(self):
        store = InventoryStore()
        inp = make_input(1, 1, 1)
        with pytest.raises(UnknownId):
            store.record_assessment("euca-none", inp, assess(inp))


class TestConfirmReview:
    def test_steps_forward_one_year(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("App", "Claims"))
        updated = store.confirm_review(record.id, dt.date(2019, 3, 10))
        assert updated.next_review == dt.date(2020, 3, 10)

    def test_leap_day_confirmation(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("App", "Claims"))
        updated = store.confirm_review(record.id, dt.date(2020, 2, 29))
        assert updated.next_review == dt.date(2021, 2, 28)

    def test_idempotent_for_fixed_date(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("App", "Claims"))
        once = store.confirm_review(record.id, dt.date(2019, 3, 10))
        twice = store.confirm_review(record.id, dt.date(2019, 3, 10))
        assert once.next_review == twice.next_review

    def test_retired_record_rejected(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("App", "Claims"))
        store.set_lifecycle(record.id, Lifecycle.RETIRED, "replaced by new system")
        with pytest.raises(RetiredRecord):
            store.confirm_review(record.id, dt.date(2019, 3, 10))


class TestLifecycle:
    def test_retire_and_idempotence(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("App", "Claims"))
        once = store.set_lifecycle(record.id, Lifecycle.RETIRED, "unused")
        twice = store.set_lifecycle(record.id, Lifecycle.RETIRED, "unused")
        assert once.lifecycle_status is Lifecycle.RETIRED
        assert twice.lifecycle_status is Lifecycle.RETIRED

    def test_revive_requires_reason(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("App", "Claims"))
        store.set_lifecycle(record.id, Lifecycle.RETIRED, "unused")
        with pytest.raises(MissingField):
            store.set_lifecycle(record.id, Lifecycle.LIVE)
        revived = store.set_lifecycle(record.id, Lifecycle.LIVE, "back in use for year end")
        assert revived.lifecycle_status is Lifecycle.LIVE

    def test_retired_records_keep_history(self):
        store = InventoryStore()
        record = add_assessed(store, "App", "Claims", RatingBand.AMBER, impact=3)
        store.set_lifecycle(record.id, Lifecycle.RETIRED, "unused")
        kept = store.list_eucas(lifecycle=Lifecycle.RETIRED)[0]
        assert len(kept.assessments) == 1


class TestRiskRegister:
    def test_link_opens_entry_and_extends_record(self):
        store = InventoryStore()
        record = add_assessed(store, "App", "Claims", RatingBand.AMBER, impact=3)
        linked = store.link_risk(record.id, entry())
        assert linked.risk_id.startswith("risk-")
        assert linked.status is RiskStatus.OPEN
        assert linked.inherent_score == 16
        assert linked.residual_score == 6
        assert store.list_eucas()[0].risk_ids == (linked.risk_id,)

    def test_residual_may_not_exceed_inherent(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("App", "Claims"))
        with pytest.raises(ResidualExceedsInherent):
            store.link_risk(record.id, entry(inherent=(4, 4), residual=(5, 5)))

    def test_scales_are_one_to_five(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("App", "Claims"))
        with pytest.raises(ScaleViolation):
            store.link_risk(record.id, entry(inherent=(7, 1), residual=(1, 1)))

    def test_close_sets_date_and_status(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("App", "Claims"))
        linked = store.link_risk(record.id, entry(opened=dt.date(2019, 1, 10)))
        closed = store.close_risk(linked.risk_id, dt.date(2019, 4, 2))
        assert closed.status is RiskStatus.CLOSED
        assert closed.closed == dt.date(2019, 4, 2)

    def test_close_before_open_rejected(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("App", "Claims"))
        linked = store.link_risk(record.id, entry(opened=dt.date(2019, 1, 10)))
        with pytest.raises(DateOrder):
            store.close_risk(linked.risk_id, dt.date(2018, 12, 31))

    def test_double_close_rejected(self):
        store = InventoryStore()
        record = store.upsert_euca(new_record("App", "Claims"))
        linked = store.link_risk(record.id, entry())
        store.close_risk(linked.risk_id, dt.date(2019, 4, 2))
        with pytest.raises(AlreadyClosed):
            store.close_risk(linked.risk_id, dt.date(2019, 4, 3))

    def test_unknown_ids_rejected(self):
        store = InventoryStore()
        with pytest.raises(UnknownId):
            store.link_risk("euca-none", entry())
        with pytest.raises(UnknownRisk):
            store.close_risk("risk-none", dt.date(2019, 4, 2))


class TestListEucas:
    def build(self) -> InventoryStore:
        store = InventoryStore()
        add_assessed(store, "Ledger", "Accounting", RatingBand.GREEN, 2,
                     on=dt.date(2018, 3, 1))
        add_assessed(store, "Recs", "Accounting", RatingBand.RED, 5,
                     on=dt.date(2018, 9, 1))
        add_assessed(store, "Absence", "HR", RatingBand.AMBER, 3,
                     on=dt.date(2018, 6, 1))
        retired = add_assessed(store, "Old Tracker", "HR", RatingBand.GREEN, 1,
                               on=dt.date(2018, 1, 1))
        store.set_lifecycle(retired.id, Lifecycle.RETIRED, "unused")
        store.upsert_euca(new_record("Unassessed", "Claims"))
        return store

    def test_empty_filter_returns_everything_ordered(self):
        names = [r.name for r in self.build().list_eucas()]
        assert names == ["Ledger", "Recs", "Unassessed", "Absence", "Old Tracker"]

    def test_band_filter(self):
        matches = self.build().list_eucas(band=RatingBand.RED)
        assert [r.name for r in matches] == ["Recs"]

    def test_lifecycle_filter_on_fresh_store_is_empty(self):
        assert InventoryStore().list_eucas(lifecycle=Lifecycle.RETIRED) == []

    def test_due_before_matches_brute_force_scan(self):
        store = self.build()
        cutoff = dt.date(2019, 6, 2)
        expected = sorted(
            (r for r in store.document.records
             if r.next_review is not None and r.next_review < cutoff),
            key=lambda r: (r.department, r.name, r.id),
        )
        assert store.list_eucas(due_before=cutoff) == expected

    def test_combined_filters(self):
        matches = self.build().list_eucas(department="HR", lifecycle=Lifecycle.LIVE)
        assert [r.name for r in matches] == ["Absence"]


class TestPersistence:
    def test_json_round_trip_preserves_every_field(self, tmp_path):
        store = random_store(random.Random(7), max_records=10)
        store.path = tmp_path / "store.json"
        store.save()
        reloaded = InventoryStore.load(store.path)
        assert reloaded.document == store.document

    def test_save_is_atomic_replace(self, tmp_path):
        path = tmp_path / "store.json"
        store = InventoryStore(path=path)
        store.upsert_euca(new_record("App", "Claims"))
        store.save()
        first = path.read_bytes()
        store.upsert_euca(new_record("Other", "HR"))
        store.save()
        assert path.read_bytes() != first
        assert not list(tmp_path.glob(".store-*"))

    def test_load_validates_referential_integrity(self, tmp_path):
        store = InventoryStore()
        store.upsert_euca(new_record("App", "Claims"))
        document = store.document.to_dict()
        document["records"][0]["risk_ids"] = ["risk-phantom"]
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(document))
        with pytest.raises(IntegrityError):
            InventoryStore.load(path)

    def test_empty_document_round_trips(self):
        document = StoreDocument()
        assert StoreDocument.from_dict(document.to_dict()) == document


def _integrity_holds(store: InventoryStore) -> None:
    store.document.validate()
    for entry_ in store.document.register:
        assert 1 <= entry_.inherent_likelihood <= 5
        assert 1 <= entry_.inherent_severity <= 5
        assert 1 <= entry_.residual_likelihood <= 5
        assert 1 <= entry_.residual_severity <= 5
        assert entry_.residual_score <= entry_.inherent_score
        if entry_.status is RiskStatus.CLOSED:
            assert entry_.closed is not None and entry_.closed >= entry_.opened


def test_random_operation_sequences_preserve_integrity():
    rng = random.Random(20190501)
    for _ in range(120):
        store = random_store(rng)
        # a few extra mutations on top of the generator's
        records = store.document.records
        for _ in range(rng.randint(0, 6)):
            if not records:
                break
            record = rng.choice(records)
            action = rng.random()
            if action < 0.3 and record.is_live:
                store.confirm_review(record.id, dt.date(2019, rng.randint(1, 12), 15))
            elif action < 0.5:
                store.set_lifecycle(record.id, Lifecycle.RETIRED, "sweep")
            elif action < 0.7:
                open_entries = store.open_entries_for(record)
                if open_entries:
                    store.close_risk(open_entries[0].risk_id,
                                     open_entries[0].opened + dt.timedelta(days=30))
            else:
                store.upsert_euca(dataclasses.replace(record, team=f"T{rng.randint(1, 9)}"))
        _integrity_holds(store)
