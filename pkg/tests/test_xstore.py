import pytest

from coins.xstore import Store, StoreError, expl_sort_key, sort_explanations

KEY = (0, 1)


def fs(*ids):
    return frozenset(ids)


def test_sort_key_orders_by_size_then_ids():
    es = [fs(2, 3), fs(1), fs(1, 2), fs(4)]
    assert sort_explanations(es) == [fs(1), fs(4), fs(1, 2), fs(2, 3)]
    assert expl_sort_key(fs(3, 1)) == (2, (1, 3))


def test_rejects_bad_k():
    with pytest.raises(StoreError):
        Store(0)


def test_record_basic_and_main():
    s = Store(k=2)
    assert s.record_explanation(KEY, fs(1, 2), set(), True)
    assert s.main(KEY) == fs(1, 2)
    # A later removal-event explanation does not steal main.
    assert s.record_explanation(KEY, fs(3), set(), True)
    assert s.main(KEY) == fs(1, 2)
    assert s.valid_explanations(KEY) == [fs(3), fs(1, 2)]


def test_relevance_bound_rejects():
    s = Store(k=1)
    assert not s.record_explanation(KEY, fs(1, 2), {2}, True)
    assert s.record(KEY) is None or s.record(KEY).is_empty()
    s2 = Store(k=2)
    assert s2.record_explanation(KEY, fs(1, 2), {2}, True)
    assert s2.record(KEY).buckets[1] == {fs(1, 2)}
    assert not s2.record_explanation(KEY, fs(1, 2, 3), {2, 3}, False)


def test_subsumption_rejects_supersets_and_prunes():
    s = Store(k=1)
    s.record_explanation(KEY, fs(1, 2), set(), True)
    s.record_explanation(KEY, fs(3, 4), set(), False)
    # Superset of something stored: rejected.
    assert not s.record_explanation(KEY, fs(1, 2, 5), set(), False)
    assert not s.record_explanation(KEY, fs(1, 2), set(), False)
    # Strict subset: accepted, prunes the non-main superset only.
    assert s.record_explanation(KEY, fs(3), set(), False)
    assert s.record_explanation(KEY, fs(1), set(), False)
    assert s.record(KEY).buckets[0] == {fs(1, 2), fs(3), fs(1)}
    assert s.main(KEY) == fs(1, 2)  # main survives subsumption


def test_on_relax_migration_and_forgetting():
    s = Store(k=2)
    s.record_explanation(KEY, fs(1), set(), True)
    s.record_explanation(KEY, fs(2, 3), set(), False)
    delta = s.on_relax(1, {1})
    assert s.record(KEY).buckets[0] == {fs(2, 3)}
    assert s.record(KEY).buckets[1] == {fs(1)}
    assert delta.main_reassigned == {KEY: fs(2, 3)}
    assert delta.emptied_bucket0 == []
    delta = s.on_relax(3, {1, 3})
    # {2,3} migrates to bucket 1; {1} does not mention 3 and stays put.
    assert s.record(KEY).buckets == [set(), {fs(1), fs(2, 3)}]
    assert delta.forgotten == {}
    assert delta.emptied_bucket0 == [KEY]
    assert delta.main_dropped == [KEY]
    assert s.main(KEY) is None


def test_on_relax_forgets_at_k():
    s = Store(k=1)
    s.record_explanation(KEY, fs(1, 2), set(), True)
    delta = s.on_relax(2, {2})
    assert delta.forgotten == {KEY: [fs(1, 2)]}
    assert s.record(KEY).is_empty()


def test_on_relax_guard():
    s = Store(k=1)
    with pytest.raises(StoreError):
        s.on_relax(1, set())


def test_on_reactivate_reports_bucket0_arrivals():
    s = Store(k=2)
    s.record_explanation(KEY, fs(1, 9), {1}, True)
    s.record_explanation(KEY, fs(1, 4), {1}, False)
    delta = s.on_reactivate(1, set())
    assert delta.gained_bucket0 == {KEY: [fs(1, 4), fs(1, 9)]}
    assert s.record(KEY).buckets == [{fs(1, 4), fs(1, 9)}, set()]
    with pytest.raises(StoreError):
        s.on_reactivate(2, {2})


def test_relax_reactivate_round_trip():
    """No explanation (below the forgetting bound) is lost by a relax that is
    immediately undone; main designation is the caller's business."""
    s = Store(k=3)
    s.record_explanation(KEY, fs(1, 2), set(), True)
    s.record_explanation(KEY, fs(2, 3), set(), False)
    s.record_explanation((0, 2), fs(2), set(), True)
    before = {key: [set(b) for b in s.record(key).buckets] for key in (KEY, (0, 2))}
    s.on_relax(2, {2})
    s.on_reactivate(2, set())
    after = {key: [set(b) for b in s.record(key).buckets] for key in (KEY, (0, 2))}
    assert after == before


def test_set_main_requires_stored_explanation():
    s = Store(k=1)
    s.record_explanation(KEY, fs(1), set(), True)
    with pytest.raises(StoreError):
        s.set_main(KEY, fs(9))
    s.record_explanation(KEY, fs(2), set(), False)
    s.set_main(KEY, fs(2))
    assert s.main(KEY) == fs(2)
    s.drop_main(KEY)
    assert s.main(KEY) is None


def test_stats_and_dump():
    s = Store(k=2)
    s.record_explanation(KEY, fs(1), set(), True)
    s.record_explanation((0, 2), fs(2, 5), {5}, True)
    st = s.stats()
    assert st.explanation_count == 2
    assert st.per_bucket == [1, 1]
    assert st.max_explanation_size == 2
    assert st.record_count == 2
    d = s.dump()
    assert d["0!=1"] == {"main": [1], "buckets": [[[1]], []]}
    assert d["0!=2"] == {"main": [2, 5], "buckets": [[], [[2, 5]]]}


# --- the worked bucket-migration example (k=2, one removal, six constraints)


def example_store():
    """Removal with bucket0 = {{0,1,2},{2,4}} and bucket1 = {{1,3},{2,3}}
    under relaxed = {3}; main is {0,1,2}."""
    s = Store(k=2)
    assert s.record_explanation(KEY, fs(0, 1, 2), {3}, True)
    assert s.record_explanation(KEY, fs(2, 4), {3}, False)
    assert s.record_explanation(KEY, fs(1, 3), {3}, False)
    assert s.record_explanation(KEY, fs(2, 3), {3}, False)
    assert s.main(KEY) == fs(0, 1, 2)
    rec = s.record(KEY)
    assert rec.buckets[0] == {fs(0, 1, 2), fs(2, 4)}
    assert rec.buckets[1] == {fs(1, 3), fs(2, 3)}
    return s


def test_example_relax_second_constraint():
    s = example_store()
    delta = s.on_relax(1, {1, 3})
    rec = s.record(KEY)
    assert rec.buckets[0] == {fs(2, 4)}
    assert rec.buckets[1] == {fs(0, 1, 2), fs(2, 3)}
    assert delta.forgotten == {KEY: [fs(1, 3)]}
    assert delta.main_reassigned == {KEY: fs(2, 4)}
    assert s.main(KEY) == fs(2, 4)


def test_example_reactivate_third_constraint():
    s = example_store()
    delta = s.on_reactivate(3, set())
    rec = s.record(KEY)
    assert rec.buckets[0] == {fs(0, 1, 2), fs(2, 4), fs(1, 3), fs(2, 3)}
    assert rec.buckets[1] == set()
    assert delta.gained_bucket0 == {KEY: [fs(1, 3), fs(2, 3)]}
