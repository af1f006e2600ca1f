"""Relevance-bounded explanation storage.

Each value removal (v != a) owns up to k buckets; bucket i holds the stored
explanations containing exactly i relaxed constraints. Bucket 0 entries are
"valid": they currently force the removal. An explanation whose relaxed count
reaches k is forgotten for good.

One stored explanation per removal is designated `main`: the one computed at
removal time and used to build further explanations during propagation. The
main explanation is never discarded by subsumption (a strictly more precise
secondary explanation may coexist with it); it is only forgotten or
reassigned when constraint relaxation pushes it out of bucket 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

Explanation = frozenset[int]

# Deterministic total order on explanations: size first, then sorted ids.
def expl_sort_key(e: Explanation) -> tuple[int, tuple[int, ...]]:
    return (len(e), tuple(sorted(e)))


def sort_explanations(es: Iterable[Explanation]) -> list[Explanation]:
    return sorted(es, key=expl_sort_key)


class StoreError(ValueError):
    """Raised on misuse of the store (relaxing twice, etc.)."""


RemovalKey = tuple[int, int]  # (variable index, value)


@dataclass
class RemovalRecord:
    key: RemovalKey
    main: Explanation | None = None
    buckets: list[set[Explanation]] = field(default_factory=list)

    def all_explanations(self) -> list[Explanation]:
        out: list[Explanation] = []
        for bucket in self.buckets:
            out.extend(bucket)
        return out

    def is_empty(self) -> bool:
        return all(not b for b in self.buckets)


@dataclass
class RelaxDelta:
    """Per-key consequences of relaxing one constraint."""

    emptied_bucket0: list[RemovalKey] = field(default_factory=list)
    main_reassigned: dict[RemovalKey, Explanation] = field(default_factory=dict)
    main_dropped: list[RemovalKey] = field(default_factory=list)
    forgotten: dict[RemovalKey, list[Explanation]] = field(default_factory=dict)


@dataclass
class ReactivateDelta:
    """Keys that regained valid explanations when a constraint came back."""

    gained_bucket0: dict[RemovalKey, list[Explanation]] = field(default_factory=dict)


@dataclass
class StoreStats:
    explanation_count: int
    per_bucket: list[int]
    max_explanation_size: int
    record_count: int


class Store:
    def __init__(self, k: int):
        if k < 1:
            raise StoreError(f"relevance bound k must be >= 1, got {k}")
        self.k = k
        self.records: dict[RemovalKey, RemovalRecord] = {}

    def record(self, key: RemovalKey) -> RemovalRecord | None:
        return self.records.get(key)

    def _ensure(self, key: RemovalKey) -> RemovalRecord:
        rec = self.records.get(key)
        if rec is None:
            rec = RemovalRecord(key=key, buckets=[set() for _ in range(self.k)])
            self.records[key] = rec
        return rec

    def record_explanation(
        self,
        key: RemovalKey,
        e: Explanation,
        relaxed: set[int],
        is_removal_event: bool,
    ) -> bool:
        """Store one explanation; returns False when rejected.

        Rejection reasons: not k-relevant (contains >= k relaxed constraints)
        or redundant (superset of something already stored for this key).
        Accepting a new explanation deletes its stored strict supersets,
        except the main explanation which always survives.
        """
        i = len(e & relaxed)
        if i >= self.k:
            return False
        rec = self._ensure(key)
        for stored in rec.all_explanations():
            if stored <= e:
                return False
        for bucket in rec.buckets:
            doomed = {s for s in bucket if e < s and s != rec.main}
            bucket -= doomed
        rec.buckets[i].add(e)
        if is_removal_event and rec.main is None:
            rec.main = e
        return True

    def on_relax(self, c: int, relaxed_after: set[int]) -> RelaxDelta:
        """Migrate every explanation containing `c` one bucket up.

        `relaxed_after` is the relaxed set including `c`. Explanations pushed
        past bucket k-1 are forgotten. Mains pushed out of bucket 0 are
        reassigned to the smallest surviving valid explanation, or dropped
        when bucket 0 empties (the engine then restores the value).
        """
        if c not in relaxed_after:
            raise StoreError(f"constraint {c} is not relaxed")
        delta = RelaxDelta()
        for key, rec in sorted(self.records.items()):
            had_valid = bool(rec.buckets[0])
            touched = False
            forgotten: list[Explanation] = []
            for i in range(self.k - 1, -1, -1):
                moving = {e for e in rec.buckets[i] if c in e}
                if not moving:
                    continue
                touched = True
                rec.buckets[i] -= moving
                if i + 1 >= self.k:
                    forgotten.extend(sort_explanations(moving))
                else:
                    rec.buckets[i + 1] |= moving
            if not touched:
                continue
            if forgotten:
                delta.forgotten[key] = forgotten
            if rec.main is not None and c in rec.main:
                # Main left bucket 0 (migrated or forgotten): pick a successor.
                if rec.buckets[0]:
                    new_main = min(rec.buckets[0], key=expl_sort_key)
                    rec.main = new_main
                    delta.main_reassigned[key] = new_main
                else:
                    rec.main = None
                    delta.main_dropped.append(key)
            if had_valid and not rec.buckets[0]:
                delta.emptied_bucket0.append(key)
            # A demoted main loses its subsumption protection: sweep out any
            # explanation that is now a strict superset of another stored one.
            all_es = rec.all_explanations()
            for bucket in rec.buckets:
                doomed = {
                    e for e in bucket if e != rec.main and any(s < e for s in all_es)
                }
                bucket -= doomed
        return delta

    def on_reactivate(self, c: int, relaxed_after: set[int]) -> ReactivateDelta:
        """Migrate every explanation containing `c` one bucket down.

        Explanations landing in bucket 0 become valid again; the caller must
        remove the corresponding value if it is currently present.
        """
        if c in relaxed_after:
            raise StoreError(f"constraint {c} is still relaxed")
        delta = ReactivateDelta()
        for key, rec in sorted(self.records.items()):
            incoming: set[Explanation] = set()
            for i in range(1, self.k):
                moving = {e for e in rec.buckets[i] if c in e}
                if not moving:
                    continue
                rec.buckets[i] -= moving
                rec.buckets[i - 1] |= moving
                if i == 1:
                    incoming |= moving
            if incoming:
                delta.gained_bucket0[key] = sort_explanations(incoming)
        return delta

    def valid_explanations(self, key: RemovalKey) -> list[Explanation]:
        """Bucket 0 contents for a key, deterministically ordered."""
        rec = self.records.get(key)
        if rec is None:
            return []
        return sort_explanations(rec.buckets[0])

    def drop_main(self, key: RemovalKey) -> None:
        rec = self.records.get(key)
        if rec is not None:
            rec.main = None

    def set_main(self, key: RemovalKey, e: Explanation) -> None:
        rec = self.records.get(key)
        if rec is None or all(e not in b for b in rec.buckets):
            raise StoreError(f"cannot designate unstored explanation as main for {key}")
        rec.main = e

    def main(self, key: RemovalKey) -> Explanation | None:
        rec = self.records.get(key)
        return rec.main if rec else None

    def stats(self) -> StoreStats:
        per_bucket = [0] * self.k
        max_size = 0
        count = 0
        for rec in self.records.values():
            for i, bucket in enumerate(rec.buckets):
                per_bucket[i] += len(bucket)
                count += len(bucket)
                for e in bucket:
                    max_size = max(max_size, len(e))
        return StoreStats(
            explanation_count=count,
            per_bucket=per_bucket,
            max_explanation_size=max_size,
            record_count=len(self.records),
        )

    def dump(self) -> dict:
        """Canonical JSON-ready view, used for digests and snapshots."""
        out = {}
        for key in sorted(self.records):
            rec = self.records[key]
            out[f"{key[0]}!={key[1]}"] = {
                "main": sorted(rec.main) if rec.main is not None else None,
                "buckets": [
                    [sorted(e) for e in sort_explanations(b)] for b in rec.buckets
                ],
            }
        return out
