import json
import random
from datetime import datetime, timedelta, timezone

import pytest

from entroglyph.errors import MalformedRow, UnknownFormat
from entroglyph.ingest import (
    SensorReading,
    parse_readings,
    summaries_to_json,
    summarize_window,
    summary_from_dict,
    summary_to_dict,
)

T0 = datetime(2019, 7, 1, 10, 0, tzinfo=timezone.utc)


def reading(sensor, minutes, value):
    return SensorReading(sensor, T0 + timedelta(minutes=minutes), value,
                         "temperature")


class TestParseReadings:
    def test_single_csv_row(self):
        rows = parse_readings("s1,2019-07-01T10:05:00Z,13.5,temperature")
        assert rows == [SensorReading(
            "s1", datetime(2019, 7, 1, 10, 5, tzinfo=timezone.utc),
            13.5, "temperature")]

    def test_empty_input(self):
        assert parse_readings("") == []
        assert parse_readings(b"", format="json") == []

    def test_bad_timestamp_reports_row(self):
        with pytest.raises(MalformedRow) as err:
            parse_readings("s1,not-a-time,13.5,temperature")
        assert err.value.row == 1

    def test_bad_row_index_counts_from_one(self):
        text = ("s1,2019-07-01T10:05:00Z,13.5,temperature\n"
                "s1,2019-07-01T10:06:00Z,oops,temperature\n")
        with pytest.raises(MalformedRow) as err:
            parse_readings(text)
        assert err.value.row == 2

    def test_header_row_skipped(self):
        text = ("sensor_id,timestamp,value,measure\n"
                "s1,2019-07-01T10:05:00Z,13.5,temperature\n")
        assert len(parse_readings(text)) == 1

    def test_wrong_field_count(self):
        with pytest.raises(MalformedRow):
            parse_readings("s1,2019-07-01T10:05:00Z,13.5")

    def test_naive_timestamp_rejected(self):
        with pytest.raises(MalformedRow):
            parse_readings("s1,2019-07-01T10:05:00,13.5,temperature")

    def test_offset_normalized_to_utc(self):
        rows = parse_readings("s1,2019-07-01T12:05:00+02:00,13.5,temperature")
        assert rows[0].timestamp == datetime(2019, 7, 1, 10, 5,
                                             tzinfo=timezone.utc)

    def test_non_finite_value_rejected(self):
        with pytest.raises(MalformedRow):
            parse_readings("s1,2019-07-01T10:05:00Z,nan,temperature")

    def test_json_array(self):
        doc = json.dumps([{"sensor_id": "s1",
                           "timestamp": "2019-07-01T10:05:00Z",
                           "value": 13.5, "measure": "temperature"}])
        rows = parse_readings(doc.encode("utf-8"), format="json")
        assert rows[0].value == 13.5

    def test_json_missing_field(self):
        with pytest.raises(MalformedRow) as err:
            parse_readings('[{"sensor_id": "s1"}]', format="json")
        assert err.value.row == 1

    def test_unknown_format(self):
        with pytest.raises(UnknownFormat):
            parse_readings("x", format="xml")

    def test_bytes_decoded(self):
        rows = parse_readings(b"s1,2019-07-01T10:05:00Z,13.5,temperature")
        assert rows[0].sensor_id == "s1"


class TestSummarizeWindow:
    def test_mean_variance_count(self):
        rows = [reading("s1", 0, 10.0), reading("s1", 10, 12.0),
                reading("s1", 20, 14.0)]
        (s,) = summarize_window(rows)
        assert (s.mean, s.variance, s.count) == (12.0, 4.0, 3)
        assert s.window_start == T0
        assert s.window_end == T0 + timedelta(hours=1)

    def test_single_reading_has_no_variance(self):
        (s,) = summarize_window([reading("s1", 5, 13.5)])
        assert s.mean == 13.5
        assert s.variance is None
        assert s.count == 1

    def test_no_readings_no_summary(self):
        assert summarize_window([]) == []

    def test_readings_outside_window_ignored(self):
        rows = [reading("s1", 5, 10.0), reading("s1", 70, 99.0)]
        (s,) = summarize_window(rows, aligned_to=T0)
        assert s.count == 1

    def test_aligned_to_clock_hour_by_default(self):
        rows = [SensorReading("s1", T0 + timedelta(minutes=17), 5.0, "t")]
        (s,) = summarize_window(rows)
        assert s.window_start == T0

    def test_order_invariance(self):
        rng = random.Random(3)
        rows = [reading(f"s{i % 4}", i, float(i)) for i in range(40)]
        base = summarize_window(rows)
        for _ in range(5):
            shuffled = rows[:]
            rng.shuffle(shuffled)
            assert summarize_window(shuffled) == base

    def test_counts_partition_readings(self):
        rows = [reading(f"s{i % 3}", i % 60, float(i)) for i in range(30)]
        summaries = summarize_window(rows)
        assert sum(s.count for s in summaries) == 30

    def test_variance_quadratic_scaling(self):
        values = [3.0, 7.0, 8.0, 1.0, 4.5]
        rows = [reading("s1", i, v) for i, v in enumerate(values)]
        scaled = [reading("s1", i, 2.5 * v) for i, v in enumerate(values)]
        (a,), (b,) = summarize_window(rows), summarize_window(scaled)
        assert b.variance == pytest.approx(2.5 ** 2 * a.variance, abs=1e-9)

    def test_locations_attached(self):
        (s,) = summarize_window([reading("s1", 0, 1.0)],
                                locations={"s1": (4.0, 5.0)})
        assert s.location == (4.0, 5.0)

    def test_duplicate_timestamps_kept(self):
        rows = [reading("s1", 5, 1.0), reading("s1", 5, 3.0)]
        (s,) = summarize_window(rows)
        assert s.count == 2
        assert s.mean == 2.0

    def test_summary_json_round_trip(self):
        (s,) = summarize_window([reading("s1", 0, 10.0),
                                 reading("s1", 1, 12.0)],
                                locations={"s1": (1.0, 2.0)})
        assert summary_from_dict(summary_to_dict(s)) == s
        assert json.loads(summaries_to_json([s]))[0]["sensor_id"] == "s1"
