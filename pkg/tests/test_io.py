import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coder_agreement import InputFormatError, kappa
from coder_agreement.io import (
    ReportDocument,
    format_real,
    parse_boundary_file,
    parse_long_csv,
    parse_wide_csv,
    to_boundary_file,
    to_long_csv,
    to_wide_csv,
)

from helpers import FIXTURES, from_rows


class TestLongCsv:
    def test_minimal(self):
        m = parse_long_csv(b"item,coder,label\nu1,c1,A\nu1,c2,A\n")
        assert (m.n_items, m.n_coders) == (1, 2)

    def test_m2_file(self, m2):
        m = parse_long_csv((FIXTURES / "m2_long.csv").read_bytes())
        assert m == m2
        assert abs(kappa(m).value - 0.55) <= 1e-12

    def test_bad_header(self):
        with pytest.raises(InputFormatError, match="line 1") as exc:
            parse_long_csv(b"unit,coder,label\nu1,c1,A\n")
        assert exc.value.line == 1

    def test_wrong_field_count(self):
        with pytest.raises(InputFormatError, match="line 3: expected 3 fields"):
            parse_long_csv(b"item,coder,label\nu1,c1,A\nu1,c2\n")

    def test_conflict_names_line(self):
        with pytest.raises(InputFormatError, match=r"line 4: conflicting labels for \(u1,c1\)"):
            parse_long_csv(b"item,coder,label\nu1,c1,A\nu1,c2,A\nu1,c1,B\n")

    def test_quoted_fields(self):
        m = parse_long_csv(b'item,coder,label\n"u,1",c1,"yes, mostly"\n"u,1",c2,no\n')
        assert m.items == ("u,1",)
        assert m.label("u,1", "c1") == "yes, mostly"

    def test_crlf_and_bom(self):
        m = parse_long_csv("﻿item,coder,label\r\nu1,c1,A\r\nu1,c2,B\r\n".encode("utf-8"))
        assert m.categories.labels == ("A", "B")

    def test_invalid_utf8(self):
        with pytest.raises(InputFormatError, match="UTF-8"):
            parse_long_csv(b"item,coder,label\nu1,c1,\xff\n")

    def test_header_only(self):
        with pytest.raises(InputFormatError, match="no annotation rows"):
            parse_long_csv(b"item,coder,label\n")


class TestWideCsv:
    def test_m1(self, m1):
        m = parse_wide_csv(b"item,c1,c2\nu1,A,A\nu2,A,B\nu3,B,B\nu4,A,A\n")
        assert m == m1

    def test_empty_field_is_missing(self):
        m = parse_wide_csv(b"item,c1,c2\nu5,A,\nu6,B,B\n")
        assert m.label("u5", "c2") is None
        assert not m.complete()

    def test_ragged_row(self):
        with pytest.raises(InputFormatError, match="line 3"):
            parse_wide_csv(b"item,c1,c2\nu1,A,A\nu2,A\n")

    def test_duplicate_coder(self):
        with pytest.raises(InputFormatError, match="line 1: duplicate coder 'c1'"):
            parse_wide_csv(b"item,c1,c1\nu1,A,A\n")

    def test_coder_order_kept_when_first_column_starts_empty(self):
        m = parse_wide_csv(b"item,a,b\nu1,,X\nu2,Y,X\n")
        assert m.coders == ("a", "b")
        assert m.label("u2", "a") == "Y"

    def test_fully_empty_row(self):
        with pytest.raises(InputFormatError, match="line 2"):
            parse_wide_csv(b"item,a,b\nu1,,\n")


class TestBoundaryFile:
    def test_fixture(self):
        track = parse_boundary_file((FIXTURES / "track.txt").read_bytes())
        assert track.site_count == 13
        assert track.marks == {"expert": frozenset({2, 5, 9}), "naive": frozenset({2, 9, 12})}

    def test_unknown_sites(self):
        track = parse_boundary_file(b"sites=?\ne:1\nn:1\n")
        assert track.site_count is None

    def test_index_out_of_range(self):
        with pytest.raises(InputFormatError, match="line 2: index 5 >= sites 3"):
            parse_boundary_file(b"sites=3\nc1:5\n")

    def test_empty_index_list(self):
        track = parse_boundary_file(b"sites=4\na:\nb:1 2\n")
        assert track.marks["a"] == frozenset()

    @pytest.mark.parametrize(
        "data, line",
        [(b"sites=3\nc1:1 x\n", 2), (b"site=3\n", 1), (b"sites=abc\n", 1), (b"sites=3\nbogus\n", 2)],
    )
    def test_malformed(self, data, line):
        with pytest.raises(InputFormatError) as exc:
            parse_boundary_file(data)
        assert exc.value.line == line

    def test_round_trip(self):
        text = (FIXTURES / "track4.txt").read_text()
        assert to_boundary_file(parse_boundary_file(text)) == text


csv_label = st.text(alphabet="AB ,\"xé", min_size=1, max_size=4)


@given(
    st.integers(1, 5).flatmap(
        lambda n: st.integers(2, 4).flatmap(
            lambda m: st.lists(st.lists(csv_label, min_size=m, max_size=m), min_size=n, max_size=n)
        )
    )
)
@settings(max_examples=150, derandomize=True)
def test_long_and_wide_round_trip(rows):
    m = from_rows(rows)
    assert parse_long_csv(to_long_csv(m).encode()) == m
    assert parse_wide_csv(to_wide_csv(m).encode()) == m


class TestRendering:
    @pytest.mark.parametrize(
        "x, text",
        [(0.55, "0.55"), (7 / 15, "0.466666666667"), (1.0, "1.0"), (-0.0, "0.0"),
         (1 / 3 * 3, "1.0"), (0.1 + 0.2, "0.3"), (123456.7890123456, "123456.789012"), (1e-20, "1e-20")],
    )
    def test_format_real(self, x, text):
        assert repr(format_real(x)) == text

    def test_rounded_value_round_trips(self):
        rng = np.random.default_rng(0)
        for x in rng.normal(size=500):
            r = format_real(x)
            assert float(repr(r)) == r
            assert abs(r - x) <= abs(x) * 1e-11

    def test_report_key_order_and_stability(self, m2):
        doc = ReportDocument("sha256:x", results=[kappa(m2)])
        text = doc.to_json()
        assert list(json.loads(text)) == ["tool_version", "input_digest", "results", "diagnostics", "warnings"]
        assert text == ReportDocument("sha256:x", results=[kappa(m2)]).to_json()

    def test_text_and_json_show_same_numbers(self, m2):
        doc = ReportDocument("sha256:x", results=[kappa(m2)])
        r = json.loads(doc.to_json())["results"][0]
        text = doc.to_text()
        for key in ("value", "observed_agreement", "expected_agreement"):
            assert repr(r[key]) in text
