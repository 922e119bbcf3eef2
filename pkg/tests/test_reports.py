import os
from fractions import Fraction as F

from qcasim.reports import (
    fraction_decimal,
    power_sweep_rows,
    render_csv,
    render_figures,
    render_json,
    upower_sweep_rows,
)


class TestDecimals:
    def test_twelve_significant_digits(self):
        assert fraction_decimal(F(1, 3)) == "0.333333333333"

    def test_integers_stay_clean(self):
        assert fraction_decimal(F(64)) == "64"

    def test_tiny_values_go_scientific(self):
        assert fraction_decimal(F(1, 4**10)) == "9.53674316406E-7"


class TestRows:
    def test_power_rows_have_member_and_neighbor(self):
        rows = power_sweep_rows([1], [1, 2])
        assert [(r["m"], r["n"], r["member"]) for r in rows] == [
            (1, 2, True), (1, 3, False), (2, 4, True), (2, 5, False)]
        assert rows[0]["overall_accept"] == "1"
        assert rows[1]["overall_reject"] == "2/3"

    def test_upower_rows_track_counter(self):
        rows = upower_sweep_rows([1], [2, 3, 4])
        assert [r["max_counter"] for r in rows] == [1, 3, 2]

    def test_rows_independent_of_thread_count(self, monkeypatch):
        monkeypatch.setenv("QCA_THREADS", "1")
        serial = power_sweep_rows([1, 2], [1, 2, 3])
        monkeypatch.setenv("QCA_THREADS", "4")
        threaded = power_sweep_rows([1, 2], [1, 2, 3])
        assert serial == threaded


class TestRendering:
    def test_csv_quotes_exact_columns(self):
        text = render_csv(power_sweep_rows([1], [1]))
        member_line = text.splitlines()[1]
        assert '"1/1024"' in member_line
        assert '"yes"' in member_line

    def test_json_round_trips(self):
        import json

        rows = upower_sweep_rows([1], [3])
        parsed = json.loads(render_json(rows))
        assert parsed[0]["overall_reject"] == "5400/5659"

    def test_figures_written(self, tmp_path):
        out = tmp_path / "table.csv"
        rows = upower_sweep_rows([1], [2, 3, 4, 5])
        paths = render_figures("upower", rows, str(out))
        assert all(os.path.exists(p) and os.path.getsize(p) > 0 for p in paths)
        rows = power_sweep_rows([1, 2], [1, 2])
        paths = render_figures("power", rows, str(out))
        assert all(p.endswith(".png") for p in paths)
