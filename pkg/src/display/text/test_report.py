from .report import fmt_cell, format_table


def test_fmt_cell():
    assert fmt_cell(0.123456) == "0.1235"
    assert fmt_cell(float("nan")) == "nan"
    assert fmt_cell(None) == "-"
    assert fmt_cell(True) == "yes"
    assert fmt_cell(12) == "12"


def test_columns_line_up():
    rows = [
        {"mode": "uos", "classifier": "lda", "mean": 0.97},
        {"mode": "standard", "classifier": "plsda", "mean": 0.4512},
    ]
    text = format_table(rows)
    lines = text.splitlines()
    assert lines[0].split() == ["mode", "classifier", "mean"]
    assert lines[2].startswith("uos       lda")
    # numbers are right-aligned on a shared edge
    assert lines[2].endswith("0.9700") and lines[3].endswith("0.4512")
    assert len(lines[2]) == len(lines[3])


def test_empty_table():
    assert format_table([]) == "(no rows)\n"
