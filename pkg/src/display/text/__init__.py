from .report import fmt_cell, format_table, print_section

__all__ = ["fmt_cell", "format_table", "print_section"]
