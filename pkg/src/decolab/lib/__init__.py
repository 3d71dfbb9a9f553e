"""Output emitters shared by the experiment runners."""

from .matrix_dump import read_matrix_dump, write_matrix_dump
from .tables import format_cell, read_csv, write_csv

__all__ = ["write_csv", "read_csv", "format_cell", "write_matrix_dump", "read_matrix_dump"]
