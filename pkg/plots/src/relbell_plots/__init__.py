"""Figure rendering for CHSH sweep CSV output."""

from .figure import (
    BOUND_LABEL,
    COLUMNS,
    EmptyDataError,
    FigureSpec,
    FORMATS,
    GROUP_COLUMNS,
    SchemaMismatchError,
    group_label,
    make_figure,
    read_rows,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "BOUND_LABEL",
    "COLUMNS",
    "EmptyDataError",
    "FORMATS",
    "FigureSpec",
    "GROUP_COLUMNS",
    "SchemaMismatchError",
    "group_label",
    "make_figure",
    "read_rows",
    "render",
]
