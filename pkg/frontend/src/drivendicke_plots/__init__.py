"""Figure rendering for driven-dicke CSV artifacts."""

from .render import KINDS, FigureRecipe, build_figure, render
from .schema import SCHEMAS, SchemaMismatch, Table, load_table

__all__ = [
    "KINDS",
    "SCHEMAS",
    "FigureRecipe",
    "SchemaMismatch",
    "Table",
    "build_figure",
    "load_table",
    "render",
]
