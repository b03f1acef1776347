"""Exact bijections and identity checks for four-primary-color partitions."""

from .core import ColoredPart, alpha, beta, combine, delta, gg, lex_gt, parse_part, parse_parts, format_part, format_parts, tri_gt
from .partitions import Family, detect_forbidden, stats, validate
from .bressoud import phi, psi
from .quaternary import QuaternaryDecomposition, from_quaternary, to_quaternary

__all__ = [
    "ColoredPart", "Family", "QuaternaryDecomposition",
    "alpha", "beta", "combine", "delta", "detect_forbidden", "format_part", "format_parts",
    "from_quaternary", "gg", "lex_gt", "parse_part", "parse_parts", "phi", "psi",
    "stats", "to_quaternary", "tri_gt", "validate",
]
