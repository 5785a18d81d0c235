"""
Utility functions for the golden Tonnetz engine.
"""

import hashlib
import logging
from fractions import Fraction
from pathlib import Path

from .exceptions import ToneParseError

logger = logging.getLogger('golden_tonnetz.engine')

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def parse_rational(text):
    """
    Parse a rational written as "p/q" or "p".

    Args:
        text: Rational string or int

    Returns:
        Fraction: exact value
    """
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


def format_rational(value):
    """Render a Fraction as "p/q" (always with a denominator)"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def content_hash(raw_bytes):
    """Short sha256 digest used to tag every output derived from a data file"""
    return hashlib.sha256(raw_bytes).hexdigest()[:16]


def parse_extent(text):
    """
    Parse an extent written as "CxR".

    Args:
        text: e.g. "10x6"

    Returns:
        tuple: (columns, rows)
    """
    parts = str(text).lower().split("x")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ToneParseError(str(text), 0, "extent must look like CxR")
    columns, rows = int(parts[0]), int(parts[1])
    if columns < 1 or rows < 1:
        raise ToneParseError(str(text), 0, "extent must be at least 1x1")
    return columns, rows
