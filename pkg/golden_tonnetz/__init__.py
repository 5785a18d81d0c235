"""Golden Tonnetz: tones on golden triangles and gnomons."""

__version__ = "0.1.0"
