"""Certified reconstruction of Pacioli's elevated icosidodecahedron."""

__version__ = "0.1.0"
