"""Toric degenerations of quiver flag varieties from ladder diagrams,
with Laurent polynomial mirror candidates and exact verification tools."""

__version__ = "0.1.0"

__all__ = [
    "quivers",
    "ladder",
    "toricgit",
    "laurent",
    "mirror",
    "sagbi",
    "fixtures",
    "exactlp",
]
