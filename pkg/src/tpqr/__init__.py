"""Exact lattice/monodromy arithmetic and numerical fibration checks for
the T_{p,q,r} singularity family."""

__version__ = "0.1.0"

from . import cuspdual, k3glue, milnorfiber, numcheck, quadlattice, sl2z  # noqa: F401
