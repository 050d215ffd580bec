"""Exact quantum-cohomology idempotents, Lagrangian sphere configurations and spectral bookkeeping."""

from .field_tower import QQ, NumberField, Novikov, T, nf_make, render
from .qh_algebra import Algebra, AlgebraPresentation, alg_make, decompose, semisimple

__all__ = ["QQ", "NumberField", "Novikov", "T", "nf_make", "render",
           "Algebra", "AlgebraPresentation", "alg_make", "decompose", "semisimple"]
