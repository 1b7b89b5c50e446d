"""
Gallery module for canon-symmetry.

Ready-made problems covering free motion, constant force, the oscillator,
central force, the Galilean boost and a point-transformation case.
"""

from .main import gallery_names, load_gallery, load_gallery_problem

__all__ = [
    'gallery_names',
    'load_gallery',
    'load_gallery_problem'
]
