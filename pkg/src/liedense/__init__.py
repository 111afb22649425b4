"""Dimension, density and Hausdorff-spectrum computations for free and Demushkin Lie algebras over F_p."""

__version__ = "0.1.0"
