"""gswilson: exact Wilson-line matrix coefficients in Goncharov-Shen
cluster coordinates for classical adjoint groups, with planar-network
path expansion as an independent oracle."""

__version__ = "0.1.0"
