"""
Hilbert Coefficient Engine - exact Hilbert coefficients and Chern numbers
"""

__version__ = "1.0.0"
