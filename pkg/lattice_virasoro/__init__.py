"""
Lattice Virasoro - exact discrete complex analysis and current/Virasoro mode checks
for the discrete Gaussian free field on the square lattice
"""

__version__ = '1.0.0'
