"""
Version information for pySpecLab
"""

__version__ = "0.1.0"
__version_info__ = (0, 1, 0)

# Build metadata (optional)
__author__ = "pySpecLab contributors"
__description__ = "pySpecLab - numerical lab for spectra, comparison geometry and convex smoothing on hyperbolic ends"
