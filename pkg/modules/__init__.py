"""
pySpecLab Modules Package

Numerical libraries (geometry, comparison, localization, spectra, casimir,
mollifier, spectral) plus the config, experiment catalog and runner that drive
them.
"""
