"""
Photoeffect Package
First-order photoelectric effect for the hydrogen atom: limiting amplitudes,
far-field photocurrent and Einstein's rules
"""

__version__ = "1.0.0"
