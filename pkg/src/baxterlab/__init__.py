"""Exact enumeration toolkit for the semi-Baxter, Baxter and strong-Baxter
families and their relatives: vincular pattern avoidance, succession-rule
engines, inversion-sequence dynamic programming, closed formulas, formal
series verification, and quarter-plane walk counting, all cross-validated.
"""

__version__ = "0.1.0"
