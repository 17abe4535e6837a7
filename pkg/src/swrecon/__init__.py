"""Information reconciliation for correlated binary sources.

One-way syndrome coding with LDPC matrices, the interactive Cascade
protocol, density-evolution analysis, and a leakage-accounting simulator.
"""

__version__ = "0.1.0"
