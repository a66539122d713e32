"""eucrisk: spreadsheet governance toolkit.

Scans workbooks for complexity indicators, scores applications on a
complexity x materiality x control cube with impact clamping, and runs the
surrounding inventory, review, risk-register and KPI lifecycle.
"""

__version__ = "0.1.0"
