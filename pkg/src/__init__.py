"""
Wristcast - stress/OCD event prediction from wrist-worn E4 signals
Architecture: Vertical Slice
"""

__version__ = "0.1.0"
