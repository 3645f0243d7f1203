"""Structural QR-code phishing detection toolkit.

Classifies QR codes as legitimate or phishing purely from their
structural anatomy — version, error-correction level, mask, and module
statistics — without ever decoding the embedded payload.
"""

__version__ = "0.1.0"
