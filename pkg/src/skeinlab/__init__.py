"""Kauffman bracket skein algebras, quantum tori and classical shadows at roots of unity."""

__version__ = "0.1.0"
# bumped whenever a sign, scale or orientation convention changes
CONVENTIONS_VERSION = "3"
