"""
Tests package for SynthQuant API.
"""
