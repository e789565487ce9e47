"""
Test package for pinsim.
"""
