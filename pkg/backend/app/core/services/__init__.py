"""
Numerical services of the hedging-feedback model.
"""
