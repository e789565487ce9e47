"""pinsim: hedging-feedback ("pinning") price dynamics for option expiration days."""

__version__ = "1.0.0"
