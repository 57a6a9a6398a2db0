"""floerkit: exact-arithmetic tools for Heegaard Floer naturality at desk scale."""

__version__ = "0.1.0"
