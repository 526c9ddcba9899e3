"""Secret-key-rate simulator for multi-carrier CV-QKD over terahertz links."""

__version__ = "0.1.0"
