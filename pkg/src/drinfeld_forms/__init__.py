"""t-expansions and Hecke operators for Drinfeld modular forms of higher rank."""

__version__ = "0.1.0"
