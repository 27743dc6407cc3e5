"""Graph semiring operations, exact stable set numbers and certified Shannon capacity bounds."""

__version__ = "0.1.0"
