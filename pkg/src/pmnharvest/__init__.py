"""Harvesting toolkit linking new thesaurus descriptors to predecessor SCRs."""

from pmnharvest.matching import KERNEL

__version__ = "0.1.0"
__all__ = ["KERNEL", "__version__"]
