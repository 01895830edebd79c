"""Tunneling in the self-trapped Bose-Hubbard dimer."""
__version__ = "0.1.0"
