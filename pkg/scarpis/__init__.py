"""
Scarpis Hadamard - Main Package
"""
# Version of the scarpis package
__version__ = "0.1.0"
