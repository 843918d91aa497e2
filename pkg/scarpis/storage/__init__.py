"""
Text serialization of sign matrices.
"""
