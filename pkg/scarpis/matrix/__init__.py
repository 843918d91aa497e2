"""
Bit-packed sign matrices and exact Hadamard verification.
"""
