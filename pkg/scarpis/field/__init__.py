"""
Finite field arithmetic over GF(p^k).
"""
