"""
Hadamard matrix constructions (Paley, Scarpis extension).
"""
