"""
Command-line interface (Typer).
"""
