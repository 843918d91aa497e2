"""
Configuration models and loaders.
"""
