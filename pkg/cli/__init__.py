"""
Command-line interface for the classification toolkit.
"""
