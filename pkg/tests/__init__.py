"""
Test suite for the classification toolkit.
"""
