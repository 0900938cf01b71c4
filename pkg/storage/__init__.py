"""
Data access layer.

This package contains:
- fact_table: curated external facts with provenance
- input_formats: crystal data and endomorphism spec readers
"""
