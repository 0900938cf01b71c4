"""
Computational services for the classification toolkit.

This package contains:
- group_core / group_catalog: finite groups and the catalog of holonomy candidates
- char_theory: character tables, rational characters and decompositions
- bounds: p-part bounds and minimal simple groups
- lattice_cohomology: integral lattices, H^2 of cyclic groups, Bieberbach test
- nilpotent: free nilpotent groups and endomorphism verification
- enumeration / exclusion / report: the classification pipeline
- workflow: LangGraph orchestration of the pipeline stages
"""
