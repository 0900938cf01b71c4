"""
Shared utilities.

This package contains:
- errors: toolkit exception hierarchy
- models: dataclasses shared across services, agents and the CLI
- integer_matrix: exact integer linear algebra (Smith form, kernels)
- galois_field / cyclotomic: finite field and cyclotomic arithmetic
"""
