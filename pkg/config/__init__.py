"""
Configuration package.

- settings: Config aggregate with group, character, cohomology, enumeration
  and logging sections
"""
