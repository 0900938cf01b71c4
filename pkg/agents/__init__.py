"""
Pipeline stage agents for the classification run.

- BaseAgent: Abstract base class with timing, statistics and error capture
- Enumerator: admissible candidate types
- Extender: third- and fourth-layer continuations
- Exclusion: fact-driven exclusion rules
- Reporter: tables, lists and discrepancies
"""
