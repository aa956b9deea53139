"""surjcat: exact combinatorics of surjection categories.

Layers, bottom to top:

- ``finset``     — standard finite sets and surjections
- ``epi_cat``    — the truncated surjection categories and their slices
- ``fin_coprod`` — finite-coproduct completion; pullbacks via good subsets
- ``span_cat``   — spans, iso classes, span composition
- ``burnside``   — Burnside rings, marks, augmentation-ideal arithmetic
- ``mackey``     — Mackey functors: axioms, representables, restrictions
- ``cube``       — cube-shaped diagrams of rational vector spaces and
                   right-Kan-extension criteria; degree bookkeeping
- ``cli``        — command-line front end
"""

__version__ = "0.1.0"
