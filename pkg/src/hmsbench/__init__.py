"""Executable checks for homological mirror symmetry of weighted projective
planes and lines: exceptional B-side categories, the combinatorial branched
cover, the Fukaya-Seidel side, mutations and numerical monodromy."""
__version__ = "0.1.0"
