"""qtsym: exact symmetric-function computations over Q(q, t).

Subpackages follow the computational layers: scalar field arithmetic,
partition combinatorics, the sparse multivariate polynomial engine,
the abstract ring of symmetric functions, the polynomial families,
the difference-operator hierarchy, and the identity verification battery.
"""

__version__ = "0.1.0"
