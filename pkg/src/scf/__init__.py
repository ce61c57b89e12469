"""Exact kernel for small superconformal algebras: structure constants,
Grassmann realizations, finite Verma-type modules, singular vectors,
C[d]-rank classification and lambda-bracket calculus."""

__version__ = "0.1.0"
