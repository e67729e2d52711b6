"""Hecke eigensystems over imaginary quadratic fields of arbitrary class group.

Exact ideal, class-group, and character arithmetic; eigensystem algebra
(multiplicative relations, twisting, self-twist / inner-twist / base-change
screening); recovery of full eigensystems from principal-operator
eigenvalue oracles; and old/new dimension bookkeeping, verified against
published tables for Q(sqrt(-17)).
"""

__version__ = "0.1.0"
