"""qtft: exact-arithmetic engine for 2D topological field theory algebra.

Subpackages:

* ``exactalg``  -- rationals, sparse polynomials, the graded Novikov ring
* ``fock``      -- twisted-boson Fock space, Virasoro and Witt operators
* ``frobenius`` -- finite-rank Frobenius-algebra data and the point theory
* ``tft``       -- stable graphs, gluing arithmetic, amplitude evaluation
* ``descend``   -- descendant variables, Schur Q-functions, graded dimensions
* ``cli``       -- command-line front end and verification certificates
"""

__version__ = "0.1.0"
