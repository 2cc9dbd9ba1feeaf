"""conjtensor - conjugate complex polynomials and structured complex tensors"""

__version__ = "1.0.0"
__description__ = "Forms, tensors, eigenpairs and Banach-type equalities over the complex field"
