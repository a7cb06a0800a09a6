from services.errors.base import NumericalError


class NotHermitianError(NumericalError):
    """Matrix handed to a Hermitian solver is not Hermitian"""
    pass


class FactorizationError(NumericalError):
    """Cholesky factorization failed even after the jitter retry (matrix is indefinite or singular)"""
    pass


class ConjugateSymmetryError(NumericalError):
    """Augmented solution lost its [a; conj(a)] structure beyond tolerance"""
    pass
