class WrkhsError(Exception):
    """Root of every error raised by the wrkhs services"""
    pass


class InputError(WrkhsError, ValueError):
    """Bad input from the caller: shapes, specs, files, configs (exit code 2)"""
    exit_code = 2


class NumericalError(WrkhsError, ArithmeticError):
    """A solve or factorization could not be carried out (exit code 3)"""
    exit_code = 3
