class SolverError(ValueError):
    """
    Raised when an elliptic solve or an iteration cannot produce a trustworthy answer
    incompatible neumann data, contraction ratio >= 1, divergent series, stagnating eigen iteration
    """


class ConformalityError(ValueError):
    """
    Raised when an immersion is degenerate or its chart is not conformal enough for the requested operation
    """


class GaugeError(ValueError):
    """
    Raised when an operation needs coulomb gauged frames and did not get them
    """


class SmallEnergyError(ValueError):
    """
    Raised when the gauss map energy is above the configured epsilon
    """
