class InconsistencyError(RuntimeError):
    """Two independent computations that must agree did not (an implementation bug)."""
