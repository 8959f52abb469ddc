"""Super-spline degrees of freedom for C^m-P_k finite elements on n-simplices."""

__version__ = "0.1.0"
