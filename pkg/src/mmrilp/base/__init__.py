"""General-purpose modules without dependencies on the solvers."""
