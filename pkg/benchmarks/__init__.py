"""asv benchmarks of the rasbench kernels and solver runs."""
