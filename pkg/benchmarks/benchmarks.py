# Write the benchmarking functions here.
# See "Writing benchmarks" in the airspeed velocity docs for more information.
# https://asv.readthedocs.io/en/stable/
import numpy as np

from rasbench import (
    SolverConfig,
    cg_solve,
    cholesky_factorize,
    cholesky_solve,
    laplace_system,
    make_partition,
    run_async,
    run_sync,
    setup,
    spmv,
)


class Spmv:
    params = [64, 256]
    param_names = ["grid_n"]

    def setup(self, grid_n):
        self.system = laplace_system(grid_n)
        self.x = np.random.randn(grid_n ** 2)

    def time_spmv(self, grid_n):
        spmv(self.system.matrix, self.x)


class Cholesky:
    params = [32, 64]
    param_names = ["grid_n"]

    def setup(self, grid_n):
        self.system = laplace_system(grid_n)
        self.factor = cholesky_factorize(self.system.matrix)

    def time_factorize(self, grid_n):
        cholesky_factorize(self.system.matrix)

    def time_solve(self, grid_n):
        cholesky_solve(self.factor, self.system.rhs)


class Ras:
    params = (["sync", "async"], [2, 4])
    param_names = ["mode", "overlap"]
    timeout = 300

    def setup(self, mode, overlap):
        self.system = laplace_system(32)
        self.partition = make_partition(self.system, "rcb", 4)
        self.config = SolverConfig(mode=mode, tau=1e-6)

    def time_run(self, mode, overlap):
        runtimes = setup(self.system, self.partition, overlap, self.config)
        solve = run_sync if mode == "sync" else run_async
        solve(runtimes, config=self.config)


class LocalCg:
    params = [32, 64]
    param_names = ["grid_n"]

    def setup(self, grid_n):
        self.system = laplace_system(grid_n)

    def time_cg(self, grid_n):
        cg_solve(self.system.matrix, self.system.rhs, 1e-8, 10 * grid_n ** 2)
