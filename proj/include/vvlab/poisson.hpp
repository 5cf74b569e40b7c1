#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "vvlab/field.hpp"

namespace vvlab {

/// Solves Laplacian(psi) = omega on the periodic strip with psi = 0 on the
/// wall row and psi = top_value on the top row. Discretization: FFT in x1
/// with the modified wavenumber of the three-point stencil, and one
/// tridiagonal (nonuniform three-point) solve in x2 per Fourier mode, so the
/// discrete operator is exactly d11 + d22 of the difference stencils.
///
/// The boundary rows of omega are ignored. A solver owns FFTW plans and
/// scratch space; use one instance per thread.
class PoissonSolver {
public:
    explicit PoissonSolver(const Grid& grid);
    ~PoissonSolver();
    PoissonSolver(const PoissonSolver&) = delete;
    PoissonSolver& operator=(const PoissonSolver&) = delete;

    const Grid& grid() const noexcept { return grid_; }

    void solve(const ScalarField& omega, double top_value, ScalarField& psi);
    ScalarField solve(const ScalarField& omega, double top_value);

private:
    struct Plans;
    Grid grid_;
    std::unique_ptr<Plans> plans_;
    std::vector<double> lower_, diag_, upper_;  // x2 Laplacian rows, interior j
    std::vector<double> wavenumber_sq_;        // modified wavenumbers
    std::vector<std::complex<double>> spectrum_;  // (nx/2+1) x ny
    std::vector<std::complex<double>> scratch_c_;
    std::vector<double> scratch_d_;
};

/// One-shot convenience wrapper.
ScalarField poisson_solve(const ScalarField& omega, double top_value = 0.0);

}  // namespace vvlab
