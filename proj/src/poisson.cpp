#include "vvlab/poisson.hpp"

#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace vvlab {
namespace {

// FFTW's planner is not thread-safe; executing distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct PoissonSolver::Plans {
    int nx = 0;
    double* real = nullptr;
    fftw_complex* freq = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    explicit Plans(int n) : nx(n) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        real = fftw_alloc_real(static_cast<std::size_t>(nx));
        freq = fftw_alloc_complex(static_cast<std::size_t>(nx / 2 + 1));
        forward = fftw_plan_dft_r2c_1d(nx, real, freq, FFTW_ESTIMATE);
        backward = fftw_plan_dft_c2r_1d(nx, freq, real, FFTW_ESTIMATE);
        if (!forward || !backward) throw std::runtime_error("FFTW plan creation failed");
    }
    ~Plans() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
        fftw_free(real);
        fftw_free(freq);
    }
};

PoissonSolver::PoissonSolver(const Grid& grid) : grid_(grid), plans_(std::make_unique<Plans>(grid.nx())) {
    const int nx = grid.nx();
    const int ny = grid.ny();
    const int modes = nx / 2 + 1;
    const double h1 = grid.h1();
    wavenumber_sq_.resize(modes);
    for (int k = 0; k < modes; ++k) wavenumber_sq_[k] = (2.0 - 2.0 * std::cos(k * h1)) / (h1 * h1);

    lower_.assign(ny, 0.0);
    diag_.assign(ny, 0.0);
    upper_.assign(ny, 0.0);
    for (int j = 1; j + 1 < ny; ++j) {
        const double hm = grid.cell(j - 1);
        const double hp = grid.cell(j);
        const double w = 0.5 * (hm + hp);
        lower_[j] = 1.0 / (hm * w);
        upper_[j] = 1.0 / (hp * w);
        diag_[j] = -(lower_[j] + upper_[j]);
    }
    spectrum_.resize(static_cast<std::size_t>(modes) * ny);
    scratch_c_.resize(ny);
    scratch_d_.resize(ny);
}

PoissonSolver::~PoissonSolver() = default;

void PoissonSolver::solve(const ScalarField& omega, double top_value, ScalarField& psi) {
    if (!(omega.grid() == grid_)) throw std::invalid_argument("vorticity field is not on the solver grid");
    if (!(psi.grid() == grid_)) psi = ScalarField(grid_);
    const int nx = grid_.nx();
    const int ny = grid_.ny();
    const int modes = nx / 2 + 1;
    auto spec = [&](int k, int j) -> std::complex<double>& { return spectrum_[static_cast<std::size_t>(j) * modes + k]; };

    for (int j = 1; j + 1 < ny; ++j) {
        const auto row = omega.row(j);
        std::memcpy(plans_->real, row.data(), sizeof(double) * nx);
        fftw_execute(plans_->forward);
        for (int k = 0; k < modes; ++k) spec(k, j) = {plans_->freq[k][0], plans_->freq[k][1]};
    }

    // Thomas algorithm per mode on the interior rows 1..ny-2.
    for (int k = 0; k < modes; ++k) {
        const double lam = wavenumber_sq_[k];
        const std::complex<double> top = k == 0 ? std::complex<double>(top_value * nx, 0.0) : 0.0;
        // Dirichlet values enter through the first and last interior rows.
        auto rhs = [&](int j) {
            std::complex<double> r = spec(k, j);
            if (j == ny - 2) r -= upper_[j] * top;
            return r;
        };
        auto& cp = scratch_d_;
        auto& dp = scratch_c_;
        {
            const int j = 1;
            const double b = diag_[j] - lam;
            cp[j] = upper_[j] / b;
            dp[j] = rhs(j) / b;
        }
        for (int j = 2; j + 1 < ny; ++j) {
            const double b = diag_[j] - lam - lower_[j] * cp[j - 1];
            cp[j] = upper_[j] / b;
            dp[j] = (rhs(j) - lower_[j] * dp[j - 1]) / b;
        }
        spec(k, ny - 2) = dp[ny - 2];
        for (int j = ny - 3; j >= 1; --j) spec(k, j) = dp[j] - cp[j] * spec(k, j + 1);
    }

    const double inv_n = 1.0 / nx;
    for (int j = 1; j + 1 < ny; ++j) {
        for (int k = 0; k < modes; ++k) {
            plans_->freq[k][0] = spec(k, j).real();
            plans_->freq[k][1] = spec(k, j).imag();
        }
        fftw_execute(plans_->backward);
        auto row = psi.row(j);
        for (int i = 0; i < nx; ++i) row[i] = plans_->real[i] * inv_n;
    }
    for (double& v : psi.row(0)) v = 0.0;
    for (double& v : psi.row(ny - 1)) v = top_value;
}

ScalarField PoissonSolver::solve(const ScalarField& omega, double top_value) {
    ScalarField psi(grid_);
    solve(omega, top_value, psi);
    return psi;
}

ScalarField poisson_solve(const ScalarField& omega, double top_value) {
    PoissonSolver solver(omega.grid());
    return solver.solve(omega, top_value);
}

}  // namespace vvlab
