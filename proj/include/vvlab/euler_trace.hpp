#pragma once

#include <string>

namespace vvlab {

enum class TraceKind { zero, constant, cosine };
enum class TimeModulation { steady, exp_decay };

std::string to_string(TimeModulation m);
TimeModulation time_modulation_from_string(const std::string& name);

/// Wall trace of the Euler tangential velocity,
///   U(x1, t) = U0 + A cos(k x1) g(t),   g in {1, exp(-t)},
/// with analytic derivatives. `zero` and `constant` are the degenerate cases.
class EulerTrace {
public:
    EulerTrace() = default;
    static EulerTrace zero();
    static EulerTrace constant(double U0);
    /// k must be a non-negative integer so the trace is 2pi-periodic.
    static EulerTrace cosine(double amplitude, int k, TimeModulation modulation = TimeModulation::steady,
                             double offset = 0.0);

    TraceKind kind() const noexcept { return kind_; }
    double offset() const noexcept { return offset_; }
    double amplitude() const noexcept { return amplitude_; }
    int wavenumber() const noexcept { return k_; }
    TimeModulation modulation() const noexcept { return modulation_; }
    bool identically_zero() const noexcept;
    bool steady() const noexcept;

    double value(double x1, double t) const noexcept;
    double d1(double x1, double t) const noexcept;
    double d11(double x1, double t) const noexcept;
    double d111(double x1, double t) const noexcept;
    double dt(double x1, double t) const noexcept;
    double d1t(double x1, double t) const noexcept;

    /// sup over x1 of |U|, |d1 U|, |d11 U|.
    double sup_abs(double t) const noexcept;
    double sup_d1(double t) const noexcept;
    double sup_d11(double t) const noexcept;

    std::string describe() const;

private:
    double g(double t) const noexcept;
    double g_prime(double t) const noexcept;

    TraceKind kind_ = TraceKind::zero;
    double offset_ = 0.0;
    double amplitude_ = 0.0;
    int k_ = 0;
    TimeModulation modulation_ = TimeModulation::steady;
};

}  // namespace vvlab
