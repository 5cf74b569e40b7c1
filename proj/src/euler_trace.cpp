#include "vvlab/euler_trace.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace vvlab {

std::string to_string(TimeModulation m) { return m == TimeModulation::steady ? "steady" : "exp_decay"; }

TimeModulation time_modulation_from_string(const std::string& name) {
    if (name == "steady") return TimeModulation::steady;
    if (name == "exp_decay") return TimeModulation::exp_decay;
    throw std::invalid_argument(fmt::format("unknown time modulation '{}' (steady|exp_decay)", name));
}

EulerTrace EulerTrace::zero() { return {}; }

EulerTrace EulerTrace::constant(double U0) {
    if (!std::isfinite(U0)) throw std::invalid_argument("trace constant must be finite");
    EulerTrace e;
    e.kind_ = TraceKind::constant;
    e.offset_ = U0;
    return e;
}

EulerTrace EulerTrace::cosine(double amplitude, int k, TimeModulation modulation, double offset) {
    if (!std::isfinite(amplitude) || !std::isfinite(offset)) throw std::invalid_argument("trace parameters must be finite");
    if (k < 0) throw std::invalid_argument(fmt::format("trace wavenumber must be >= 0, got {}", k));
    EulerTrace e;
    e.kind_ = TraceKind::cosine;
    e.amplitude_ = amplitude;
    e.k_ = k;
    e.modulation_ = modulation;
    e.offset_ = offset;
    return e;
}

bool EulerTrace::identically_zero() const noexcept {
    return offset_ == 0.0 && (kind_ != TraceKind::cosine || amplitude_ == 0.0);
}

bool EulerTrace::steady() const noexcept {
    return kind_ != TraceKind::cosine || modulation_ == TimeModulation::steady || amplitude_ == 0.0;
}

double EulerTrace::g(double t) const noexcept { return modulation_ == TimeModulation::steady ? 1.0 : std::exp(-t); }

double EulerTrace::g_prime(double t) const noexcept {
    return modulation_ == TimeModulation::steady ? 0.0 : -std::exp(-t);
}

double EulerTrace::value(double x1, double t) const noexcept {
    if (kind_ != TraceKind::cosine) return offset_;
    return offset_ + amplitude_ * std::cos(k_ * x1) * g(t);
}

double EulerTrace::d1(double x1, double t) const noexcept {
    if (kind_ != TraceKind::cosine) return 0.0;
    return -amplitude_ * k_ * std::sin(k_ * x1) * g(t);
}

double EulerTrace::d11(double x1, double t) const noexcept {
    if (kind_ != TraceKind::cosine) return 0.0;
    return -amplitude_ * k_ * k_ * std::cos(k_ * x1) * g(t);
}

double EulerTrace::d111(double x1, double t) const noexcept {
    if (kind_ != TraceKind::cosine) return 0.0;
    return amplitude_ * k_ * k_ * k_ * std::sin(k_ * x1) * g(t);
}

double EulerTrace::dt(double x1, double t) const noexcept {
    if (kind_ != TraceKind::cosine) return 0.0;
    return amplitude_ * std::cos(k_ * x1) * g_prime(t);
}

double EulerTrace::d1t(double x1, double t) const noexcept {
    if (kind_ != TraceKind::cosine) return 0.0;
    return -amplitude_ * k_ * std::sin(k_ * x1) * g_prime(t);
}

double EulerTrace::sup_abs(double t) const noexcept {
    if (kind_ != TraceKind::cosine) return std::abs(offset_);
    return std::abs(offset_) + std::abs(amplitude_) * g(t);
}

double EulerTrace::sup_d1(double t) const noexcept {
    if (kind_ != TraceKind::cosine) return 0.0;
    return std::abs(amplitude_) * k_ * g(t);
}

double EulerTrace::sup_d11(double t) const noexcept {
    if (kind_ != TraceKind::cosine) return 0.0;
    return std::abs(amplitude_) * k_ * k_ * g(t);
}

std::string EulerTrace::describe() const {
    switch (kind_) {
        case TraceKind::zero: return "zero";
        case TraceKind::constant: return fmt::format("constant(U0={:.17g})", offset_);
        case TraceKind::cosine:
            return fmt::format("cosine(A={:.17g}, k={}, modulation={}, U0={:.17g})", amplitude_, k_,
                               to_string(modulation_), offset_);
    }
    return "unknown";
}

}  // namespace vvlab
