#include "vvlab/bump.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "vvlab/special.hpp"

namespace vvlab {
namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

// exp(-1/(1 - s^2)) and its first two s-derivatives; zero outside (-1, 1).
struct Mollifier {
    double m, dm, ddm;
};

Mollifier mollifier(double s) {
    if (!(std::abs(s) < 1.0)) return {0.0, 0.0, 0.0};
    const double q = (1.0 - s) * (1.0 + s);
    const double g = -1.0 / q;
    if (g < -700.0) return {0.0, 0.0, 0.0};
    const double m = std::exp(g);
    const double g1 = -2.0 * s / (q * q);
    const double g2 = -2.0 * (1.0 + 3.0 * s * s) / (q * q * q);
    return {m, m * g1, m * (g1 * g1 + g2)};
}

// Cumulative integral of the mollifier from -1, tabulated on uniform panels
// with 20-point Gauss-Legendre per panel. The integrand is analytic inside
// (-1, 1) and flat to all orders at the ends, so each panel is resolved to
// rounding; a partial panel costs one more 20-point rule.
class MollifierTable {
public:
    static constexpr int kPanels = 512;

    MollifierTable() : prefix_(kPanels + 1, 0.0) {
        for (int k = 0; k < kPanels; ++k) prefix_[k + 1] = prefix_[k] + panel(edge(k), edge(k + 1));
    }

    double total() const { return prefix_.back(); }

    // Integral over [-1, s].
    double up_to(double s) const {
        if (s <= -1.0) return 0.0;
        if (s >= 1.0) return total();
        const int k = std::min(kPanels - 1, static_cast<int>((s + 1.0) / width()));
        return prefix_[k] + panel(edge(k), s);
    }

private:
    static double width() { return 2.0 / kPanels; }
    static double edge(int k) { return -1.0 + k * width(); }
    static double panel(double a, double b) {
        if (b <= a) return 0.0;
        return gauss<double, 20>::integrate([](double s) { return mollifier(s).m; }, a, b);
    }

    std::vector<double> prefix_;
};

const MollifierTable& table() {
    static const MollifierTable t;
    return t;
}

double compute_amplitude() { return kInvSqrtPi / (0.5 * table().total()); }

struct Sups {
    double prime = 0.0;
    double second = 0.0;
};

Sups compute_sups(double amplitude) {
    // Dense sampling of the derivatives on the support; the extrema are
    // interior and smooth, so 2e5 samples resolve them to ~1e-10 relative.
    Sups out;
    const int n = 200000;
    for (int k = 1; k < n; ++k) {
        const double s = -1.0 + 2.0 * k / n;
        const Mollifier m = mollifier(s);
        out.prime = std::max(out.prime, std::abs(2.0 * amplitude * m.dm));
        out.second = std::max(out.second, std::abs(4.0 * amplitude * m.ddm));
    }
    return out;
}

const Sups& sups_for_normalized() {
    static const Sups s = compute_sups(BumpSpec::normalized_amplitude());
    return s;
}

}  // namespace

double BumpSpec::normalized_amplitude() {
    static const double c = compute_amplitude();
    return c;
}

BumpSpec::BumpSpec() : amplitude_(normalized_amplitude()) {}

BumpSpec::BumpSpec(double amplitude) : amplitude_(amplitude) {
    const double c = normalized_amplitude();
    if (!(std::abs(amplitude - c) <= 1e-12 * c)) {
        throw std::invalid_argument(fmt::format(
            "bump amplitude {:.17g} breaks the 1/sqrt(pi) mass normalization (required {:.17g})", amplitude, c));
    }
}

double BumpSpec::value(double r) const noexcept { return amplitude_ * mollifier(2.0 * r - 3.0).m; }

double BumpSpec::prime(double r) const noexcept { return 2.0 * amplitude_ * mollifier(2.0 * r - 3.0).dm; }

double BumpSpec::second(double r) const noexcept { return 4.0 * amplitude_ * mollifier(2.0 * r - 3.0).ddm; }

double BumpSpec::cumulative(double r) const {
    if (r <= 1.0) return 0.0;
    if (r >= 2.0) return kInvSqrtPi;
    const double s = 2.0 * r - 3.0;
    const double below = table().up_to(s);
    // Take the complement near the top of the support so that the value
    // approaches 1/sqrt(pi) without cancellation error.
    if (s <= 0.0) return 0.5 * amplitude_ * below;
    return kInvSqrtPi - 0.5 * amplitude_ * (table().total() - below);
}

double BumpSpec::mass() const {
    return gauss_kronrod<double, 61>::integrate([this](double r) { return value(r); }, 1.0, 2.0, 12, 1e-13);
}

double BumpSpec::sup_prime() const { return sups_for_normalized().prime; }

double BumpSpec::sup_second() const { return sups_for_normalized().second; }

double r_profile_scaled(double x2, double delta, const BumpSpec& bump) {
    if (!(delta > 0.0)) throw std::invalid_argument(fmt::format("profile thickness must be positive, got {}", delta));
    if (x2 < 0.0) throw std::invalid_argument(fmt::format("profile needs x2 >= 0, got {}", x2));
    const double z = x2 / delta;
    return (kInvSqrtPi - bump.cumulative(x2)) + (z * erfc_eval(z) - kInvSqrtPi * std::exp(-z * z));
}

double r_profile(double x2, double t, double nu, const BumpSpec& bump) {
    if (!(t > 0.0)) throw std::invalid_argument(fmt::format("profile needs t > 0, got {}", t));
    if (!(nu > 0.0)) throw std::invalid_argument(fmt::format("profile needs nu > 0, got {}", nu));
    return r_profile_scaled(x2, std::sqrt(4.0 * nu * t), bump);
}

}  // namespace vvlab
