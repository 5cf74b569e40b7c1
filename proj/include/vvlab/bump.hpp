#pragma once

namespace vvlab {

/// The localization bump: eta(r) = c exp(-1/(1 - s^2)), s = 2r - 3, on (1, 2)
/// and zero elsewhere. The amplitude c is fixed so that the mass over [1, 2]
/// equals 1/sqrt(pi); any other amplitude is rejected.
class BumpSpec {
public:
    BumpSpec();
    /// Accepts only the normalized amplitude (relative tolerance 1e-12).
    explicit BumpSpec(double amplitude);

    static double normalized_amplitude();

    double amplitude() const noexcept { return amplitude_; }

    double value(double r) const noexcept;
    double prime(double r) const noexcept;
    double second(double r) const noexcept;
    /// Integral of eta over [1, r]; exactly 1/sqrt(pi) for r >= 2.
    double cumulative(double r) const;

    /// Mass over [1, 2] by adaptive quadrature of value().
    double mass() const;

    double sup_prime() const;
    double sup_second() const;
    /// C_eta = sup|eta'| + sup|eta''|.
    double c_eta() const { return sup_prime() + sup_second(); }

private:
    double amplitude_;
};

/// R(x2) = (1/sqrt(pi) - int_1^x2 eta) + z erfc(z) - exp(-z^2)/sqrt(pi) with
/// z = x2/delta; the profile of the normal corrector component.
double r_profile_scaled(double x2, double delta, const BumpSpec& bump);
/// Same with the Prandtl thickness delta = sqrt(4 nu t).
double r_profile(double x2, double t, double nu, const BumpSpec& bump);

}  // namespace vvlab
