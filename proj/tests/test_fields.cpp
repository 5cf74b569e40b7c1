/**
 * @file test_fields.cpp
 * @brief Grid, field arithmetic, quadrature norms, difference operators and CSV I/O.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "vvlab/field_io.hpp"
#include "vvlab/norms.hpp"
#include "vvlab/operators.hpp"

using namespace vvlab;

namespace {

constexpr double kPi = std::numbers::pi;

Grid unit_strip(int nx = 64, int ny = 65) { return Grid(nx, ny, 2.0 * kPi, 1.0); }

double observed_order(double e_coarse, double e_fine) { return std::log2(e_coarse / e_fine); }

}  // namespace

// ============================================================================
// Grid
// ============================================================================

TEST(Grid, UniformSpacingAndWallRow) {
    Grid g(32, 17, 2.0 * kPi, 4.0);
    EXPECT_DOUBLE_EQ(g.h1(), 2.0 * kPi / 32);
    EXPECT_DOUBLE_EQ(g.h2(), 4.0 / 16);
    EXPECT_EQ(g.x2(0), 0.0);
    EXPECT_EQ(g.x2(16), 4.0);
    EXPECT_TRUE(g.uniform());
}

TEST(Grid, RejectsTinyOrDegenerateGrids) {
    EXPECT_THROW(Grid(4, 16), std::invalid_argument);
    EXPECT_THROW(Grid(16, 7), std::invalid_argument);
    EXPECT_THROW(Grid(16, 16, 0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(Grid(16, 16, 1.0, 1.0, TopBoundary::free_slip, 0.9), std::invalid_argument);
    EXPECT_THROW(top_boundary_from_string("slip"), std::invalid_argument);
}

TEST(Grid, GeometricGradingHitsBothEnds) {
    Grid g(16, 33, 2.0 * kPi, 4.0, TopBoundary::free_slip, 1.1);
    EXPECT_EQ(g.x2(0), 0.0);
    EXPECT_EQ(g.x2(32), 4.0);
    for (int j = 1; j + 1 < 32; ++j) EXPECT_NEAR(g.cell(j) / g.cell(j - 1), 1.1, 1e-12);
}

TEST(Grid, FirstCellConstructorMatchesRequest) {
    Grid g = Grid::with_first_cell(16, 129, 2.0 * kPi, 4.0, TopBoundary::no_slip, 1e-3);
    EXPECT_NEAR(g.h2(), 1e-3, 1e-12);
    EXPECT_EQ(g.top_bc(), TopBoundary::no_slip);
}

TEST(Grid, RefinementKeepsTotalStretch) {
    Grid g(16, 33, 2.0 * kPi, 4.0, TopBoundary::free_slip, 1.05);
    Grid f = g.refined();
    EXPECT_EQ(f.nx(), 32);
    EXPECT_EQ(f.ny(), 66);
    EXPECT_NEAR(f.max_h2() / f.min_h2(), g.max_h2() / g.min_h2(), 1e-9 * g.max_h2() / g.min_h2());
}

TEST(Grid, TrapezoidWeightsSumToHeight) {
    Grid g(16, 40, 2.0 * kPi, 3.0, TopBoundary::free_slip, 1.07);
    double s = 0.0;
    for (double w : g.x2_weights()) s += w;
    EXPECT_NEAR(s, 3.0, 1e-14);
}

// ============================================================================
// Norms
// ============================================================================

TEST(Norms, ConstantFieldNorms) {
    ScalarField one(unit_strip(), 1.0);
    EXPECT_NEAR(lp_norm(one, 1.0), 2.0 * kPi, 1e-13);
    EXPECT_NEAR(lp_norm(one, 2.0), std::sqrt(2.0 * kPi), 1e-13);
    EXPECT_EQ(lp_norm(one, kInf), 1.0);
}

TEST(Norms, SineSquaredIntegral) {
    const Grid g = unit_strip();
    auto f = ScalarField::sample(g, [](double x1, double) { return std::sin(x1); });
    EXPECT_NEAR(lp_norm(f, 2.0), std::sqrt(kPi), 1e-8);
}

TEST(Norms, RejectsExponentBelowOne) {
    ScalarField one(unit_strip(), 1.0);
    EXPECT_THROW(lp_norm(one, 0.5), std::invalid_argument);
    EXPECT_THROW(layer_norm(one, 0.5, 0.5, 1.0), std::invalid_argument);
}

TEST(Norms, RejectsNonFiniteField) {
    ScalarField f(unit_strip(), 1.0);
    f(3, 3) = std::nan("");
    EXPECT_THROW(lp_norm(f, 2.0), std::invalid_argument);
}

TEST(Norms, LayerNormExamples) {
    const Grid g = unit_strip(64, 64);  // 0.5 falls inside a cell
    ScalarField one(g, 1.0);
    EXPECT_NEAR(layer_norm(one, 0.5, 2.0, 1.0), std::sqrt(2.0 * kPi) * 0.5, 1e-13);
    EXPECT_NEAR(layer_norm(one, 0.5, 1.0, 1.0), kPi, 1e-13);
    auto x2 = ScalarField::sample(g, [](double, double y) { return y; });
    EXPECT_NEAR(layer_norm(x2, 0.5, kInf, kInf), 0.5, 1e-15);
    EXPECT_THROW(layer_norm(one, 0.0, 1.0, 1.0), std::invalid_argument);
}

TEST(Norms, LayerNormSubCellCorrectionIsExactForLinearProfiles) {
    const Grid g(16, 11, 2.0 * kPi, 1.0);
    auto f = ScalarField::sample(g, [](double, double y) { return 1.0 + 3.0 * y; });
    const double rho = 0.437;
    // int_0^rho (1 + 3y) dy, exact for the trapezoid rule on linear data
    EXPECT_NEAR(layer_norm(f, rho, 1.0, 1.0), 2.0 * kPi * (rho + 1.5 * rho * rho), 1e-13);
}

TEST(Norms, FullHeightLayerMatchesPlainNorm) {
    const Grid g(32, 41, 2.0 * kPi, 2.0, TopBoundary::free_slip, 1.04);
    auto f = ScalarField::sample(g, [](double x1, double y) { return std::cos(x1) * std::exp(-y) + 0.3 * y; });
    for (double p : {1.0, 2.0, 3.0, kInf}) {
        const double a = layer_norm(f, g.height_x2(), p, p);
        const double b = lp_norm(f, p);
        EXPECT_NEAR(a, b, 1e-10 * b) << "p=" << p;
    }
}

TEST(Norms, MonotoneAndHolderConsistent) {
    const Grid g = unit_strip(32, 33);
    auto f = ScalarField::sample(g, [](double x1, double y) { return std::sin(3 * x1) * y; });
    auto h = ScalarField::sample(g, [](double x1, double y) { return 1.5 * std::abs(std::sin(3 * x1)) * y + 0.1; });
    for (double p : {1.0, 2.0, 4.0, kInf}) EXPECT_LE(lp_norm(f, p), lp_norm(h, p) + 1e-12);
    const double l1 = lp_norm(f, 1.0);
    EXPECT_LE(l1, lp_norm(f, 2.0) * std::sqrt(g.area()) * (1.0 + 1e-10));
}

TEST(Norms, LayerSplitIsAdditive) {
    const Grid g(16, 50, 2.0 * kPi, 4.0, TopBoundary::free_slip, 1.05);
    auto f = ScalarField::sample(g, [](double x1, double y) { return (2.0 + std::sin(x1)) * std::exp(-y * y); });
    const double full = integrate(f);
    for (double rho : {0.0, 1e-4, 0.3, 1.234, 4.0}) {
        EXPECT_NEAR(integrate_below(f, rho) + integrate_above(f, rho), full, 1e-13 * std::abs(full)) << rho;
    }
    EXPECT_EQ(integrate_below(f, 0.0), 0.0);
}

TEST(Norms, LayerCutCountsCells) {
    const Grid g(16, 11, 2.0 * kPi, 1.0);
    const LayerCut c = layer_cut(g, 0.25);
    EXPECT_EQ(c.last, 2);
    EXPECT_NEAR(c.fraction, 0.5, 1e-12);
    EXPECT_NEAR(c.cells(), 2.5, 1e-12);
}

// ============================================================================
// Operators
// ============================================================================

TEST(Operators, FornbergWeightsReproduceClassicStencils) {
    const double nodes[] = {-1.0, 0.0, 1.0};
    const auto w1 = fd_weights(0.0, nodes, 1);
    EXPECT_NEAR(w1[0], -0.5, 1e-15);
    EXPECT_NEAR(w1[1], 0.0, 1e-15);
    EXPECT_NEAR(w1[2], 0.5, 1e-15);
    const auto w2 = fd_weights(0.0, nodes, 2);
    EXPECT_NEAR(w2[0], 1.0, 1e-15);
    EXPECT_NEAR(w2[1], -2.0, 1e-15);
    EXPECT_NEAR(w2[2], 1.0, 1e-15);
}

TEST(Operators, LinearShearHasUnitVorticity) {
    const Grid g = unit_strip(16, 17);
    VelocityField v(ScalarField::sample(g, [](double, double y) { return y; }), ScalarField(g));
    const auto div = divergence(v);
    const auto om = vorticity(v);
    EXPECT_LT(div.max_abs(), 1e-13);
    for (double w : om.values()) EXPECT_NEAR(w, 1.0, 1e-12);
}

TEST(Operators, SineDivergence) {
    double prev = 0.0;
    for (int n : {32, 64, 128}) {
        const Grid g = unit_strip(n, n + 1);
        VelocityField v(ScalarField::sample(g, [](double x1, double) { return std::sin(x1); }), ScalarField(g));
        auto err = divergence(v) - ScalarField::sample(g, [](double x1, double) { return std::cos(x1); });
        const double e = err.max_abs();
        if (prev > 0.0) EXPECT_GT(observed_order(prev, e), 1.9);
        prev = e;
    }
}

TEST(Operators, DivergenceOfPerpGradientConvergesAtSecondOrder) {
    // psi = sin(x1) x2^2, v = (d2 psi, -d1 psi), sampled exactly
    std::vector<double> errs;
    for (int n : {16, 32, 64, 128}) {
        const Grid g(n, n + 1, 2.0 * kPi, 1.0, TopBoundary::free_slip, 1.02);
        VelocityField v(ScalarField::sample(g, [](double x1, double y) { return 2.0 * std::sin(x1) * y; }),
                        ScalarField::sample(g, [](double x1, double y) { return -std::cos(x1) * y * y; }));
        errs.push_back(divergence(v).max_abs());
    }
    for (std::size_t k = 1; k < errs.size(); ++k) EXPECT_GT(observed_order(errs[k - 1], errs[k]), 1.9);
}

TEST(Operators, NonuniformSecondDerivativeIsSecondOrder) {
    // A family of graded grids with fixed total stretch, as produced by refined().
    std::vector<double> errs;
    Grid g(8, 33, 2.0 * kPi, 2.0, TopBoundary::free_slip, 1.05);
    for (int level = 0; level < 3; ++level, g = g.refined()) {
        auto f = ScalarField::sample(g, [](double, double y) { return std::exp(-y) * std::cos(2 * y); });
        const auto exact = ScalarField::sample(
            g, [](double, double y) { return std::exp(-y) * (4.0 * std::sin(2 * y) - 3.0 * std::cos(2 * y)); });
        errs.push_back((d22(f) - exact).max_abs());
    }
    for (std::size_t k = 1; k < errs.size(); ++k) EXPECT_GT(observed_order(errs[k - 1], errs[k]), 1.8);
}

TEST(Operators, GradientSquaredOfLinearField) {
    const Grid g = unit_strip(16, 17);
    VelocityField v(ScalarField::sample(g, [](double, double y) { return 2.0 * y; }),
                    ScalarField::sample(g, [](double, double y) { return -3.0 * y; }));
    for (double w : grad_squared(v).values()) EXPECT_NEAR(w, 13.0, 1e-11);
}

// ============================================================================
// CSV
// ============================================================================

TEST(FieldIO, RoundTripIsExact) {
    const Grid g(8, 9, 2.0 * kPi, 4.0, TopBoundary::free_slip, 1.1);
    auto f = ScalarField::sample(g, [](double x1, double y) { return std::sin(x1) / (1.0 + y) + 1e-300; });
    std::stringstream ss;
    write_field_csv(ss, f);
    const std::string text = ss.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "i,j,x1,x2,value");
    const ScalarField back = read_field_csv(ss, g);
    for (std::size_t k = 0; k < f.values().size(); ++k) EXPECT_EQ(back.values()[k], f.values()[k]);
}

TEST(FieldIO, RejectsMismatchedGridAndMissingNodes) {
    const Grid g(8, 9);
    ScalarField f(g, 1.0);
    std::stringstream ss;
    write_field_csv(ss, f);
    std::stringstream wrong(ss.str());
    EXPECT_THROW(read_field_csv(wrong, Grid(8, 10)), std::runtime_error);
    std::string truncated = ss.str();
    truncated.resize(truncated.rfind("\n", truncated.size() - 2) + 1);
    std::stringstream partial(truncated);
    EXPECT_THROW(read_field_csv(partial, g), std::runtime_error);
    std::stringstream bad_header("x,y\n");
    EXPECT_THROW(read_field_csv(bad_header, g), std::runtime_error);
}
