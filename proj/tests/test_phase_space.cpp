#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "vtwa/metrics.hpp"
#include "vtwa/phase_space.hpp"

using namespace vtwa;

namespace {
const double kS = std::sqrt(0.5);
}

TEST_CASE("quartic model accepts the harmonic limit and rejects bad couplings") {
    CHECK(QuarticModel(0.0).g() == 0.0);
    CHECK_THROWS_AS(QuarticModel(-1e-3), std::invalid_argument);
    CHECK_THROWS_AS(QuarticModel(std::numeric_limits<double>::infinity()), std::invalid_argument);
    CHECK_THROWS_AS(QuarticModel(std::nan("")), std::invalid_argument);
    CHECK(QuarticModel(1.0).hamiltonian(1.0, 1.0) == doctest::Approx(1.25));
    CHECK(QuarticModel(1.0).force(1.0) == -2.0);
}

TEST_CASE("gaussian state enforces the uncertainty relation") {
    CHECK_NOTHROW(GaussianWignerState(0, 0, kS, kS));
    CHECK_NOTHROW(GaussianWignerState(0, 0, 0.5, 1.0));
    CHECK_THROWS_AS(GaussianWignerState(0, 0, 0.5, 0.9), std::invalid_argument);
    CHECK_THROWS_AS(GaussianWignerState(0, 0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GaussianWignerState(0, 0, -1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(GaussianWignerState(std::nan(""), 0, 1.0, 1.0), std::invalid_argument);
    CHECK(GaussianWignerState::coherent(1, 0).is_minimal());
    CHECK_FALSE(GaussianWignerState(0, 0, 1.0, 1.0).is_minimal());
}

TEST_CASE("gaussian_eval values") {
    const auto st = GaussianWignerState::coherent(1.0, 0.0);
    CHECK(gaussian_eval(st, {1.0, 0.0}) == doctest::Approx(1.0 / kPi).epsilon(1e-15));
    CHECK(gaussian_eval(st, {1.0 + 50.0 * kS, 0.0}) < 1e-300);
    const GaussianWignerState wide(0.3, -0.7, 0.9, 1.4);
    for (double a : {0.1, 0.7, 2.0})
        for (double b : {-1.3, 0.4})
            CHECK(gaussian_eval(wide, {0.3 + a, -0.7 + b}) ==
                  doctest::Approx(gaussian_eval(wide, {0.3 - a, -0.7 - b})).epsilon(1e-14));
    CHECK(gaussian_eval(wide, {5, 5}) > 0.0);
}

TEST_CASE("phase grid construction and refinement") {
    CHECK_THROWS_AS(PhaseGrid(1, 0, 16, 0, 1, 16), std::invalid_argument);
    CHECK_THROWS_AS(PhaseGrid(0, 1, 7, 0, 1, 16), std::invalid_argument);
    const auto g = PhaseGrid::default_grid();
    CHECK(g.n_x() == 256);
    CHECK(g.x(0) == -6.0);
    CHECK(g.x(255) == doctest::Approx(6.0).epsilon(1e-15));
    const auto r = g.refined(2);
    CHECK(r.n_x() == 511);
    for (std::size_t i : {0u, 17u, 255u}) CHECK(r.x(2 * i) == doctest::Approx(g.x(i)).epsilon(1e-14));
    const auto node = g.node(g.index(3, 5));
    CHECK(node.x == g.x(3));
    CHECK(node.p == g.p(5));
}

TEST_CASE("grid quadrature of gaussians") {
    const GaussianWignerState st(1.0, 0.0, kS, kS);
    const PhaseGrid g(1 - 6 * kS, 1 + 6 * kS, 256, -6 * kS, 6 * kS, 256);
    CHECK(integrate_grid(sample_on_grid(st, g)) == doctest::Approx(1.0).epsilon(1e-6));

    const PhaseGrid odd(1 - 6 * kS, 1 + 6 * kS, 257, -6 * kS, 6 * kS, 257);
    CHECK(integrate_grid(sample_on_grid(st, odd), QuadratureRule::Simpson) ==
          doctest::Approx(1.0).epsilon(1e-6));

    CHECK(integrate_grid(WignerField(g)) == 0.0);

    const PhaseGrid wide(-8, 8, 256, -8, 8, 256);
    auto a = sample_on_grid(GaussianWignerState::coherent(-3, 0), wide);
    const auto b = sample_on_grid(GaussianWignerState::coherent(3, 0), wide);
    for (std::size_t k = 0; k < a.values.size(); ++k) a.values[k] = 0.5 * a.values[k] + 0.5 * b.values[k];
    CHECK(integrate_grid(a) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("purity of gaussian states follows 1/(2 sx sp)") {
    const PhaseGrid g(-8, 8, 256, -8, 8, 256);
    CHECK(purity(sample_on_grid(GaussianWignerState::coherent(0.5, -0.5), g)) ==
          doctest::Approx(1.0).epsilon(1e-5));
    CHECK(purity(sample_on_grid(GaussianWignerState(0, 0, 1.0, 1.0), g)) ==
          doctest::Approx(0.5).epsilon(1e-5));
    CHECK(purity(sample_on_grid(GaussianWignerState(0, 0, 0.6, 1.5), g)) ==
          doctest::Approx(1.0 / 1.8).epsilon(1e-5));
}

TEST_CASE("ensemble sampling moments") {
    const auto st = GaussianWignerState::coherent(1.0, 0.0);
    const std::size_t n = 1000000;
    const auto ens = sample_ensemble(st, n, 99);
    const auto m = ens.mean();
    const auto v = ens.variance();
    CHECK(std::abs(m.x - 1.0) < 1e-2);
    CHECK(std::abs(v.x - 0.5) < 0.02 * 0.5);

    // Law of large numbers: within 5 standard errors.
    const double se_mean = kS / std::sqrt(static_cast<double>(n));
    const double se_var = 0.5 * std::sqrt(2.0 / static_cast<double>(n));
    CHECK(std::abs(m.x - 1.0) < 5 * se_mean);
    CHECK(std::abs(m.p) < 5 * se_mean);
    CHECK(std::abs(v.x - 0.5) < 5 * se_var);
    CHECK(std::abs(v.p - 0.5) < 5 * se_var);
}

TEST_CASE("anisotropic sampling uses both widths") {
    const GaussianWignerState st(-0.5, 2.0, 0.4, 2.0);
    const auto ens = sample_ensemble(st, 200000, 5);
    const auto v = ens.variance();
    CHECK(v.x == doctest::Approx(0.16).epsilon(0.02));
    CHECK(v.p == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("sampling is a pure function of seed and index") {
    const auto st = GaussianWignerState::coherent(0.0, 0.0);
    const auto a = sample_ensemble(st, 1, 7);
    const auto b = sample_ensemble(st, 1, 7);
    CHECK(a.points[0] == b.points[0]);

    const auto c = sample_ensemble(st, 100, 8);
    const auto d = sample_ensemble(st, 100, 9);
    bool all_equal = true;
    for (std::size_t i = 0; i < 100; ++i) all_equal = all_equal && c.points[i] == d.points[i];
    CHECK_FALSE(all_equal);

    const auto serial = sample_ensemble(st, 10007, 3, 1);
    const auto threaded = sample_ensemble(st, 10007, 3, 4);
    CHECK(serial.points == threaded.points);
    CHECK(serial.points[1234] == sample_point(st, 3, 1234));
    CHECK_THROWS_AS(sample_ensemble(st, 0, 1), std::invalid_argument);
}

TEST_CASE("counter uniforms stay in (0, 1]") {
    double lo = 1.0, hi = 0.0, sum = 0.0;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        const double u = counter_uniform(11, i);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo > 0.0);
    CHECK(hi <= 1.0);
    CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
    CHECK(counter_uniform(11, 5) == counter_uniform(11, 5));
    CHECK(counter_uniform(11, 5) != counter_uniform(12, 5));
}

TEST_CASE("time series invariants") {
    CHECK_THROWS_AS(TimeSeries({0.0, 1.0, 1.0}), std::invalid_argument);
    TimeSeries s({0.0, 0.5, 1.0});
    s.add_column("a", {1, 2, 3});
    CHECK_THROWS_AS(s.add_column("b", {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(s.add_column("a", {1, 2, 3}), std::invalid_argument);
    CHECK(s.has_column("a"));
    CHECK(s.column("a")[2] == 3);
    CHECK_THROWS_AS(s.column("missing"), std::out_of_range);
}
