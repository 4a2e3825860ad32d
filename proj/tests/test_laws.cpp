#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "agglm/laws.hpp"
#include "agglm/quadrature.hpp"

using namespace agglm;

namespace {

constexpr double kPi = 3.14159265358979323846;

// two-sided KS statistic of sorted samples against a cdf
template <class Cdf>
double ks_statistic(std::vector<double> xs, Cdf cdf) {
    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    size_t n = xs.size();
    for (size_t i = 0; i < n; ++i) {
        double c = cdf(xs[i]);
        d = std::max(d, std::abs(c - double(i) / n));
        d = std::max(d, std::abs(c - double(i + 1) / n));
    }
    return d;
}

}  // namespace

TEST_CASE("discrete radial law normalization") {
    // int_0^1 (1-rho)^d drho = 1/(1+d)
    CHECK(RadialLaw(Flavor::Discrete, 0.5).normalization() ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-8));
    CHECK(RadialLaw(Flavor::Discrete, 0.0).normalization() ==
          doctest::Approx(1.0).epsilon(1e-8));
    CHECK(RadialLaw(Flavor::Discrete, -0.5).normalization() ==
          doctest::Approx(2.0).epsilon(1e-8));
    CHECK(RadialLaw(Flavor::Discrete, 1.0).density(0.5) ==
          doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("radial density integrates to one") {
    for (double d : {-0.5, 0.3, 2.0}) {
        RadialLaw law(Flavor::Discrete, d);
        // density is singular at rho = 1; evaluate via the endpoint distance there
        double mass = quad::tanh_sinh(
            [&](double x, double dist) {
                return law.density(x >= 0.5 ? 1.0 - dist : x);
            },
            0.0, 1.0);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
    RadialLaw cont(Flavor::Continuous, 0.5, ShapeFn::exp_decay(1.0));
    double mass = quad::exp_sinh([&](double r) { return cont.density(r); });
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("radial law rejects bad parameters") {
    CHECK_THROWS_AS(RadialLaw(Flavor::Discrete, -1.0), std::invalid_argument);
    // flat phi on [0,inf) is not integrable
    CHECK_THROWS_AS(RadialLaw(Flavor::Continuous, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(RadialLaw(Flavor::Discrete, 0.5).density(1.5), OutOfSupport);
}

TEST_CASE("radial cdf and quantile are inverse") {
    RadialLaw law(Flavor::Discrete, 0.5);
    // closed form: P(rho <= x) = 1 - (1-x)^{3/2}
    for (double x : {0.1, 0.5, 0.9, 0.999})
        CHECK(law.cdf(x) ==
              doctest::Approx(1.0 - std::pow(1.0 - x, 1.5)).epsilon(1e-6));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double x = u01(rng);
        CHECK(std::abs(law.cdf(x) - (1.0 - std::pow(1.0 - x, 1.5))) < 1e-6);
    }
}

TEST_CASE("radial sampling matches the cdf (KS)") {
    RadialLaw law(Flavor::Discrete, 0.5);
    std::mt19937_64 rng(42);
    std::vector<double> xs(20000);
    for (auto& x : xs) x = law.sample(rng);
    double d = ks_statistic(xs, [&](double x) { return law.cdf(x); });
    CHECK(d < 1.95 / std::sqrt(20000.0));  // ~0.001 level
}

TEST_CASE("continuous radial sampling concentrates per the tail") {
    RadialLaw law(Flavor::Continuous, 0.5, ShapeFn::exp_decay(2.0));
    std::mt19937_64 rng(7);
    std::vector<double> xs(20000);
    for (auto& x : xs) x = law.sample(rng);
    double d = ks_statistic(xs, [&](double x) { return law.cdf(x); });
    CHECK(d < 1.95 / std::sqrt(20000.0));
}

TEST_CASE("angular law: dirac endpoint") {
    AngularLaw dirac(1.0, kPi / 3.0);
    CHECK(dirac.is_dirac());
    CHECK_THROWS_AS(dirac.raw_density(0.5), DiracDensityQuery);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) CHECK(dirac.sample(rng) == kPi / 3.0);
    CHECK_THROWS_AS(AngularLaw(1.5, 0.0), std::invalid_argument);
}

TEST_CASE("angular law: diffuse density normalizes and samples") {
    AngularLaw law(0.5, kPi / 3.0);
    double mass = quad::split_tanh_sinh([&](double x) { return law.density(x); },
                                        -kPi, kPi, {kPi / 3.0});
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-7));
    std::mt19937_64 rng(5);
    std::vector<double> xs(20000);
    for (auto& x : xs) x = law.sample(rng);
    double d = ks_statistic(xs, [&](double x) { return law.cdf(x); });
    CHECK(d < 1.95 / std::sqrt(20000.0));
    CHECK_THROWS_AS(law.density(4.0), OutOfSupport);
}

TEST_CASE("angular law: one-sided support window") {
    AngularLaw law(0.3, 0.0, ShapeFn::constant(), std::pair<double, double>{0.0, 5.0});
    double mass = quad::tanh_sinh(
        [&](double x, double dist) { return law.density(x < 2.5 ? dist : x); }, 0.0,
        5.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("mixed angular law splits mass between atoms and diffuse pieces") {
    MixedAngularLaw mixed({{0.25, 2.0}},
                          {{0.75, AngularLaw(0.5, 0.0, ShapeFn::constant(),
                                             std::pair<double, double>{-1.0, 1.0})}});
    CHECK(mixed.atom_mass() == doctest::Approx(0.25));
    std::mt19937_64 rng(3);
    int at_atom = 0;
    const int n = 40000;
    for (int i = 0; i < n; ++i)
        if (mixed.sample(rng) == 2.0) ++at_atom;
    CHECK(double(at_atom) / n == doctest::Approx(0.25).epsilon(0.05));
    CHECK_THROWS_AS(MixedAngularLaw({{-1.0, 0.0}}, {}), InvalidMixture);
}

TEST_CASE("suggest_ma_count") {
    CHECK(suggest_ma_count(0.5) >= 40);            // 0.5^40 ~ 9e-13
    CHECK(suggest_ma_count(0.5) <= 60);
    CHECK(suggest_ma_count(0.99) > suggest_ma_count(0.5));
}
