#include <doctest.h>

#include <cmath>

#include "agglm/classifier.hpp"

using namespace agglm;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("AR(1), independent innovations: exists iff d > 0, alpha = 1 - d") {
    for (double d : {0.05, 0.2, 0.5, 0.95}) {
        auto r = classify_ar1(d, 0.0, InnovationRegime::Independent);
        CHECK(r.exists);
        CHECK(r.long_memory == (d < 1.0));
        REQUIRE(r.singularities.size() == 1);
        CHECK(r.singularities[0].frequency == 0.0);
        CHECK(r.singularities[0].alpha == doctest::Approx(1.0 - d));
    }
    CHECK_FALSE(classify_ar1(-0.25, 0.0, InnovationRegime::Independent).exists);
    CHECK_FALSE(classify_ar1(0.0, 0.0, InnovationRegime::Independent).exists);
    auto no_lm = classify_ar1(1.5, 0.0, InnovationRegime::Independent);
    CHECK(no_lm.exists);
    CHECK_FALSE(no_lm.long_memory);
    // pole at -rho puts the singularity at pi
    auto at_pi = classify_ar1(0.5, kPi, InnovationRegime::Independent);
    CHECK(at_pi.singularities[0].frequency == doctest::Approx(kPi));
}

TEST_CASE("AR(1), common innovation: exists iff d > -1/2, alpha = -2d") {
    auto r = classify_ar1(-0.25, 0.0, InnovationRegime::Common);
    CHECK(r.exists);
    CHECK(r.long_memory);
    CHECK(r.singularities[0].alpha == doctest::Approx(0.5));
    CHECK_FALSE(classify_ar1(-0.6, 0.0, InnovationRegime::Common).exists);
    auto pos = classify_ar1(0.3, 0.0, InnovationRegime::Common);
    CHECK(pos.exists);
    CHECK_FALSE(pos.long_memory);  // LM iff d < 0
}

TEST_CASE("interaction regimes reduce to the two spectral extremes") {
    auto weak = classify_ar1(0.5, 0.0, InnovationRegime::InteractiveWeak);
    auto indep = classify_ar1(0.5, 0.0, InnovationRegime::Independent);
    CHECK(weak.exists == indep.exists);
    CHECK(weak.singularities[0].alpha == doctest::Approx(indep.singularities[0].alpha));
    auto strong = classify_ar1(-0.25, 0.0, InnovationRegime::InteractiveStrong);
    auto common = classify_ar1(-0.25, 0.0, InnovationRegime::Common);
    CHECK(strong.exists == common.exists);
    CHECK(strong.singularities[0].alpha ==
          doctest::Approx(common.singularities[0].alpha));
}

TEST_CASE("AR(2) complex pair, diffuse theta: alpha = beta - d") {
    auto r = classify_ar2(Ar2ComplexPair{0.5, 0.9, kPi / 3}, InnovationRegime::Independent);
    CHECK(r.exists);
    CHECK(r.long_memory);
    REQUIRE(r.singularities.size() == 2);  // +- theta0
    CHECK(r.singularities[0].frequency == doctest::Approx(-kPi / 3));
    CHECK(r.singularities[1].frequency == doctest::Approx(kPi / 3));
    CHECK(r.singularities[1].alpha == doctest::Approx(0.4));

    // beta - d >= 1: integrability fails
    CHECK_FALSE(classify_ar2(Ar2ComplexPair{-0.5, 0.9, kPi / 3},
                             InnovationRegime::Independent)
                    .exists);
    // beta <= d: long memory disappears although the process exists
    auto gone = classify_ar2(Ar2ComplexPair{0.5, 0.0, kPi / 3},
                             InnovationRegime::Independent);
    CHECK(gone.exists);
    CHECK_FALSE(gone.long_memory);
}

TEST_CASE("AR(2) complex Dirac pair at an interior frequency") {
    auto r = classify_ar2(Ar2ComplexPair{0.5, 1.0, kPi / 3}, InnovationRegime::Independent);
    CHECK(r.exists);
    CHECK(r.long_memory);
    CHECK(r.singularities[1].alpha == doctest::Approx(0.5));  // n - 1 - d, n = 2
    // at the boundary the pair degenerates and the exponent doubles up
    auto b = classify_ar2(Ar2ComplexPair{2.5, 1.0, 0.0}, InnovationRegime::Independent);
    CHECK(b.exists);
    CHECK(b.singularities[0].alpha == doctest::Approx(0.5));  // 2n - 1 - d, n = 2
    CHECK_FALSE(classify_ar2(Ar2ComplexPair{0.5, 1.0, 0.0},
                             InnovationRegime::Independent)
                    .exists);
}

TEST_CASE("AR(2) real poles at both boundary frequencies") {
    auto r = classify_ar2(Ar2RealPoles{0.5, 0.7, 0.0, kPi}, InnovationRegime::Independent);
    CHECK(r.exists);
    REQUIRE(r.singularities.size() == 2);
    CHECK(r.singularities[0].alpha == doctest::Approx(0.5));  // at 0
    CHECK(r.singularities[1].alpha == doctest::Approx(0.3));  // at pi
    // same frequency: exponents add
    auto same = classify_ar2(Ar2RealPoles{0.5, 0.7, 0.0, 0.0}, InnovationRegime::Independent);
    CHECK(same.exists);
    CHECK(same.singularities[0].alpha == doctest::Approx(0.8));
    CHECK_FALSE(classify_ar2(Ar2RealPoles{0.2, 0.3, 0.0, 0.0},
                             InnovationRegime::Independent)
                    .exists);  // 0.8 + 0.7 >= 1... exponents (1-d) sum to 1.5
}

TEST_CASE("reduction consistency: classify_arp reproduces the specializations") {
    for (int i = 0; i <= 100; ++i) {
        double d = -0.9 + 2.8 * i / 100.0;
        for (auto regime : {InnovationRegime::Independent, InnovationRegime::Common}) {
            auto a = classify_ar1(d, 0.0, regime);
            auto b = classify_arp({{d, 1.0, 0.0, 1, false}}, regime);
            CHECK(a.exists == b.exists);
            CHECK(a.long_memory == b.long_memory);
            REQUIRE(a.singularities.size() == b.singularities.size());
            for (size_t k = 0; k < a.singularities.size(); ++k) {
                CHECK(a.singularities[k].frequency == b.singularities[k].frequency);
                CHECK(a.singularities[k].alpha == b.singularities[k].alpha);
            }
        }
    }
    for (int i = 0; i <= 100; ++i) {
        double d = -0.9 + 2.8 * i / 100.0;
        double beta = -1.0 + 2.0 * (i % 11) / 10.0;
        auto a = classify_ar2(Ar2ComplexPair{d, beta, kPi / 3},
                              InnovationRegime::Independent);
        auto b = classify_arp({{d, beta, kPi / 3, 1, true}},
                              InnovationRegime::Independent);
        CHECK(a.exists == b.exists);
        CHECK(a.long_memory == b.long_memory);
    }
}

TEST_CASE("LM report invariants") {
    std::vector<LMReport> reports = {
        classify_ar1(0.5, 0.0, InnovationRegime::Independent),
        classify_ar1(-0.25, 0.0, InnovationRegime::Common),
        classify_ar2(Ar2ComplexPair{0.5, 0.9, kPi / 3}, InnovationRegime::Independent),
        classify_oup({{0.5, 1.0, 0.0, 1, false}, {0.5, 1.0, 3.0, 1, true}},
                     InnovationRegime::Independent),
    };
    for (const auto& r : reports) {
        if (r.long_memory) CHECK(r.exists);
        for (const auto& s : r.singularities) {
            CHECK(s.alpha > 0.0);
            CHECK(s.alpha < 1.0);
        }
    }
}

TEST_CASE("OU classifier") {
    // Corollary 1 scenario: real n=2 d=0.5 and complex Dirac pair at tau0=3
    auto r = classify_oup({{0.5, 1.0, 0.0, 1, false}, {0.5, 1.0, 3.0, 1, true}},
                          InnovationRegime::Independent);
    CHECK(r.exists);
    CHECK(r.long_memory);
    REQUIRE(r.singularities.size() == 3);
    CHECK(r.singularities[0].frequency == doctest::Approx(-3.0));
    CHECK(r.singularities[1].frequency == doctest::Approx(0.0));
    CHECK(r.singularities[2].frequency == doctest::Approx(3.0));
    for (const auto& s : r.singularities) CHECK(s.alpha == doctest::Approx(0.5));
    CHECK_FALSE(r.existence_numeric_check);

    // diffuse tau law: closed form covers only the singular frequencies
    auto diffuse = classify_oup({{0.5, 0.9, 3.0, 1, true}}, InnovationRegime::Independent);
    CHECK(diffuse.existence_numeric_check);
}

TEST_CASE("invalid classifier inputs fail with an explanatory condition") {
    auto bad_d = classify_arp({{-1.5, 1.0, 0.0, 1, false}},
                              InnovationRegime::Independent);
    CHECK_FALSE(bad_d.exists);
    CHECK(bad_d.condition.find("d > -1") != std::string::npos);
    auto bad_beta = classify_arp({{0.5, 1.5, kPi / 3, 1, true}},
                                 InnovationRegime::Independent);
    CHECK_FALSE(bad_beta.exists);
    CHECK(bad_beta.condition.find("beta") != std::string::npos);
}
