#pragma once

#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "agglm/laws.hpp"

namespace agglm {

struct NonRealCoefficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegeneratePoles : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GroupKind {
    RealDiscrete,
    ComplexPairDiscrete,
    RealContinuous,
    ComplexPairContinuous
};

inline bool is_discrete(GroupKind k) {
    return k == GroupKind::RealDiscrete || k == GroupKind::ComplexPairDiscrete;
}
inline bool is_complex_pair(GroupKind k) {
    return k == GroupKind::ComplexPairDiscrete || k == GroupKind::ComplexPairContinuous;
}

// One root group of the characteristic polynomial: a real root or a
// complex-conjugate pair, with multiplicity, radius drawn from the radial law
// and angle (or imaginary part) from the angular law.
struct PoleGroupSpec {
    GroupKind kind;
    int multiplicity = 1;
    RadialLaw radial;
    AngularLaw angular;

    // sign = +1: pole at +rho (theta0 = 0, factor 1 - rho s);
    // sign = -1: pole at -rho (theta0 = pi, factor 1 + rho s).
    static PoleGroupSpec real_discrete(int sign, int m, RadialLaw radial);
    static PoleGroupSpec complex_discrete(int m, RadialLaw radial, AngularLaw angular);
    static PoleGroupSpec real_continuous(int m, RadialLaw radial);
    static PoleGroupSpec complex_continuous(int m, RadialLaw radial, AngularLaw angular);

    // theta0 for discrete groups, tau0 for continuous ones
    double center_angle() const { return angular.x0(); }
    // contribution to the polynomial degree p
    int degree() const { return is_complex_pair(kind) ? 2 * multiplicity : multiplicity; }
};

// One draw of the pole parameters for every group of a model.
struct PoleSample {
    struct Group {
        GroupKind kind;
        int multiplicity;
        double radius;  // rho in (0,1) discrete, r > 0 continuous
        double angle;   // theta (discrete) or tau (continuous); fixed for real groups
    };
    Flavor flavor = Flavor::Discrete;
    std::vector<Group> groups;

    int degree() const;
    // roots y_k (discrete) or -y_k locations r +- i tau (continuous), with
    // multiplicity expanded pairs listed once per conjugate
    std::vector<std::complex<double>> roots() const;
    double max_radius() const;
};

struct ArCoefficients {
    std::vector<double> a;  // a_1 .. a_p of A(s) = 1 + sum a_k s^k
    double sigma = 1.0;
};

PoleSample draw_pole_sample(const std::vector<PoleGroupSpec>& groups, Flavor flavor,
                            std::mt19937_64& rng);

// Expands prod (1 - y_k s)^{m_k} over the sampled poles into coefficient form.
// Discrete flavor only. Throws NonRealCoefficient if conjugate pairing is
// broken beyond tolerance.
ArCoefficients expand_polynomial(const PoleSample& sample, double sigma = 1.0,
                                 double imag_tol = 1e-10);

// c_0..c_{count-1} of the MA(inf) expansion A^{-1}(s) = sum c_k s^k.
std::vector<double> ma_coefficients(const ArCoefficients& coeffs, int count);

// Inverse Laplace transform of prod (s + y_k)^{-m_k} at time t >= 0, by
// partial fractions. Continuous flavor only.
double continuous_impulse_response(const PoleSample& sample, double t);

}  // namespace agglm
