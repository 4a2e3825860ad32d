#include "agglm/poles.hpp"

#include <algorithm>
#include <cmath>

namespace agglm {

namespace {
constexpr double kPi = 3.14159265358979323846;

AngularLaw dirac_at(double x0) { return AngularLaw(1.0, x0); }
}  // namespace

PoleGroupSpec PoleGroupSpec::real_discrete(int sign, int m, RadialLaw radial) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("real_discrete: sign must be +-1");
    if (m < 1) throw std::invalid_argument("multiplicity must be >= 1");
    if (radial.flavor() != Flavor::Discrete)
        throw std::invalid_argument("real_discrete: radial law must be discrete");
    return PoleGroupSpec{GroupKind::RealDiscrete, m, std::move(radial),
                         dirac_at(sign > 0 ? 0.0 : kPi)};
}

PoleGroupSpec PoleGroupSpec::complex_discrete(int m, RadialLaw radial, AngularLaw angular) {
    if (m < 1) throw std::invalid_argument("multiplicity must be >= 1");
    if (radial.flavor() != Flavor::Discrete)
        throw std::invalid_argument("complex_discrete: radial law must be discrete");
    return PoleGroupSpec{GroupKind::ComplexPairDiscrete, m, std::move(radial),
                         std::move(angular)};
}

PoleGroupSpec PoleGroupSpec::real_continuous(int m, RadialLaw radial) {
    if (m < 1) throw std::invalid_argument("multiplicity must be >= 1");
    if (radial.flavor() != Flavor::Continuous)
        throw std::invalid_argument("real_continuous: radial law must be continuous");
    return PoleGroupSpec{GroupKind::RealContinuous, m, std::move(radial), dirac_at(0.0)};
}

PoleGroupSpec PoleGroupSpec::complex_continuous(int m, RadialLaw radial, AngularLaw angular) {
    if (m < 1) throw std::invalid_argument("multiplicity must be >= 1");
    if (radial.flavor() != Flavor::Continuous)
        throw std::invalid_argument("complex_continuous: radial law must be continuous");
    return PoleGroupSpec{GroupKind::ComplexPairContinuous, m, std::move(radial),
                         std::move(angular)};
}

int PoleSample::degree() const {
    int p = 0;
    for (const auto& g : groups) p += is_complex_pair(g.kind) ? 2 * g.multiplicity : g.multiplicity;
    return p;
}

std::vector<std::complex<double>> PoleSample::roots() const {
    std::vector<std::complex<double>> ys;
    for (const auto& g : groups) {
        if (flavor == Flavor::Discrete) {
            if (g.kind == GroupKind::RealDiscrete) {
                ys.emplace_back(g.radius * std::cos(g.angle), 0.0);
            } else {
                ys.emplace_back(g.radius * std::cos(g.angle), g.radius * std::sin(g.angle));
                ys.emplace_back(g.radius * std::cos(g.angle), -g.radius * std::sin(g.angle));
            }
        } else {
            if (g.kind == GroupKind::RealContinuous) {
                ys.emplace_back(g.radius, 0.0);
            } else {
                ys.emplace_back(g.radius, g.angle);
                ys.emplace_back(g.radius, -g.angle);
            }
        }
    }
    return ys;
}

double PoleSample::max_radius() const {
    double m = 0.0;
    for (const auto& g : groups) {
        double r = flavor == Flavor::Discrete
                       ? g.radius
                       : std::hypot(g.radius, is_complex_pair(g.kind) ? g.angle : 0.0);
        m = std::max(m, r);
    }
    return m;
}

PoleSample draw_pole_sample(const std::vector<PoleGroupSpec>& groups, Flavor flavor,
                            std::mt19937_64& rng) {
    PoleSample s;
    s.flavor = flavor;
    s.groups.reserve(groups.size());
    for (const auto& g : groups) {
        if (is_discrete(g.kind) != (flavor == Flavor::Discrete))
            throw std::invalid_argument("draw_pole_sample: group kind does not match flavor");
        PoleSample::Group gs;
        gs.kind = g.kind;
        gs.multiplicity = g.multiplicity;
        gs.radius = g.radial.sample(rng);
        gs.angle = g.angular.sample(rng);
        s.groups.push_back(gs);
    }
    return s;
}

ArCoefficients expand_polynomial(const PoleSample& sample, double sigma, double imag_tol) {
    if (sample.flavor != Flavor::Discrete)
        throw std::invalid_argument("expand_polynomial: discrete flavor required");
    for (const auto& g : sample.groups)
        if (!(g.radius < 1.0))
            throw std::invalid_argument("expand_polynomial: pole radius must be < 1");

    std::vector<std::complex<double>> poly = {1.0};
    auto mul_linear = [&poly](std::complex<double> y) {
        // multiply by (1 - y s)
        poly.push_back(0.0);
        for (size_t i = poly.size() - 1; i >= 1; --i) poly[i] -= y * poly[i - 1];
    };
    for (const auto& g : sample.groups) {
        std::complex<double> y(g.radius * std::cos(g.angle), g.radius * std::sin(g.angle));
        for (int j = 0; j < g.multiplicity; ++j) {
            mul_linear(y);
            if (g.kind == GroupKind::ComplexPairDiscrete) mul_linear(std::conj(y));
        }
    }

    double scale = 0.0;
    for (const auto& c : poly) scale = std::max(scale, std::abs(c));
    ArCoefficients out;
    out.sigma = sigma;
    out.a.resize(poly.size() - 1);
    for (size_t i = 1; i < poly.size(); ++i) {
        if (std::abs(poly[i].imag()) > imag_tol * scale)
            throw NonRealCoefficient("expand_polynomial: non-conjugate complex poles");
        out.a[i - 1] = poly[i].real();
    }
    return out;
}

std::vector<double> ma_coefficients(const ArCoefficients& coeffs, int count) {
    if (count < 1) throw std::invalid_argument("ma_coefficients: count must be >= 1");
    const auto& a = coeffs.a;
    const int p = static_cast<int>(a.size());
    std::vector<double> c(count, 0.0);
    c[0] = 1.0;
    for (int j = 1; j < count; ++j) {
        double s = 0.0;
        for (int k = 1; k <= std::min(j, p); ++k) s -= a[k - 1] * c[j - k];
        c[j] = s;
    }
    return c;
}

double continuous_impulse_response(const PoleSample& sample, double t) {
    if (sample.flavor != Flavor::Continuous)
        throw std::invalid_argument("continuous_impulse_response: continuous flavor required");
    if (t < 0) throw std::invalid_argument("continuous_impulse_response: t >= 0 required");
    for (const auto& g : sample.groups)
        if (!(g.radius > 0.0))
            throw std::invalid_argument("continuous_impulse_response: need Re(y) > 0");

    // distinct roots with total multiplicities
    struct Root {
        std::complex<double> y;
        int m;
    };
    std::vector<Root> roots;
    for (const auto& g : sample.groups) {
        std::vector<std::complex<double>> ys;
        ys.emplace_back(g.radius, g.kind == GroupKind::ComplexPairContinuous ? g.angle : 0.0);
        if (g.kind == GroupKind::ComplexPairContinuous) ys.emplace_back(g.radius, -g.angle);
        for (auto y : ys) {
            for (const auto& r : roots)
                if (std::abs(r.y - y) < 1e-9)
                    throw DegeneratePoles("continuous_impulse_response: coincident roots across groups");
            roots.push_back({y, g.multiplicity});
        }
    }

    // c(t) = sum_j sum_{l=0}^{m_j-1} B_j[l] t^{m_j-1-l} e^{-y_j t}/(m_j-1-l)!
    // where B_j is the Taylor series of prod_{k!=j}(s+y_k)^{-m_k} at s = -y_j.
    std::complex<double> value = 0.0;
    for (size_t j = 0; j < roots.size(); ++j) {
        const int mj = roots[j].m;
        std::vector<std::complex<double>> series(mj, 0.0);
        series[0] = 1.0;
        for (size_t k = 0; k < roots.size(); ++k) {
            if (k == j) continue;
            std::complex<double> delta = roots[k].y - roots[j].y;
            // Taylor of (delta + h)^{-m_k}: binom(-m_k, i) delta^{-m_k - i}
            std::vector<std::complex<double>> fac(mj);
            std::complex<double> pw = std::pow(delta, -static_cast<double>(roots[k].m));
            double binom = 1.0;
            for (int i = 0; i < mj; ++i) {
                fac[i] = binom * pw;
                pw /= delta;
                binom *= -static_cast<double>(roots[k].m + i) / (i + 1);
            }
            std::vector<std::complex<double>> next(mj, 0.0);
            for (int i = 0; i < mj; ++i)
                for (int l = 0; i + l < mj; ++l) next[i + l] += series[i] * fac[l];
            series = std::move(next);
        }
        std::complex<double> e = std::exp(-roots[j].y * t);
        for (int l = 0; l < mj; ++l) {
            int pow_t = mj - 1 - l;
            double f = 1.0;
            for (int i = 2; i <= pow_t; ++i) f *= i;
            value += series[l] * std::pow(t, pow_t) * e / f;
        }
    }
    return value.real();
}

}  // namespace agglm
