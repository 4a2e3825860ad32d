#include "agglm/laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agglm/quadrature.hpp"

namespace agglm {

namespace detail {

SingularTable::SingularTable(const std::function<double(double)>& f, double lo,
                             double hi, int nodes) {
    lo_ = lo;
    hi_ = hi;
    if (!(hi > lo)) {
        mass_ = 0.0;
        return;
    }
    const double width = hi - lo;
    const double s_min = 1e-9 * width;
    s_.resize(nodes);
    s_[0] = lo;
    const double ratio = std::pow(width / s_min, 1.0 / (nodes - 2));
    double g = s_min;
    for (int i = 1; i < nodes; ++i) {
        s_[i] = lo + g;
        g *= ratio;
    }
    s_.back() = hi;

    cdf_.assign(nodes, 0.0);
    // innermost panel may contain the singularity: tanh-sinh; the rest are
    // narrow (ratio ~ 1.005) and smooth: fixed Gauss
    quad::Options opt;
    opt.rel_tol = 1e-12;
    double acc = quad::tanh_sinh([&](double x, double) { return f(x); }, s_[0], s_[1], opt);
    cdf_[1] = acc;
    for (int i = 2; i < nodes; ++i) {
        acc += quad::gauss15(f, s_[i - 1], s_[i]);
        cdf_[i] = acc;
    }
    mass_ = acc;
    if (mass_ > 0) {
        for (auto& c : cdf_) c /= mass_;
        cdf_.back() = 1.0;
        // enforce monotonicity against round-off
        for (size_t i = 1; i < cdf_.size(); ++i)
            if (cdf_[i] < cdf_[i - 1]) cdf_[i] = cdf_[i - 1];
    }
    build_slopes();
}

// Fritsch-Carlson monotone slopes for cubic Hermite interpolation of the CDF.
void SingularTable::build_slopes() {
    size_t n = s_.size();
    slope_.assign(n, 0.0);
    if (n < 2) return;
    std::vector<double> delta(n - 1);
    for (size_t i = 0; i + 1 < n; ++i)
        delta[i] = (cdf_[i + 1] - cdf_[i]) / (s_[i + 1] - s_[i]);
    slope_[0] = delta[0];
    slope_[n - 1] = delta[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            double w1 = 2.0 * (s_[i + 1] - s_[i]) + (s_[i] - s_[i - 1]);
            double w2 = (s_[i + 1] - s_[i]) + 2.0 * (s_[i] - s_[i - 1]);
            slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
}

double SingularTable::hermite(size_t i, double s) const {
    double h = s_[i + 1] - s_[i];
    double t = (s - s_[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    return cdf_[i] * (2 * t3 - 3 * t2 + 1) + h * slope_[i] * (t3 - 2 * t2 + t) +
           cdf_[i + 1] * (-2 * t3 + 3 * t2) + h * slope_[i + 1] * (t3 - t2);
}

double SingularTable::cdf(double s) const {
    if (s <= lo_) return 0.0;
    if (s >= hi_) return 1.0;
    auto it = std::upper_bound(s_.begin(), s_.end(), s);
    size_t i = static_cast<size_t>(it - s_.begin()) - 1;
    if (i + 1 >= s_.size()) return 1.0;
    return std::clamp(hermite(i, s), 0.0, 1.0);
}

double SingularTable::quantile(double u) const {
    if (u <= 0.0) return lo_;
    if (u >= 1.0) return hi_;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    size_t i = static_cast<size_t>(it - cdf_.begin());
    if (i == 0) return lo_;
    if (i >= cdf_.size()) return hi_;
    --i;  // u in [cdf_[i], cdf_[i+1])
    double a = s_[i], b = s_[i + 1];
    if (cdf_[i + 1] <= cdf_[i]) return b;
    // Newton with bisection safeguard on the monotone cubic
    double x = a + (b - a) * (u - cdf_[i]) / (cdf_[i + 1] - cdf_[i]);
    for (int iter = 0; iter < 50; ++iter) {
        double fx = hermite(i, x) - u;
        if (fx > 0)
            b = x;
        else
            a = x;
        double h = s_[i + 1] - s_[i];
        double t = (x - s_[i]) / h;
        double d = (cdf_[i] * (6 * t * t - 6 * t) + h * slope_[i] * (3 * t * t - 4 * t + 1) +
                    cdf_[i + 1] * (6 * t - 6 * t * t) + h * slope_[i + 1] * (3 * t * t - 2 * t)) /
                   h;
        double step = d > 0 ? fx / d : 0.0;
        double xn = x - step;
        if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
        if (std::abs(xn - x) < 1e-16 * (std::abs(x) + 1e-300)) return xn;
        x = xn;
        if (b - a < 1e-18 * (std::abs(b) + 1e-300)) break;
    }
    return x;
}

}  // namespace detail

RadialLaw::RadialLaw(Flavor flavor, double d, ShapeFn phi)
    : flavor_(flavor), d_(d), phi_(std::move(phi)) {
    if (!(d > -1.0)) throw std::invalid_argument("RadialLaw: need d > -1");
    singular_at_one_ = (flavor == Flavor::Discrete);
    if (flavor == Flavor::Discrete) {
        // density in s = 1 - rho on [0,1]
        auto f = [this](double s) { return std::pow(s, d_) * phi_(1.0 - s); };
        table_ = detail::SingularTable(f, 0.0, 1.0);
        norm_ = table_.mass();
    } else {
        auto f = [this](double s) { return std::pow(s, d_) * phi_(s); };
        double total = quad::exp_sinh(f);
        if (!std::isfinite(total) || total <= 0.0)
            throw std::invalid_argument(
                "RadialLaw: continuous density not normalizable (phi tail too heavy)");
        // truncate where the remaining tail is negligible
        double hi = 1.0;
        quad::Options opt;
        opt.rel_tol = 1e-12;
        while (hi < 1e6) {
            double head = quad::tanh_sinh([&](double x, double) { return f(x); }, 0.0, hi, opt);
            if (head >= total * (1.0 - 1e-12)) break;
            hi *= 2.0;
        }
        table_ = detail::SingularTable(f, 0.0, hi);
        norm_ = total;
    }
    if (!(norm_ > 0.0))
        throw std::invalid_argument("RadialLaw: zero total mass (check phi support)");
}

double RadialLaw::support_hi() const {
    return flavor_ == Flavor::Discrete ? 1.0 : table_.hi();
}

double RadialLaw::raw_density(double x) const {
    if (flavor_ == Flavor::Discrete) {
        if (x < 0.0 || x > 1.0) throw OutOfSupport("RadialLaw: rho outside [0,1]");
        return std::pow(std::abs(1.0 - x), d_) * phi_(x);
    }
    if (x < 0.0) throw OutOfSupport("RadialLaw: r outside [0,inf)");
    return std::pow(x, d_) * phi_(x);
}

double RadialLaw::density(double x) const { return raw_density(x) / norm_; }

double RadialLaw::cdf(double x) const {
    if (flavor_ == Flavor::Discrete) return 1.0 - table_.cdf(1.0 - x);
    return table_.cdf(x);
}

double RadialLaw::sample(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double s = table_.quantile(unif(rng));
    return flavor_ == Flavor::Discrete ? 1.0 - s : s;
}

AngularLaw::AngularLaw(double beta, double x0, ShapeFn psi,
                       std::optional<std::pair<double, double>> support)
    : beta_(beta), x0_(x0), psi_(std::move(psi)) {
    if (beta > 1.0) throw std::invalid_argument("AngularLaw: need beta <= 1");
    constexpr double kPi = 3.14159265358979323846;
    if (support) {
        lo_ = support->first;
        hi_ = support->second;
    } else {
        lo_ = -kPi;
        hi_ = kPi;
    }
    if (!(hi_ > lo_)) throw std::invalid_argument("AngularLaw: empty support");
    if (is_dirac()) return;

    double m_left = 0.0, m_right = 0.0;
    if (hi_ > x0_) {
        auto fr = [this](double s) { return psi_(x0_ + s) * std::pow(s, -beta_); };
        right_ = detail::SingularTable(fr, std::max(0.0, lo_ - x0_), hi_ - x0_);
        m_right = right_.mass();
    }
    if (lo_ < x0_) {
        auto fl = [this](double s) { return psi_(x0_ - s) * std::pow(s, -beta_); };
        left_ = detail::SingularTable(fl, std::max(0.0, x0_ - hi_), x0_ - lo_);
        m_left = left_.mass();
    }
    norm_ = m_left + m_right;
    if (!(norm_ > 0.0))
        throw std::invalid_argument("AngularLaw: zero total mass (check psi support)");
    w_right_ = m_right / norm_;
}

double AngularLaw::raw_density(double x) const {
    if (is_dirac()) throw DiracDensityQuery("AngularLaw: beta = 1 has no density");
    if (x < lo_ || x > hi_) throw OutOfSupport("AngularLaw: x outside support");
    double s = std::abs(x - x0_);
    if (s == 0.0 && beta_ > 0.0) return std::numeric_limits<double>::infinity();
    return psi_(x) * std::pow(s, -beta_);
}

double AngularLaw::density(double x) const { return raw_density(x) / norm_; }

double AngularLaw::cdf(double x) const {
    if (is_dirac()) return x >= x0_ ? 1.0 : 0.0;
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    double w_left = 1.0 - w_right_;
    if (x >= x0_) return w_left + w_right_ * right_.cdf(x - x0_);
    return w_left * (1.0 - left_.cdf(x0_ - x));
}

double AngularLaw::sample(std::mt19937_64& rng) const {
    if (is_dirac()) return x0_;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng);
    if (u < w_right_) return x0_ + right_.quantile(u / w_right_);
    double v = (u - w_right_) / (1.0 - w_right_);
    return x0_ - left_.quantile(v);
}

MixedAngularLaw::MixedAngularLaw(std::vector<Atom> atoms,
                                 std::vector<DiffusePiece> diffuse)
    : atoms_(std::move(atoms)), diffuse_(std::move(diffuse)) {
    double total = 0.0;
    for (const auto& a : atoms_) {
        if (a.weight < 0) throw InvalidMixture("MixedAngularLaw: negative atom weight");
        total += a.weight;
    }
    for (const auto& p : diffuse_) {
        if (p.weight < 0) throw InvalidMixture("MixedAngularLaw: negative piece weight");
        if (p.law.is_dirac())
            throw InvalidMixture("MixedAngularLaw: diffuse piece must have beta < 1");
        total += p.weight;
    }
    if (!(total > 0.0)) throw InvalidMixture("MixedAngularLaw: zero total mass");
    for (auto& a : atoms_) a.weight /= total;
    for (auto& p : diffuse_) p.weight /= total;
    atom_mass_ = 0.0;
    for (const auto& a : atoms_) atom_mass_ += a.weight;
}

double MixedAngularLaw::density(double x) const {
    double v = 0.0;
    for (const auto& p : diffuse_) {
        auto [lo, hi] = p.law.support();
        if (x >= lo && x <= hi) v += p.weight * p.law.density(x);
    }
    return v;
}

double MixedAngularLaw::sample(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = unif(rng);
    for (const auto& a : atoms_) {
        if (u < a.weight) return a.location;
        u -= a.weight;
    }
    for (const auto& p : diffuse_) {
        if (u < p.weight) return p.law.sample(rng);
        u -= p.weight;
    }
    return diffuse_.empty() ? atoms_.back().location : diffuse_.back().law.sample(rng);
}

int suggest_ma_count(double max_pole_radius, double eps) {
    if (!(max_pole_radius > 0.0) || max_pole_radius >= 1.0) return 1 << 20;
    int n = static_cast<int>(std::ceil(std::log(eps) / std::log(max_pole_radius)));
    return std::max(n, 1);
}

}  // namespace agglm
