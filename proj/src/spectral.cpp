#include "agglm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "agglm/quadrature.hpp"

namespace agglm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();

using cplx = std::complex<double>;

double chord(double delta) { return 2.0 * std::abs(std::sin(0.5 * delta)); }

// (1 - rho e^{i delta}) evaluated from s = 1 - rho without cancellation
cplx disc_factor(double s, double delta) {
    double sd = std::sin(0.5 * delta);
    return {2.0 * sd * sd + s * std::cos(delta), -(1.0 - s) * std::sin(delta)};
}

cplx int_pow(cplx z, int m) {
    cplx r = 1.0;
    for (int i = 0; i < m; ++i) r *= z;
    return r;
}

bool too_big(double v, double cap = 1e250) { return !std::isfinite(v) || v > cap; }

}  // namespace

namespace mix {

quad::Options default_tols() {
    quad::Options o;
    o.rel_tol = 1e-11;
    return o;
}

double radial_integral_disc(double d, const ShapeFn& phi,
                            const std::vector<double>& deltas,
                            const std::vector<double>& ns,
                            const quad::Options& tol) {
    const size_t nf = deltas.size();
    std::vector<double> c(nf);
    double cmin = kInf, nsum = 0.0;
    for (size_t j = 0; j < nf; ++j) {
        c[j] = chord(deltas[j]);
        cmin = std::min(cmin, c[j]);
        nsum += ns[j];
    }

    const quad::Options& opt = tol;

    if (cmin < 1e-13) {
        // at (or numerically at) a singular frequency; integrate in s directly
        auto f = [&](double x, double dist) {
            double s = std::min(dist, x);  // stable near 0 where it matters
            double v = std::pow(s, d) * phi(1.0 - s);
            for (size_t j = 0; j < nf; ++j)
                v *= std::pow(s * s + (1.0 - s) * c[j] * c[j], -0.5 * ns[j]);
            return v;
        };
        double v = quad::tanh_sinh(f, 0.0, 1.0, opt);
        return too_big(v) ? kInf : v;
    }

    // substitution s = cmin * u; gamma_j = c_j / cmin >= 1
    std::vector<double> gamma(nf);
    for (size_t j = 0; j < nf; ++j) gamma[j] = c[j] / cmin;
    const double U = 1.0 / cmin;
    auto g = [&](double u) {
        double s = cmin * u;
        double v = std::pow(u, d) * phi(1.0 - s);
        for (size_t j = 0; j < nf; ++j)
            v *= std::pow(u * u + (1.0 - s) * gamma[j] * gamma[j], -0.5 * ns[j]);
        return v;
    };

    double J = quad::tanh_sinh([&](double u, double) { return g(u); }, 0.0,
                               std::min(1.0, U), opt);
    if (U > 1.0) {
        // log substitution on the tail, split where each factor turns over
        std::vector<double> splits;
        for (double gj : gamma)
            if (gj > 1.0) splits.push_back(std::log(gj));
        J += quad::split_tanh_sinh([&](double v) {
                 double u = std::exp(v);
                 return g(u) * u;
             },
                                   0.0, std::log(U), splits, opt);
    }
    double out = std::pow(cmin, d + 1.0 - nsum) * J;
    return too_big(out) ? kInf : out;
}

std::complex<double> radial_integral_disc_cplx(double d, const ShapeFn& phi,
                                               const std::vector<double>& deltas,
                                               const std::vector<double>& ms,
                                               const quad::Options& tol) {
    const size_t nf = deltas.size();
    std::vector<double> c(nf);
    double cmin = kInf;
    for (size_t j = 0; j < nf; ++j) {
        c[j] = chord(deltas[j]);
        cmin = std::min(cmin, c[j]);
    }
    const quad::Options& opt = tol;

    auto integrand_s = [&](double s) -> cplx {
        cplx v = std::pow(s, d) * phi(1.0 - s);
        for (size_t j = 0; j < nf; ++j)
            v /= int_pow(disc_factor(s, deltas[j]), static_cast<int>(ms[j]));
        return v;
    };

    if (cmin < 1e-13) {
        cplx v = quad::tanh_sinh_c(
            [&](double x, double dist) { return integrand_s(std::min(dist, x)); }, 0.0,
            1.0, opt);
        return v;
    }

    const double U = 1.0 / cmin;
    cplx J = quad::tanh_sinh_c(
        [&](double u, double) -> cplx {
            double s = cmin * u;
            cplx v = std::pow(u, d) * phi(1.0 - s);
            for (size_t j = 0; j < nf; ++j)
                v /= int_pow(disc_factor(s, deltas[j]), static_cast<int>(ms[j]));
            return v;
        },
        0.0, std::min(1.0, U), opt);
    cplx total = std::pow(cmin, d + 1.0) * J;
    if (U > 1.0) {
        std::vector<double> splits;
        for (size_t j = 0; j < nf; ++j)
            if (c[j] / cmin > 1.0) splits.push_back(std::log(c[j] / cmin));
        std::sort(splits.begin(), splits.end());
        splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
        double lo = 0.0;
        const double hi = std::log(U);
        auto tail = [&](double v) -> cplx {
            double u = std::exp(v);
            double s = cmin * u;
            cplx w = std::pow(u, d) * phi(1.0 - s) * u;
            for (size_t j = 0; j < nf; ++j)
                w /= int_pow(disc_factor(s, deltas[j]), static_cast<int>(ms[j]));
            return w;
        };
        cplx acc = 0.0;
        for (double sp : splits) {
            if (sp > lo && sp < hi) {
                acc += quad::tanh_sinh_c([&](double v, double) { return tail(v); }, lo, sp, opt);
                lo = sp;
            }
        }
        acc += quad::tanh_sinh_c([&](double v, double) { return tail(v); }, lo, hi, opt);
        total += std::pow(cmin, d + 1.0) * acc;
    }
    return total;
}

double radial_integral_cont(double d, const ShapeFn& phi,
                            const std::vector<double>& lams,
                            const std::vector<double>& ns,
                            const quad::Options& tol) {
    const size_t nf = lams.size();
    double a = kInf, nsum = 0.0;
    for (size_t j = 0; j < nf; ++j) {
        a = std::min(a, std::abs(lams[j]));
        nsum += ns[j];
    }
    const quad::Options& opt = tol;

    if (a < 1e-13) {
        double v = quad::exp_sinh(
            [&](double r) {
                double w = std::pow(r, d) * phi(r);
                for (size_t j = 0; j < nf; ++j)
                    w *= std::pow(lams[j] * lams[j] + r * r, -0.5 * ns[j]);
                return w;
            },
            opt);
        return too_big(v) ? kInf : v;
    }

    std::vector<double> Lam(nf);
    for (size_t j = 0; j < nf; ++j) Lam[j] = std::abs(lams[j]) / a;
    double J = quad::exp_sinh(
        [&](double u) {
            double w = std::pow(u, d) * phi(a * u);
            for (size_t j = 0; j < nf; ++j)
                w *= std::pow(Lam[j] * Lam[j] + u * u, -0.5 * ns[j]);
            return w;
        },
        opt);
    double out = std::pow(a, d + 1.0 - nsum) * J;
    return too_big(out) ? kInf : out;
}

std::complex<double> radial_integral_cont_cplx(double d, const ShapeFn& phi,
                                               const std::vector<double>& lams,
                                               const std::vector<double>& ms,
                                               const quad::Options& tol) {
    const size_t nf = lams.size();
    double a = kInf;
    for (size_t j = 0; j < nf; ++j) a = std::min(a, std::abs(lams[j]));
    const quad::Options& opt = tol;

    auto integrand_r = [&](double r) -> cplx {
        cplx w = std::pow(r, d) * phi(r);
        for (size_t j = 0; j < nf; ++j)
            w /= int_pow(cplx(r, lams[j]), static_cast<int>(ms[j]));
        return w;
    };
    if (a < 1e-13) return quad::exp_sinh_c(integrand_r, opt);

    cplx J = quad::exp_sinh_c(
        [&](double u) -> cplx {
            double r = a * u;
            cplx w = std::pow(u, d) * phi(r);
            for (size_t j = 0; j < nf; ++j)
                w /= int_pow(cplx(r, lams[j]), static_cast<int>(ms[j]));
            return w;
        },
        opt);
    double msum = 0.0;
    for (double m : ms) msum += m;
    (void)msum;
    return std::pow(a, d + 1.0) * J;
}

namespace {

// Panels between consecutive anchors; the integrand receives the point and
// stabilized distances to every anchor (exact when the anchor is the nearest
// panel endpoint).
template <class V, class F>
V integrate_anchored(const F& f, double lo, double hi,
                     const std::vector<double>& anchors, const quad::Options& opt) {
    // panel cuts are the sorted in-range anchors; dists stay in anchor order
    std::vector<double> cuts = {lo, hi};
    for (double a : anchors)
        if (a > lo && a < hi) cuts.push_back(a);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    V total(0.0);
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double p = cuts[i], q = cuts[i + 1];
        if (!(q > p)) continue;
        auto panel = [&](double x, double edge_dist) -> V {
            std::vector<double> dists(anchors.size());
            for (size_t k = 0; k < anchors.size(); ++k) {
                double da = std::abs(x - anchors[k]);
                if ((anchors[k] == p || anchors[k] == q) && da <= 0.5 * (q - p))
                    da = edge_dist;
                dists[k] = da;
            }
            return f(x, dists);
        };
        if constexpr (std::is_same_v<V, double>) {
            total += quad::tanh_sinh(panel, p, q, opt);
        } else {
            total += quad::tanh_sinh_c(panel, p, q, opt);
        }
    }
    return total;
}

}  // namespace

double angular_radial_disc(double lambda, double d, const ShapeFn& phi, double beta,
                           double theta0, const ShapeFn& psi,
                           std::pair<double, double> support, double n) {
    // anchors: the angular-law singular point and every image of +-lambda
    std::vector<double> anchors = {theta0};
    std::vector<double> lam_anchors, neg_anchors;
    for (int k = -1; k <= 1; ++k) {
        lam_anchors.push_back(lambda + kTwoPi * k);
        neg_anchors.push_back(-lambda + kTwoPi * k);
    }
    anchors.insert(anchors.end(), lam_anchors.begin(), lam_anchors.end());
    anchors.insert(anchors.end(), neg_anchors.begin(), neg_anchors.end());

    quad::Options outer_opt;
    outer_opt.rel_tol = 5e-7;
    outer_opt.max_level = 7;
    quad::Options inner_opt;
    inner_opt.rel_tol = 1e-8;
    inner_opt.max_level = 8;

    auto f = [&](double theta, const std::vector<double>& dists) -> double {
        // dists align with anchors: [theta0, lam(3), neg(3)]
        double dtheta0 = dists[0];
        double dplus = std::min({dists[1], dists[2], dists[3]});
        double dminus = std::min({dists[4], dists[5], dists[6]});
        double density = psi(theta) * std::pow(dtheta0, -beta);
        if (density == 0.0) return 0.0;
        double inner = radial_integral_disc(d, phi, {dplus, dminus}, {n, n}, inner_opt);
        return density * inner;
    };
    return integrate_anchored<double>(f, support.first, support.second, anchors,
                                      outer_opt);
}

std::complex<double> angular_radial_disc_cplx(double lambda, double d,
                                              const ShapeFn& phi, double beta,
                                              double theta0, const ShapeFn& psi,
                                              std::pair<double, double> support,
                                              double m) {
    std::vector<double> anchors = {theta0};
    for (int k = -1; k <= 1; ++k) {
        anchors.push_back(lambda + kTwoPi * k);
        anchors.push_back(-lambda + kTwoPi * k);
    }
    quad::Options outer_opt;
    outer_opt.rel_tol = 5e-7;
    outer_opt.max_level = 7;
    quad::Options inner_opt;
    inner_opt.rel_tol = 1e-8;
    inner_opt.max_level = 8;

    auto f = [&](double theta, const std::vector<double>& dists) -> cplx {
        double dtheta0 = dists[0];
        double dplus = std::min({dists[1], dists[3], dists[5]});
        double dminus = std::min({dists[2], dists[4], dists[6]});
        double density = psi(theta) * std::pow(dtheta0, -beta);
        if (density == 0.0) return 0.0;
        double sp = std::remainder(lambda - theta, kTwoPi) >= 0 ? 1.0 : -1.0;
        double sm = std::remainder(lambda + theta, kTwoPi) >= 0 ? 1.0 : -1.0;
        cplx inner =
            radial_integral_disc_cplx(d, phi, {sp * dplus, sm * dminus}, {m, m}, inner_opt);
        return density * inner;
    };
    return integrate_anchored<cplx>(f, support.first, support.second, anchors,
                                    outer_opt);
}

double angular_radial_cont(double lambda, double d, const ShapeFn& phi, double beta,
                           double tau0, const ShapeFn& psi,
                           std::pair<double, double> support, double n) {
    std::vector<double> anchors = {tau0, lambda, -lambda};
    quad::Options outer_opt;
    outer_opt.rel_tol = 5e-7;
    outer_opt.max_level = 7;
    quad::Options inner_opt;
    inner_opt.rel_tol = 1e-8;
    inner_opt.max_level = 8;

    auto f = [&](double tau, const std::vector<double>& dists) -> double {
        double density = psi(tau) * std::pow(dists[0], -beta);
        if (density == 0.0) return 0.0;
        double inner = radial_integral_cont(d, phi, {dists[1], dists[2]}, {n, n}, inner_opt);
        return density * inner;
    };
    return integrate_anchored<double>(f, support.first, support.second, anchors,
                                      outer_opt);
}

std::complex<double> angular_radial_cont_cplx(double lambda, double d,
                                              const ShapeFn& phi, double beta,
                                              double tau0, const ShapeFn& psi,
                                              std::pair<double, double> support,
                                              double m) {
    std::vector<double> anchors = {tau0, lambda, -lambda};
    quad::Options outer_opt;
    outer_opt.rel_tol = 5e-7;
    outer_opt.max_level = 7;
    quad::Options inner_opt;
    inner_opt.rel_tol = 1e-8;
    inner_opt.max_level = 8;

    auto f = [&](double tau, const std::vector<double>& dists) -> cplx {
        double density = psi(tau) * std::pow(dists[0], -beta);
        if (density == 0.0) return 0.0;
        double sp = lambda - tau >= 0 ? 1.0 : -1.0;
        double sm = lambda + tau >= 0 ? 1.0 : -1.0;
        cplx inner =
            radial_integral_cont_cplx(d, phi, {sp * dists[1], sm * dists[2]}, {m, m}, inner_opt);
        return density * inner;
    };
    return integrate_anchored<cplx>(f, support.first, support.second, anchors,
                                    outer_opt);
}

}  // namespace mix

// --- per-sample spectra -----------------------------------------------------

double pointwise_g(const PoleSample& sample, double lambda, double sigma) {
    double g = sigma * sigma;
    for (const auto& grp : sample.groups) {
        int m = grp.multiplicity;
        if (sample.flavor == Flavor::Discrete) {
            double s = 1.0 - grp.radius;
            double cm = chord(lambda - grp.angle);
            double f1 = s * s + (1.0 - s) * cm * cm;
            g *= std::pow(f1, -m);
            if (grp.kind == GroupKind::ComplexPairDiscrete) {
                double cp = chord(lambda + grp.angle);
                double f2 = s * s + (1.0 - s) * cp * cp;
                g *= std::pow(f2, -m);
            }
        } else {
            double r2 = grp.radius * grp.radius;
            if (grp.kind == GroupKind::RealContinuous) {
                g *= std::pow(lambda * lambda + r2, -m);
            } else {
                double dm = lambda - grp.angle, dp = lambda + grp.angle;
                g *= std::pow((dm * dm + r2) * (dp * dp + r2), -m);
            }
        }
    }
    return g;
}

std::complex<double> pointwise_h(const PoleSample& sample, double lambda, double sigma) {
    cplx h = sigma;
    for (const auto& grp : sample.groups) {
        int m = grp.multiplicity;
        if (sample.flavor == Flavor::Discrete) {
            double s = 1.0 - grp.radius;
            h /= int_pow(disc_factor(s, lambda - grp.angle), m);
            if (grp.kind == GroupKind::ComplexPairDiscrete)
                h /= int_pow(disc_factor(s, lambda + grp.angle), m);
        } else {
            if (grp.kind == GroupKind::RealContinuous) {
                h /= int_pow(cplx(grp.radius, lambda), m);
            } else {
                h /= int_pow(cplx(grp.radius, lambda - grp.angle), m);
                h /= int_pow(cplx(grp.radius, lambda + grp.angle), m);
            }
        }
    }
    return h;
}

// --- mixture curves ---------------------------------------------------------

namespace {

double group_F_factor(const PoleGroupSpec& g, double lambda) {
    const auto& rl = g.radial;
    const double n = 2.0 * g.multiplicity;
    if (g.kind == GroupKind::RealDiscrete) {
        return mix::radial_integral_disc(rl.d(), rl.phi(), {lambda - g.center_angle()},
                                         {n}) /
               rl.normalization();
    }
    if (g.kind == GroupKind::ComplexPairDiscrete) {
        if (g.angular.is_dirac()) {
            double t0 = g.center_angle();
            return mix::radial_integral_disc(rl.d(), rl.phi(),
                                             {lambda - t0, lambda + t0}, {n, n}) /
                   rl.normalization();
        }
        return mix::angular_radial_disc(lambda, rl.d(), rl.phi(), g.angular.beta(),
                                        g.angular.x0(), g.angular.psi(),
                                        g.angular.support(), n) /
               (rl.normalization() * g.angular.normalization());
    }
    if (g.kind == GroupKind::RealContinuous) {
        return mix::radial_integral_cont(rl.d(), rl.phi(), {lambda}, {n}) /
               rl.normalization();
    }
    // complex continuous
    if (g.angular.is_dirac()) {
        double t0 = g.center_angle();
        return mix::radial_integral_cont(rl.d(), rl.phi(), {lambda - t0, lambda + t0},
                                         {n, n}) /
               rl.normalization();
    }
    return mix::angular_radial_cont(lambda, rl.d(), rl.phi(), g.angular.beta(),
                                    g.angular.x0(), g.angular.psi(),
                                    g.angular.support(), n) /
           (rl.normalization() * g.angular.normalization());
}

cplx group_H_factor(const PoleGroupSpec& g, double lambda) {
    const auto& rl = g.radial;
    const double m = g.multiplicity;
    if (g.kind == GroupKind::RealDiscrete) {
        return mix::radial_integral_disc_cplx(rl.d(), rl.phi(),
                                              {lambda - g.center_angle()}, {m}) /
               rl.normalization();
    }
    if (g.kind == GroupKind::ComplexPairDiscrete) {
        if (g.angular.is_dirac()) {
            double t0 = g.center_angle();
            return mix::radial_integral_disc_cplx(rl.d(), rl.phi(),
                                                  {lambda - t0, lambda + t0}, {m, m}) /
                   rl.normalization();
        }
        return mix::angular_radial_disc_cplx(lambda, rl.d(), rl.phi(),
                                             g.angular.beta(), g.angular.x0(),
                                             g.angular.psi(), g.angular.support(), m) /
               (rl.normalization() * g.angular.normalization());
    }
    if (g.kind == GroupKind::RealContinuous) {
        return mix::radial_integral_cont_cplx(rl.d(), rl.phi(), {lambda}, {m}) /
               rl.normalization();
    }
    if (g.angular.is_dirac()) {
        double t0 = g.center_angle();
        return mix::radial_integral_cont_cplx(rl.d(), rl.phi(),
                                              {lambda - t0, lambda + t0}, {m, m}) /
               rl.normalization();
    }
    return mix::angular_radial_cont_cplx(lambda, rl.d(), rl.phi(), g.angular.beta(),
                                         g.angular.x0(), g.angular.psi(),
                                         g.angular.support(), m) /
           (rl.normalization() * g.angular.normalization());
}

}  // namespace

double mixture_F_at(const ModelSpec& model, double lambda) {
    double v = model.sigma * model.sigma;
    for (const auto& g : model.groups) v *= group_F_factor(g, lambda);
    return v;
}

std::complex<double> mixture_H_at(const ModelSpec& model, double lambda) {
    cplx v = model.sigma;
    for (const auto& g : model.groups) v *= group_H_factor(g, lambda);
    return v;
}

SpectralCurve mixture_F(const ModelSpec& model, const std::vector<double>& grid,
                        const MixtureOptions& opt) {
    model.validate();
    SpectralCurve curve;
    curve.grid = grid;
    curve.domain = model.flavor;
    curve.singular_frequencies = predicted_singularities(model);
    curve.values.resize(grid.size());

    if (opt.method == MixtureMethod::Quadrature) {
        for (size_t i = 0; i < grid.size(); ++i)
            curve.values[i] = mixture_F_at(model, grid[i]);
    } else {
        std::mt19937_64 rng(opt.mc_seed);
        curve.stderrs.assign(grid.size(), 0.0);
        std::vector<double> mean(grid.size(), 0.0), m2(grid.size(), 0.0);
        for (long k = 0; k < opt.mc_draws; ++k) {
            PoleSample s = model.draw(rng);
            for (size_t i = 0; i < grid.size(); ++i) {
                double g = pointwise_g(s, grid[i], model.sigma);
                double delta = g - mean[i];
                mean[i] += delta / (k + 1);
                m2[i] += delta * (g - mean[i]);
            }
        }
        for (size_t i = 0; i < grid.size(); ++i) {
            curve.values[i] = mean[i];
            curve.stderrs[i] =
                std::sqrt(m2[i] / (opt.mc_draws - 1.0) / opt.mc_draws);
        }
    }
    return curve;
}

SpectralCurve mixture_H(const ModelSpec& model, const std::vector<double>& grid,
                        const MixtureOptions& opt) {
    model.validate();
    SpectralCurve curve;
    curve.grid = grid;
    curve.domain = model.flavor;
    curve.singular_frequencies = predicted_singularities(model);
    curve.values.resize(grid.size());
    curve.cvalues.resize(grid.size());

    if (opt.method == MixtureMethod::Quadrature) {
        for (size_t i = 0; i < grid.size(); ++i) {
            cplx h = mixture_H_at(model, grid[i]);
            curve.cvalues[i] = h;
            curve.values[i] = std::norm(h);
        }
    } else {
        std::mt19937_64 rng(opt.mc_seed);
        curve.stderrs.assign(grid.size(), 0.0);
        std::vector<cplx> mean(grid.size(), 0.0);
        std::vector<double> m2(grid.size(), 0.0);
        for (long k = 0; k < opt.mc_draws; ++k) {
            PoleSample s = model.draw(rng);
            for (size_t i = 0; i < grid.size(); ++i) {
                cplx h = pointwise_h(s, grid[i], model.sigma);
                cplx delta = h - mean[i];
                mean[i] += delta / static_cast<double>(k + 1);
                m2[i] += std::norm(delta);
            }
        }
        for (size_t i = 0; i < grid.size(); ++i) {
            curve.cvalues[i] = mean[i];
            curve.values[i] = std::norm(mean[i]);
            curve.stderrs[i] = std::sqrt(m2[i]) / opt.mc_draws;
        }
    }
    return curve;
}

// --- singularities, grids, windows ------------------------------------------

std::vector<double> predicted_singularities(const ModelSpec& model) {
    std::vector<double> s;
    for (const auto& g : model.groups) {
        double t0 = g.center_angle();
        if (model.flavor == Flavor::Discrete) {
            if (g.kind == GroupKind::RealDiscrete || t0 == 0.0 ||
                std::abs(std::abs(t0) - kPi) < 1e-15) {
                s.push_back(t0 == 0.0 ? 0.0 : kPi);
            } else {
                s.push_back(t0);
                s.push_back(-t0);
            }
        } else {
            if (t0 == 0.0) {
                s.push_back(0.0);
            } else {
                s.push_back(t0);
                s.push_back(-t0);
            }
        }
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

double continuous_window(const ModelSpec& model) {
    double mt = 0.0;
    for (const auto& g : model.groups) mt = std::max(mt, std::abs(g.center_angle()));
    return std::max(10.0, 4.0 * mt);
}

std::vector<double> make_frequency_grid(const ModelSpec& model, int n) {
    double lo, hi;
    if (model.flavor == Flavor::Discrete) {
        lo = -kPi;
        hi = kPi;
    } else {
        double w = continuous_window(model);
        lo = -w;
        hi = w;
    }
    auto sing = predicted_singularities(model);

    std::vector<double> g;
    int base = n / 2;
    for (int i = 0; i < base; ++i)
        g.push_back(lo + (hi - lo) * (i + 0.5) / base);
    // log-clustered nodes toward each singular frequency, both sides
    int per_sing = sing.empty() ? 0 : static_cast<int>((n - base) / (2 * sing.size()));
    const double span = hi - lo;
    for (double s0 : sing) {
        for (int i = 0; i < per_sing; ++i) {
            double off = span * 1e-5 *
                         std::pow(0.05 * span / (span * 1e-5),
                                  static_cast<double>(i) / std::max(1, per_sing - 1));
            if (s0 + off < hi) g.push_back(s0 + off);
            if (s0 - off > lo) g.push_back(s0 - off);
        }
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    // nudge nodes off singular frequencies
    for (auto& x : g)
        for (double s0 : sing)
            if (std::abs(x - s0) < 1e-12) x = s0 + 1e-9 * span;
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

// --- existence --------------------------------------------------------------

ExistenceResult existence_integral(const ModelSpec& model, SpectrumSide which) {
    model.validate();
    auto eval = [&](double lam) {
        return which == SpectrumSide::F ? mixture_F_at(model, lam)
                                        : std::norm(mixture_H_at(model, lam));
    };

    ExistenceResult res;
    res.singularities = predicted_singularities(model);

    double lo, hi;
    if (model.flavor == Flavor::Discrete) {
        lo = -kPi;
        hi = kPi;
    } else {
        double w = continuous_window(model);
        lo = -w;
        hi = w;
    }

    const int j0 = 4;       // outer annulus radius 2^-4
    const int jmax = 40;
    const double r0 = std::pow(2.0, -j0);

    bool divergent = false;
    double sing_total = 0.0;
    for (double s0 : res.singularities) {
        std::vector<double> a;
        for (int j = j0; j <= jmax; ++j) {
            double rhi = std::pow(2.0, -j), rlo = 0.5 * rhi;
            double aj = 0.0;
            if (s0 + rlo < hi)
                aj += quad::gauss15(eval, s0 + rlo, std::min(s0 + rhi, hi));
            if (s0 - rlo > lo)
                aj += quad::gauss15(eval, std::max(s0 - rhi, lo), s0 - rlo);
            a.push_back(aj);
        }
        // ratio test: divergent when 8 consecutive ratios stay >= 0.999
        int streak = 0;
        double worst = 0.0;
        bool this_div = false;
        for (size_t i = 1; i < a.size(); ++i) {
            double r = a[i - 1] > 0 ? a[i] / a[i - 1] : 0.0;
            worst = std::max(worst, r);
            if (r >= 0.999) {
                if (++streak >= 8) this_div = true;
            } else {
                streak = 0;
            }
        }
        res.worst_ratio.push_back(worst);
        if (this_div) {
            divergent = true;
            continue;
        }
        double sum = std::accumulate(a.begin(), a.end(), 0.0);
        // geometric tail beyond the innermost annulus
        double rlast = a.size() >= 2 && a[a.size() - 2] > 0
                           ? a.back() / a[a.size() - 2]
                           : 0.0;
        if (rlast > 0 && rlast < 1.0) sum += a.back() * rlast / (1.0 - rlast);
        sing_total += sum;
    }

    res.converges = !divergent;
    if (res.converges) {
        // bulk integral away from the singular neighborhoods
        std::vector<double> cuts = {lo, hi};
        for (double s0 : res.singularities) {
            cuts.push_back(s0 - r0);
            cuts.push_back(s0 + r0);
        }
        std::sort(cuts.begin(), cuts.end());
        double bulk = 0.0;
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            double p = std::max(cuts[i], lo), q = std::min(cuts[i + 1], hi);
            if (!(q > p)) continue;
            bool inside_sing = false;
            for (double s0 : res.singularities)
                if (p >= s0 - r0 - 1e-15 && q <= s0 + r0 + 1e-15) inside_sing = true;
            if (inside_sing) continue;
            quad::Options o;
            o.rel_tol = 1e-8;
            bulk += quad::tanh_sinh([&](double x, double) { return eval(x); }, p, q, o);
        }
        res.value = bulk + sing_total;
    }
    return res;
}

bool reconcile_existence(const ExistenceResult& numeric, bool theorem_exists) {
    if (numeric.converges != theorem_exists)
        throw Inconclusive("existence: numeric and theorem verdicts disagree");
    return numeric.converges;
}

// --- periodogram ------------------------------------------------------------

namespace {

void fft_radix2(std::vector<cplx>& x) {
    const size_t n = x.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = -kTwoPi / static_cast<double>(len);
        cplx wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (size_t k = 0; k < len / 2; ++k) {
                cplx u = x[i + k], v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace

SpectralCurve periodogram(const std::vector<double>& series,
                          const PeriodogramOptions& opt) {
    if (series.size() < 256) throw SeriesTooShort("periodogram: need length >= 256");
    size_t n = 1;
    while (2 * n <= series.size()) n <<= 1;

    double mean = 0.0;
    for (size_t i = 0; i < n; ++i) mean += series[i];
    mean /= static_cast<double>(n);

    std::vector<cplx> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = series[i] - mean;
    fft_radix2(x);

    // raw periodogram on bins 0..n/2
    const size_t half = n / 2;
    std::vector<double> raw(half + 1);
    for (size_t j = 0; j <= half; ++j)
        raw[j] = std::norm(x[j]) / (kTwoPi * static_cast<double>(n));

    // symmetric moving average (I(-j) = I(j), I(n-j) = I(j))
    auto at = [&](long j) {
        j = std::abs(j);
        if (j > static_cast<long>(half)) j = static_cast<long>(n) - j;
        return raw[static_cast<size_t>(j)];
    };
    const int hw = std::max(0, opt.smoothing_halfwidth);
    const double scale = opt.spectral_scale ? kTwoPi : 1.0;

    SpectralCurve curve;
    curve.domain = Flavor::Discrete;
    for (size_t j = 1; j <= half; ++j) {
        double s = 0.0;
        for (int k = -hw; k <= hw; ++k) s += at(static_cast<long>(j) + k);
        s /= (2 * hw + 1);
        curve.grid.push_back(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
        curve.values.push_back(scale * s);
    }
    return curve;
}

}  // namespace agglm
