#include "agglm/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "agglm/classifier.hpp"
#include "agglm/quadrature.hpp"

namespace agglm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

AsymptoticFit fit_power_law(const std::function<double(double)>& eval,
                            double lambda_s, double pred_exponent,
                            double pred_constant, bool two_sided,
                            const LadderOptions& opt) {
    AsymptoticFit fit;
    fit.target = lambda_s;
    fit.predicted_exponent = pred_exponent;
    fit.predicted_constant = pred_constant;

    const int npts = opt.decades * opt.per_decade + 1;
    const double step = std::pow(10.0, -1.0 / opt.per_decade);
    double off = opt.delta;
    for (int i = 0; i < npts; ++i, off *= step) {
        double v = eval(lambda_s + off);
        if (two_sided) v = 0.5 * (v + eval(lambda_s - off));
        fit.offsets.push_back(off);
        fit.values.push_back(v);
    }
    // local slope per decade: value ~ C * off^-e
    for (int j = opt.per_decade; j < npts; j += opt.per_decade) {
        double num = std::log(fit.values[j] / fit.values[j - opt.per_decade]);
        double den = std::log(fit.offsets[j] / fit.offsets[j - opt.per_decade]);
        fit.local_slopes.push_back(-num / den);
    }
    fit.fitted_exponent = fit.local_slopes.empty() ? 0.0 : fit.local_slopes.back();

    // constant read off at the ladder foot with the predicted exponent
    size_t last = fit.values.size() - 1;
    fit.fitted_constant =
        fit.values[last] * std::pow(fit.offsets[last], pred_exponent);

    // drift of A/B over the last two decades
    if (pred_constant > 0 && npts >= 2 * opt.per_decade + 1) {
        size_t prev = last - 2 * opt.per_decade;
        double a0 = fit.values[prev] * std::pow(fit.offsets[prev], pred_exponent);
        fit.ratio_drift = std::abs(fit.fitted_constant - a0) /
                          std::max(std::abs(fit.fitted_constant), 1e-300);
    }
    return fit;
}

namespace oracle {

double u_integral(double d, double n) {
    quad::Options opt;
    opt.rel_tol = 1e-10;
    return quad::exp_sinh(
        [&](double u) { return std::pow(u, d) * std::pow(1.0 + u * u, -0.5 * n); },
        opt);
}

double ut_integral(double d, double n, double alpha) {
    quad::Options opt;
    opt.rel_tol = 1e-8;
    opt.max_level = 10;
    // inner u-integral for fixed t, singularity strengths at t = +-1
    auto inner = [&](double t) {
        double a = std::abs(t - 1.0), b = std::abs(t + 1.0);
        return quad::exp_sinh(
            [&](double u) {
                return std::pow(u, d) *
                       std::pow((a * a + u * u) * (b * b + u * u), -0.5 * n);
            },
            opt);
    };
    // split the t-axis at 0 and +-1; map the tails to [0,1]
    auto body = [&](double t) { return inner(t) * std::pow(std::abs(t), -alpha); };
    double v = 0.0;
    quad::Options outer;
    outer.rel_tol = 1e-8;
    outer.max_level = 10;
    v += quad::split_tanh_sinh(body, -3.0, 3.0, {-1.0, 0.0, 1.0}, outer);
    // |t| > 3 tails via t = 1/w
    auto tail = [&](double w) {
        double t = 1.0 / w;
        return (body(t) + body(-t)) / (w * w);
    };
    v += quad::tanh_sinh(tail, 0.0, 1.0 / 3.0, outer);
    return v;
}

double t_integral(double d, double n, double alpha) {
    const double gamma = n - 1.0 - d;  // |t - 1|^-gamma
    quad::Options opt;
    opt.rel_tol = 1e-9;
    auto body = [&](double t) {
        return std::pow(std::abs(t), -alpha) * std::pow(std::abs(t - 1.0), -gamma);
    };
    double v = quad::split_tanh_sinh(body, -3.0, 3.0, {0.0, 1.0}, opt);
    auto tail = [&](double w) {
        double t = 1.0 / w;
        return (body(t) + body(-t)) / (w * w);
    };
    v += quad::tanh_sinh(tail, 0.0, 1.0 / 3.0, opt);
    return v;
}

}  // namespace oracle

AsymptoticFit lemma1_check(double d, double n, int theta0_case, const ShapeFn& phi,
                           double theta0, const LadderOptions& opt) {
    if (!(d > -1.0 && d < n - 1.0))
        throw PreconditionViolated("lemma1_check: requires -1 < d < n - 1");
    double lambda_s = theta0_case == 1 ? 0.0 : (theta0_case == 2 ? kPi : theta0);
    double pred_e = n - 1.0 - d;
    double pred_c = phi(1.0) * oracle::u_integral(d, n);
    if (theta0_case == 3) pred_c *= std::pow(2.0 * std::sin(theta0), -n);

    auto eval = [&](double lam) {
        if (theta0_case == 3)
            return mix::radial_integral_disc(d, phi, {lam - theta0, lam + theta0},
                                             {n, n});
        double delta = theta0_case == 1 ? lam : lam - kPi;
        return mix::radial_integral_disc(d, phi, {delta}, {n});
    };
    // cases 1-2 are symmetric by construction; case 3 averages both sides
    return fit_power_law(eval, lambda_s, pred_e, pred_c, theta0_case == 3, opt);
}

AsymptoticFit lemma3_check(double d, double n, double tau0, const ShapeFn& phi,
                           const LadderOptions& opt) {
    if (!(d > -1.0 && d < n - 1.0))
        throw PreconditionViolated("lemma3_check: requires -1 < d < n - 1");
    double pred_e = n - 1.0 - d;
    double pred_c = phi(0.0) * oracle::u_integral(d, n);
    if (tau0 != 0.0) pred_c *= std::pow(2.0 * tau0, -n);
    auto eval = [&](double lam) {
        if (tau0 != 0.0)
            return mix::radial_integral_cont(d, phi, {lam - tau0, lam + tau0}, {n, n});
        return mix::radial_integral_cont(d, phi, {lam}, {n});
    };
    return fit_power_law(eval, tau0, pred_e, pred_c, tau0 != 0.0, opt);
}

AsymptoticFit lemma2_check(double d, double n, double alpha, int theta0_case,
                           const ShapeFn& phi, const ShapeFn& psi, double theta0,
                           const LadderOptions& opt) {
    if (!(alpha < 1.0)) throw PreconditionViolated("lemma2_check: requires alpha < 1");
    double lambda_s, pred_e, pred_c;
    if (theta0_case == 3) {
        if (!(d > n - 2.0 && d < n - 2.0 + alpha))
            throw PreconditionViolated("lemma2_check: requires n-2 < d < n-2+alpha");
        lambda_s = theta0;
        pred_e = n - 2.0 - d + alpha;
        pred_c = phi(1.0) * psi(theta0) * std::pow(2.0 * std::sin(theta0), -n) *
                 oracle::t_integral(d, n, alpha) * oracle::u_integral(d, n);
    } else {
        if (!(d > n - 1.0 && d < 2.0 * n - 2.0 + alpha))
            throw PreconditionViolated("lemma2_check: requires n-1 < d < 2n-2+alpha");
        lambda_s = theta0_case == 1 ? 0.0 : kPi;
        pred_e = 2.0 * n - 2.0 - d + alpha;
        pred_c = phi(1.0) * psi(lambda_s) * oracle::ut_integral(d, n, alpha);
    }
    double t0 = theta0_case == 1 ? 0.0 : (theta0_case == 2 ? kPi : theta0);
    auto eval = [&](double lam) {
        return mix::angular_radial_disc(lam, d, phi, alpha, t0, psi, {-kPi, kPi}, n);
    };
    return fit_power_law(eval, lambda_s, pred_e, pred_c, theta0_case != 2, opt);
}

AsymptoticFit lemma4_check(double d, double n, double alpha, double tau0,
                           const ShapeFn& phi, const ShapeFn& psi,
                           std::pair<double, double> support,
                           const LadderOptions& opt) {
    if (!(alpha < 1.0)) throw PreconditionViolated("lemma4_check: requires alpha < 1");
    double pred_e, pred_c;
    if (tau0 == 0.0) {
        if (!(d > n - 1.0 && d < 2.0 * n - 2.0 + alpha))
            throw PreconditionViolated("lemma4_check: requires n-1 < d < 2n-2+alpha");
        pred_e = 2.0 * n - 2.0 - d + alpha;
        pred_c = phi(0.0) * psi(0.0) * oracle::ut_integral(d, n, alpha);
    } else {
        if (!(d > n - 2.0 && d < n - 2.0 + alpha))
            throw PreconditionViolated("lemma4_check: requires n-2 < d < n-2+alpha");
        pred_e = n - 2.0 - d + alpha;
        pred_c = phi(0.0) * psi(tau0) * std::pow(2.0 * tau0, -n) *
                 oracle::t_integral(d, n, alpha) * oracle::u_integral(d, n);
    }
    auto eval = [&](double lam) {
        return mix::angular_radial_cont(lam, d, phi, alpha, tau0, psi, support, n);
    };
    return fit_power_law(eval, tau0, pred_e, pred_c, true, opt);
}

AsymptoticFit fit_mixture_slope(const ModelSpec& model, double lambda_s,
                                SpectrumSide side, const LadderOptions& opt) {
    LMReport rep = classify_model(model);
    double pred_e = 0.0;
    for (const auto& s : rep.singularities)
        if (std::abs(s.frequency - lambda_s) < 1e-9) pred_e = s.alpha;
    auto eval = [&](double lam) {
        return side == SpectrumSide::F ? mixture_F_at(model, lam)
                                       : std::norm(mixture_H_at(model, lam));
    };
    bool two_sided = model.flavor == Flavor::Continuous ||
                     (std::abs(lambda_s) > 1e-12 &&
                      std::abs(std::abs(lambda_s) - kPi) > 1e-12);
    return fit_power_law(eval, lambda_s, pred_e, 0.0, two_sided, opt);
}

std::vector<SweepCell> disappearance_sweep(double d_lo, double d_hi, int nd,
                                           double b_lo, double b_hi, int nb,
                                           bool boundary_theta0) {
    const double theta0 = boundary_theta0 ? 0.0 : kPi / 3.0;
    std::vector<SweepCell> out;
    out.reserve(static_cast<size_t>(nd) * nb);
    for (int i = 0; i < nd; ++i) {
        double d = nd == 1 ? d_lo : d_lo + (d_hi - d_lo) * i / (nd - 1.0);
        for (int j = 0; j < nb; ++j) {
            double b = nb == 1 ? b_lo : b_lo + (b_hi - b_lo) * j / (nb - 1.0);
            LMReport rep = classify_ar2(Ar2ComplexPair{d, b, theta0},
                                        InnovationRegime::Independent);
            SweepCell cell;
            cell.d = d;
            cell.beta = b;
            cell.region = !rep.exists ? 0 : (rep.long_memory ? 2 : 1);
            cell.alpha = boundary_theta0 ? b - (d - 2.0) : b - d;
            out.push_back(cell);
        }
    }
    return out;
}

}  // namespace agglm
