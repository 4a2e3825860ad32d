#include "agglm/simulate.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

#include "agglm/classifier.hpp"
#include "agglm/poles.hpp"

namespace agglm {

namespace {

constexpr std::uint64_t kInnovStream = 0xD1B54A32D192ED03ull;

// monic real polynomial prod (s + r)^m * prod ((s+r)^2 + tau^2)^m,
// coefficients low-to-high, leading coefficient 1
std::vector<double> continuous_char_poly(const PoleSample& sample) {
    std::vector<double> poly = {1.0};
    auto mul = [&](const std::vector<double>& f) {
        std::vector<double> out(poly.size() + f.size() - 1, 0.0);
        for (size_t i = 0; i < poly.size(); ++i)
            for (size_t j = 0; j < f.size(); ++j) out[i + j] += poly[i] * f[j];
        poly = std::move(out);
    };
    for (const auto& g : sample.groups) {
        for (int i = 0; i < g.multiplicity; ++i) {
            if (g.kind == GroupKind::RealContinuous) {
                mul({g.radius, 1.0});
            } else {
                mul({g.radius * g.radius + g.angle * g.angle, 2.0 * g.radius, 1.0});
            }
        }
    }
    return poly;
}

// Exact one-step discretization of x' = Cx + B dW: transition Phi = e^{Ch}
// and noise factor L with LL^T = int_0^h e^{Cs} BB^T e^{C^T s} ds (Van Loan).
void discretize(const Eigen::MatrixXd& C, const Eigen::VectorXd& B, double h,
                Eigen::MatrixXd& Phi, Eigen::MatrixXd& L) {
    const int p = static_cast<int>(C.rows());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * p, 2 * p);
    M.topLeftCorner(p, p) = -C * h;
    M.topRightCorner(p, p) = (B * B.transpose()) * h;
    M.bottomRightCorner(p, p) = C.transpose() * h;
    Eigen::MatrixXd E = M.exp();
    Phi = E.bottomRightCorner(p, p).transpose();
    Eigen::MatrixXd Q = Phi * E.topRightCorner(p, p);
    Q = 0.5 * (Q + Q.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    L = es.eigenvectors() * ev.asDiagonal();
}

struct OuMember {
    Eigen::MatrixXd Phi, L;
    Eigen::VectorXd state;
    int p;
};

OuMember build_ou_member(const PoleSample& sample, double sigma, double step) {
    if (step > 0.1 / std::max(sample.max_radius(), 1e-12))
        throw StepTooCoarse("simulate_ou_member: step too coarse for the fastest pole");
    std::vector<double> poly = continuous_char_poly(sample);
    const int p = static_cast<int>(poly.size()) - 1;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i + 1 < p; ++i) C(i, i + 1) = 1.0;
    for (int j = 0; j < p; ++j) C(p - 1, j) = -poly[j];
    Eigen::VectorXd B = Eigen::VectorXd::Zero(p);
    B(p - 1) = sigma;
    OuMember m;
    m.p = p;
    discretize(C, B, step, m.Phi, m.L);
    m.state = Eigen::VectorXd::Zero(p);
    return m;
}

Eigen::MatrixXd interactive_factor(const InnovationScheme& scheme, int N) {
    Eigen::MatrixXd T(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) T(i, j) = scheme.chi(i - j);
    Eigen::LLT<Eigen::MatrixXd> llt(T);
    if (llt.info() != Eigen::Success)
        throw NotPSD("interactive chi is not positive semidefinite at this N");
    return llt.matrixL();
}

}  // namespace

long suggested_burn_in(double max_pole_radius, Flavor flavor, double step) {
    const double log_eps = std::log(1e-8);
    if (flavor == Flavor::Discrete) {
        if (max_pole_radius >= 1.0) return 1000000;
        long b = static_cast<long>(std::ceil(log_eps / std::log(max_pole_radius)));
        return std::min<long>(std::max<long>(b, 8), 1000000);
    }
    // continuous: slowest decay rate is the smallest real part
    double r = max_pole_radius;  // caller passes min r_k here
    long b = static_cast<long>(std::ceil(-log_eps / (r * step)));
    return std::min<long>(std::max<long>(b, 8), 1000000);
}

std::vector<std::vector<double>> generate_innovations(const InnovationScheme& scheme,
                                                      int N, long T,
                                                      std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    std::vector<std::vector<double>> eps(N, std::vector<double>(T));
    switch (scheme.kind) {
        case InnovationScheme::Kind::Common: {
            for (long t = 0; t < T; ++t) {
                double e = gauss(rng);
                for (int i = 0; i < N; ++i) eps[i][t] = e;
            }
            break;
        }
        case InnovationScheme::Kind::Independent: {
            for (int i = 0; i < N; ++i)
                for (long t = 0; t < T; ++t) eps[i][t] = gauss(rng);
            break;
        }
        case InnovationScheme::Kind::Interactive: {
            Eigen::MatrixXd L = interactive_factor(scheme, N);
            Eigen::VectorXd z(N);
            for (long t = 0; t < T; ++t) {
                for (int i = 0; i < N; ++i) z(i) = gauss(rng);
                Eigen::VectorXd e = L * z;
                for (int i = 0; i < N; ++i) eps[i][t] = e(i);
            }
            break;
        }
    }
    return eps;
}

std::vector<double> simulate_ar_member(const ArCoefficients& coeffs,
                                       const std::vector<double>& innovations,
                                       long burn_in) {
    const int p = static_cast<int>(coeffs.a.size());
    const long n = static_cast<long>(innovations.size());
    std::vector<double> z(n, 0.0);
    for (long t = 0; t < n; ++t) {
        double v = coeffs.sigma * innovations[t];
        for (int k = 1; k <= p && t - k >= 0; ++k) v -= coeffs.a[k - 1] * z[t - k];
        z[t] = v;
    }
    if (burn_in >= n) return {};
    return std::vector<double>(z.begin() + burn_in, z.end());
}

std::vector<double> simulate_ou_member(const PoleSample& sample, double sigma,
                                       double step, double horizon, long burn_in,
                                       std::mt19937_64& rng) {
    OuMember m = build_ou_member(sample, sigma, step);
    std::normal_distribution<double> gauss;
    const long T = static_cast<long>(horizon / step);
    std::vector<double> out;
    out.reserve(T);
    Eigen::VectorXd z(m.p);
    for (long t = 0; t < burn_in + T; ++t) {
        for (int i = 0; i < m.p; ++i) z(i) = gauss(rng);
        m.state = m.Phi * m.state + m.L * z;
        if (t >= burn_in) out.push_back(m.state(0));
    }
    return out;
}

double default_interactive_bn(const InnovationScheme& scheme, int N) {
    if (scheme.b_n_override > 0) return scheme.b_n_override;
    double s = N;
    for (int k = 1; k < N; ++k) s += 2.0 * (N - k) * scheme.chi(k);
    return std::sqrt(std::max(s, 1.0));
}

PanelRun aggregate(const ModelSpec& model, int N, long T, std::uint64_t seed,
                   const AggregateOptions& opt) {
    model.validate();
    if (!opt.force) {
        LMReport rep = classify_model(model);
        if (!rep.exists)
            throw NonExistentAggregate("aggregate refused, model does not exist: " +
                                       rep.condition + " (pass force to override)");
    }

    PanelRun run;
    run.N = N;
    run.T = T;
    run.seed = seed;
    run.step = model.flavor == Flavor::Discrete ? 1.0 : opt.step;

    std::mt19937_64 rng_params(seed);
    std::mt19937_64 rng_innov(seed ^ kInnovStream);
    std::normal_distribution<double> gauss;

    run.samples.reserve(N);
    for (int i = 0; i < N; ++i) run.samples.push_back(model.draw(rng_params));

    const auto& scheme = model.innovation;
    switch (scheme.kind) {
        case InnovationScheme::Kind::Common:
            run.b_n = static_cast<double>(N);
            break;
        case InnovationScheme::Kind::Independent:
            run.b_n = std::sqrt(static_cast<double>(N));
            break;
        case InnovationScheme::Kind::Interactive:
            run.b_n = default_interactive_bn(scheme, N);
            break;
    }

    run.aggregate.assign(T, 0.0);
    if (opt.keep_members) run.members.assign(N, std::vector<double>(T, 0.0));

    if (model.flavor == Flavor::Discrete) {
        // lockstep over time so that common/interactive noise can be shared
        // without materializing an N x T array
        std::vector<ArCoefficients> coeffs;
        long burn = 8;
        for (const auto& s : run.samples) {
            coeffs.push_back(expand_polynomial(s, model.sigma));
            burn = std::max(burn, suggested_burn_in(s.max_radius(), Flavor::Discrete));
        }
        burn = std::min(burn, opt.burn_in_cap);
        run.burn_in = burn;

        const int p = model.degree();
        std::vector<std::vector<double>> hist(N, std::vector<double>(p, 0.0));
        std::vector<int> head(N, 0);
        Eigen::MatrixXd L;
        Eigen::VectorXd z, e;
        if (scheme.kind == InnovationScheme::Kind::Interactive) {
            L = interactive_factor(scheme, N);
            z.resize(N);
            e.resize(N);
        }
        std::vector<double> eps(N);
        for (long t = 0; t < burn + T; ++t) {
            switch (scheme.kind) {
                case InnovationScheme::Kind::Common: {
                    double v = gauss(rng_innov);
                    std::fill(eps.begin(), eps.end(), v);
                    break;
                }
                case InnovationScheme::Kind::Independent:
                    for (int i = 0; i < N; ++i) eps[i] = gauss(rng_innov);
                    break;
                case InnovationScheme::Kind::Interactive: {
                    for (int i = 0; i < N; ++i) z(i) = gauss(rng_innov);
                    e.noalias() = L * z;
                    for (int i = 0; i < N; ++i) eps[i] = e(i);
                    break;
                }
            }
            double sum = 0.0;
            for (int i = 0; i < N; ++i) {
                const auto& a = coeffs[i].a;
                const int pi = static_cast<int>(a.size());
                auto& h = hist[i];
                int& hd = head[i];
                double v = coeffs[i].sigma * eps[i];
                // h[(hd - k + p) % p] holds Z_{t-k}
                for (int k = 1; k <= pi; ++k) v -= a[k - 1] * h[(hd - k + p) % p];
                h[hd] = v;
                hd = (hd + 1) % p;
                if (t >= burn) {
                    sum += v;
                    if (opt.keep_members) run.members[i][t - burn] = v;
                }
            }
            if (t >= burn) run.aggregate[t - burn] = sum / run.b_n;
        }
    } else {
        if (scheme.kind == InnovationScheme::Kind::Interactive)
            throw std::invalid_argument("interactive innovations unsupported for OU panels");
        std::vector<OuMember> members;
        double rmin = 1e300;
        int pmax = 1;
        for (const auto& s : run.samples) {
            members.push_back(build_ou_member(s, model.sigma, opt.step));
            for (const auto& g : s.groups) rmin = std::min(rmin, g.radius);
            pmax = std::max(pmax, members.back().p);
        }
        long burn = std::min(suggested_burn_in(rmin, Flavor::Continuous, opt.step),
                             opt.burn_in_cap);
        run.burn_in = burn;
        Eigen::VectorXd z(pmax);
        for (long t = 0; t < burn + T; ++t) {
            if (scheme.kind == InnovationScheme::Kind::Common)
                for (int i = 0; i < pmax; ++i) z(i) = gauss(rng_innov);
            double sum = 0.0;
            for (int i = 0; i < N; ++i) {
                auto& m = members[i];
                if (scheme.kind == InnovationScheme::Kind::Independent)
                    for (int j = 0; j < m.p; ++j) z(j) = gauss(rng_innov);
                m.state = m.Phi * m.state + m.L * z.head(m.p);
                if (t >= burn) {
                    sum += m.state(0);
                    if (opt.keep_members) run.members[i][t - burn] = m.state(0);
                }
            }
            if (t >= burn) run.aggregate[t - burn] = sum / run.b_n;
        }
    }
    return run;
}

}  // namespace agglm
