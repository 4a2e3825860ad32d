#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "agglm/shape.hpp"

namespace agglm {

struct DiracDensityQuery : std::logic_error {
    using std::logic_error::logic_error;
};
struct OutOfSupport : std::domain_error {
    using std::domain_error::domain_error;
};
struct InvalidMixture : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Flavor { Discrete, Continuous };

namespace detail {

// Tabulated CDF of an unnormalized density f(s) on [lo, hi] with a possible
// integrable singularity at s = lo. Nodes cluster geometrically toward lo.
class SingularTable {
public:
    SingularTable() = default;
    SingularTable(const std::function<double(double)>& f, double lo, double hi,
                  int nodes = 4096);

    double mass() const { return mass_; }
    double cdf(double s) const;       // normalized, in [0,1]
    double quantile(double u) const;  // inverse of cdf
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    void build_slopes();
    double hermite(size_t i, double s) const;

    double lo_ = 0.0, hi_ = 1.0, mass_ = 0.0;
    std::vector<double> s_;      // node positions
    std::vector<double> cdf_;    // normalized cumulative mass at nodes
    std::vector<double> slope_;  // monotone Hermite slopes of the CDF
};

}  // namespace detail

// Radial mixture law: density |1 - rho|^d phi(rho) on [0,1] (discrete flavor)
// or |r|^d phi(r) on [0,inf) (continuous flavor), numerically normalized.
class RadialLaw {
public:
    RadialLaw(Flavor flavor, double d, ShapeFn phi = ShapeFn::constant());

    Flavor flavor() const { return flavor_; }
    double d() const { return d_; }
    const ShapeFn& phi() const { return phi_; }
    double normalization() const { return norm_; }  // integral of the raw density
    // effective upper end of the support used for tabulation (continuous
    // flavor truncates once the tail mass is negligible)
    double support_hi() const;

    // unnormalized density factor |.|^d phi(.)
    double raw_density(double x) const;
    double density(double x) const;  // normalized
    double cdf(double x) const;
    double sample(std::mt19937_64& rng) const;

private:
    Flavor flavor_;
    double d_;
    ShapeFn phi_;
    bool singular_at_one_;  // discrete: singular point rho = 1; continuous: r = 0
    double norm_ = 0.0;
    detail::SingularTable table_;  // over s = distance from the singular point
};

// Angular mixture law: density psi(x)|x - x0|^-beta on a finite support
// window; beta = 1 is the Dirac mass at x0.
class AngularLaw {
public:
    // Default support: (-pi, pi] for discrete use; pass an explicit window for
    // continuous tau laws.
    AngularLaw(double beta, double x0, ShapeFn psi = ShapeFn::constant(),
               std::optional<std::pair<double, double>> support = std::nullopt);

    bool is_dirac() const { return beta_ >= 1.0; }
    double beta() const { return beta_; }
    double x0() const { return x0_; }
    const ShapeFn& psi() const { return psi_; }
    std::pair<double, double> support() const { return {lo_, hi_}; }
    double normalization() const { return norm_; }  // raw mass (throws if Dirac)

    double raw_density(double x) const;  // psi(x)|x-x0|^-beta, throws if Dirac
    double density(double x) const;
    double cdf(double x) const;
    double sample(std::mt19937_64& rng) const;

private:
    double beta_, x0_;
    ShapeFn psi_;
    double lo_, hi_;
    double norm_ = 0.0;
    // right piece: x in [max(lo, x0), hi]; left piece: x in [lo, min(hi, x0)]
    detail::SingularTable right_, left_;
    double w_right_ = 0.0;  // probability of the right piece
};

// Mixture of point atoms and diffuse singular pieces, the mixed-atomic dQ
// extension for continuous tau.
class MixedAngularLaw {
public:
    struct Atom {
        double weight;
        double location;
    };
    struct DiffusePiece {
        double weight;
        AngularLaw law;
    };

    MixedAngularLaw(std::vector<Atom> atoms, std::vector<DiffusePiece> diffuse);

    // density of the diffuse part only (atoms carry no density)
    double density(double x) const;
    double sample(std::mt19937_64& rng) const;
    double atom_mass() const { return atom_mass_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<DiffusePiece>& diffuse() const { return diffuse_; }

private:
    std::vector<Atom> atoms_;
    std::vector<DiffusePiece> diffuse_;
    double atom_mass_ = 0.0;
};

// Suggested truncation count so that max|y|^count < eps.
int suggest_ma_count(double max_pole_radius, double eps = 1e-12);

}  // namespace agglm
