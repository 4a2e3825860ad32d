#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace agglm {

// Named shape-function presets for the phi/psi factors of the mixture laws.
// Config files refer to these by name; no arbitrary code is accepted.
class ShapeFn {
public:
    enum class Preset { Constant, Indicator, ExpDecay, Polynomial, TwoExponent };

    static ShapeFn constant(double value = 1.0) {
        ShapeFn s;
        s.preset_ = Preset::Constant;
        s.params_ = {value};
        return s;
    }
    // 1 on (a, b), 0 elsewhere
    static ShapeFn indicator(double a, double b) {
        if (!(b > a)) throw std::invalid_argument("indicator: need a < b");
        ShapeFn s;
        s.preset_ = Preset::Indicator;
        s.params_ = {a, b};
        return s;
    }
    // exp(-rate * |x|)
    static ShapeFn exp_decay(double rate = 1.0) {
        if (!(rate > 0)) throw std::invalid_argument("exp_decay: need rate > 0");
        ShapeFn s;
        s.preset_ = Preset::ExpDecay;
        s.params_ = {rate};
        return s;
    }
    // c0 + c1 x + c2 x^2 + ... , clamped at 0 from below
    static ShapeFn polynomial(std::vector<double> coeffs) {
        ShapeFn s;
        s.preset_ = Preset::Polynomial;
        s.params_ = std::move(coeffs);
        return s;
    }
    // min(1, |x|^-gamma): flat near 0, |x|^-gamma tail. Combined with the
    // |x - x0|^-beta singular factor this gives the two-exponent tail laws.
    static ShapeFn two_exponent(double gamma) {
        if (!(gamma > 0)) throw std::invalid_argument("two_exponent: need gamma > 0");
        ShapeFn s;
        s.preset_ = Preset::TwoExponent;
        s.params_ = {gamma};
        return s;
    }

    double operator()(double x) const {
        switch (preset_) {
            case Preset::Constant:
                return params_[0];
            case Preset::Indicator:
                return (x > params_[0] && x < params_[1]) ? 1.0 : 0.0;
            case Preset::ExpDecay:
                return std::exp(-params_[0] * std::abs(x));
            case Preset::Polynomial: {
                double v = 0.0;
                for (auto it = params_.rbegin(); it != params_.rend(); ++it)
                    v = v * x + *it;
                return v > 0.0 ? v : 0.0;
            }
            case Preset::TwoExponent: {
                double ax = std::abs(x);
                if (ax <= 1.0) return 1.0;
                return std::pow(ax, -params_[0]);
            }
        }
        return 0.0;
    }

    Preset preset() const { return preset_; }
    const std::vector<double>& params() const { return params_; }

    static std::string preset_name(Preset p) {
        switch (p) {
            case Preset::Constant: return "constant";
            case Preset::Indicator: return "indicator";
            case Preset::ExpDecay: return "exp-decay";
            case Preset::Polynomial: return "polynomial";
            case Preset::TwoExponent: return "two-exponent";
        }
        return "?";
    }

private:
    Preset preset_ = Preset::Constant;
    std::vector<double> params_ = {1.0};
};

}  // namespace agglm
