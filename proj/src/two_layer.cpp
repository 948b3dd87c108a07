#include "layercast/two_layer.hpp"

#include <cmath>
#include <limits>

#include "layercast/errors.hpp"

namespace layercast {

void TwoLayerParams::validate() const {
    if (!(weight_low >= 0.0) || !(weight_high >= 0.0)) {
        throw validation_error("two_layer: weights must be nonnegative");
    }
    if (weight_low == 0.0 && weight_high == 0.0) {
        throw validation_error("two_layer: degenerate weights, u and w both zero");
    }
    if (!(gain_low > 0.0) || !(gain_high > gain_low)) {
        throw validation_error("two_layer: gains must satisfy beta > alpha > 0");
    }
    if (!(bandwidth_ratio > 0.0)) {
        throw validation_error("two_layer: bandwidth ratio must be positive");
    }
}

double weighted_distortion(const TwoLayerParams& params, double total_power, double high_power) {
    params.validate();
    const double u = params.weight_low, w = params.weight_high;
    const double alpha = params.gain_low, beta = params.gain_high;
    const double b = params.bandwidth_ratio;
    const double low_factor =
        std::pow((1.0 + alpha * total_power) / (1.0 + alpha * high_power), -b);
    return low_factor * (u + std::pow(1.0 + beta * high_power, -b) * w);
}

double power_ceiling(const TwoLayerParams& params) {
    params.validate();
    const double u = params.weight_low, w = params.weight_high;
    const double alpha = params.gain_low, beta = params.gain_high;
    // beta/alpha <= 1 + u/w, division-free
    if (w * (beta - alpha) <= u * alpha) return 0.0;
    if (u == 0.0) return std::numeric_limits<double>::infinity();
    const double ratio = w * (beta - alpha) / (u * alpha);
    return (std::pow(ratio, 1.0 / (1.0 + params.bandwidth_ratio)) - 1.0) / beta;
}

double aggregate_weight(const TwoLayerParams& params) {
    const double ceiling = power_ceiling(params);
    if (std::isinf(ceiling)) {
        throw validation_error("aggregate_weight: ceiling is unbounded (u = 0)");
    }
    const double b = params.bandwidth_ratio;
    return std::pow(1.0 + params.gain_low * ceiling, b) *
           (params.weight_low +
            std::pow(1.0 + params.gain_high * ceiling, -b) * params.weight_high);
}

TwoLayerSplit optimal_split(const TwoLayerParams& params, double total_power) {
    const double ceiling = power_ceiling(params);
    if (!(total_power >= 0.0)) {
        throw validation_error("optimal_split: total power must be nonnegative");
    }
    const double b = params.bandwidth_ratio;
    TwoLayerSplit split;
    split.ceiling = ceiling;
    split.ceiling_unbounded = std::isinf(ceiling);
    if (split.ceiling_unbounded || ceiling > total_power) {
        // Constrained: everything goes to the high layer.
        split.assigned_high = total_power;
        split.constrained = true;
        split.min_distortion =
            params.weight_low +
            std::pow(1.0 + params.gain_high * total_power, -b) * params.weight_high;
    } else {
        split.assigned_high = ceiling;
        split.constrained = false;
        split.aggregate_weight = aggregate_weight(params);
        split.min_distortion =
            std::pow(1.0 + params.gain_low * total_power, -b) * *split.aggregate_weight;
    }
    return split;
}

} // namespace layercast
