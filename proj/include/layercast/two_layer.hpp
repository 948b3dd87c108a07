#pragma once

#include <optional>

namespace layercast {

/// Parameters of the two-layer split: a low layer (weight u, gain alpha) under
/// an aggregate high layer (weight w, gain beta), with beta > alpha > 0.
struct TwoLayerParams {
    double weight_low;      // u >= 0
    double weight_high;     // w >= 0, not both zero
    double gain_low;        // alpha > 0
    double gain_high;       // beta > alpha
    double bandwidth_ratio; // b > 0

    void validate() const;
};

struct TwoLayerSplit {
    double ceiling;                          // U2 (+inf when unbounded)
    bool ceiling_unbounded;                  // u == 0 with beta > alpha
    double assigned_high;                    // T2* = min(U2, T1)
    double min_distortion;                   // D1*
    std::optional<double> aggregate_weight;  // W1, present on the unconstrained branch
    bool constrained;                        // total-power constraint active
};

/// Weighted distortion of the split at high-layer power T2 <= T1:
/// ((1+alpha*T1)/(1+alpha*T2))^-b * (u + (1+beta*T2)^-b * w).
double weighted_distortion(const TwoLayerParams& params, double total_power, double high_power);

/// Power ceiling U2: the most power worth giving the high layer, independent
/// of the total power. Zero when beta/alpha <= 1 + u/w (evaluated as
/// w*(beta-alpha) <= u*alpha to stay exact at u -> 0); +inf when u == 0 with
/// beta > alpha.
double power_ceiling(const TwoLayerParams& params);

/// Equivalent single-layer weight W1 = (1+alpha*U2)^b [u + (1+beta*U2)^-b w].
/// Requires a finite ceiling.
double aggregate_weight(const TwoLayerParams& params);

/// Optimal split of total_power between the two layers.
TwoLayerSplit optimal_split(const TwoLayerParams& params, double total_power);

} // namespace layercast
