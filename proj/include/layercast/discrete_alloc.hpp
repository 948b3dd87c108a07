#pragma once

#include <utility>
#include <vector>

#include "layercast/fading.hpp"

namespace layercast {

/// Per-layer powers P_i >= 0 (index 0 is layer 1) with the cumulative tail
/// sums T_j = sum_{i>=j} P_i. T_1 equals the total power; T_{M+1} is 0 and not
/// stored.
struct Allocation {
    std::vector<double> per_layer;
    std::vector<double> cumulative;
    double total_power = 0.0;

    static Allocation from_per_layer(std::vector<double> powers);
    static Allocation from_cumulative(std::vector<double> tail_sums);

    std::size_t layers() const { return per_layer.size(); }
    void validate() const;
};

struct DiscreteResult {
    Allocation allocation;
    double expected_distortion = 1.0;
    std::vector<double> realized_distortions; // D_rlz^(k), k = 0..M; D_rlz^(0) = 1
    std::vector<double> realized_rates;       // R_i, bits per channel use
};

/// R_i = log2(1 + gamma_i P_i / (1 + gamma_i * sum_{j>i} P_j)).
std::vector<double> realized_rates(const DiscreteFading& fading, const Allocation& alloc);

/// D_rlz^(k) = prod_{j<=k} ((1+gamma_j T_j)/(1+gamma_j T_{j+1}))^-b, with the
/// outage entry D_rlz^(0) = 1 stored at index 0.
std::vector<double> realized_distortions(const DiscreteFading& fading, const Allocation& alloc,
                                         double bandwidth_ratio);

/// E[D] = p_0 + sum_i p_i D_rlz^(i).
double expected_distortion(const DiscreteFading& fading, const Allocation& alloc,
                           double bandwidth_ratio);

/// Optimal multi-layer allocation minimizing E[D]: top-down recursion where
/// each step solves a two-layer split against the aggregate layer above,
/// assuming the unconstrained ceiling first and backtracking to the
/// constrained merge when the layers below cannot cover it. Recursion states
/// are memoized by exact parameter tuple and run on an explicit stack.
DiscreteResult minimize_expected_distortion(const DiscreteFading& fading, double total_power,
                                            double bandwidth_ratio);

/// Exhaustive grid search over 0 <= T_M <= ... <= T_2 <= P (testing oracle).
/// Refuses M > 5; cost grows as grid_steps^(M-1).
std::pair<Allocation, double> brute_force_min(const DiscreteFading& fading, double total_power,
                                              double bandwidth_ratio, int grid_steps);

struct SweepEntry {
    double snr_db;
    double power;
    DiscreteResult result;
};

/// One optimal allocation per SNR point; entries are independent and may be
/// computed on `threads` threads with output identical to sequential order.
std::vector<SweepEntry> snr_sweep(const DiscreteFading& fading, double bandwidth_ratio,
                                  const std::vector<double>& snr_db_list, unsigned threads = 1);

} // namespace layercast
