#include "layercast/discrete_alloc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "layercast/errors.hpp"
#include "layercast/numerics.hpp"
#include "layercast/two_layer.hpp"

namespace layercast {

Allocation Allocation::from_per_layer(std::vector<double> powers) {
    Allocation a;
    a.per_layer = std::move(powers);
    a.cumulative.resize(a.per_layer.size());
    double tail = 0.0;
    for (std::size_t j = a.per_layer.size(); j-- > 0;) {
        tail += a.per_layer[j];
        a.cumulative[j] = tail;
    }
    a.total_power = a.cumulative.empty() ? 0.0 : a.cumulative.front();
    a.validate();
    return a;
}

Allocation Allocation::from_cumulative(std::vector<double> tail_sums) {
    Allocation a;
    a.cumulative = std::move(tail_sums);
    a.per_layer.resize(a.cumulative.size());
    for (std::size_t j = 0; j < a.cumulative.size(); ++j) {
        const double next = (j + 1 < a.cumulative.size()) ? a.cumulative[j + 1] : 0.0;
        a.per_layer[j] = a.cumulative[j] - next;
    }
    a.total_power = a.cumulative.empty() ? 0.0 : a.cumulative.front();
    a.validate();
    return a;
}

void Allocation::validate() const {
    if (per_layer.size() != cumulative.size() || per_layer.empty()) {
        throw validation_error("Allocation: empty or inconsistent layer vectors");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < per_layer.size(); ++i) {
        if (!(per_layer[i] >= 0.0) || !std::isfinite(per_layer[i])) {
            throw validation_error("Allocation: per-layer powers must be finite and nonnegative");
        }
        sum += per_layer[i];
        if (i + 1 < cumulative.size() && cumulative[i] < cumulative[i + 1]) {
            throw validation_error("Allocation: cumulative powers must be nonincreasing");
        }
    }
    if (std::abs(sum - total_power) > 1e-9 * std::max(1.0, std::abs(total_power))) {
        throw validation_error("Allocation: per-layer powers do not sum to the total");
    }
}

namespace {

void check_dimensions(const DiscreteFading& fading, const Allocation& alloc) {
    if (fading.size() != alloc.layers()) {
        std::ostringstream msg;
        msg << "allocation has " << alloc.layers() << " layers but fading has "
            << fading.size() << " states";
        throw validation_error(msg.str());
    }
}

} // namespace

std::vector<double> realized_rates(const DiscreteFading& fading, const Allocation& alloc) {
    check_dimensions(fading, alloc);
    const std::size_t m = fading.size();
    std::vector<double> rates(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double g = fading.gamma(i);
        const double t_next = (i + 1 < m) ? alloc.cumulative[i + 1] : 0.0;
        rates[i] = std::log2((1.0 + g * alloc.cumulative[i]) / (1.0 + g * t_next));
    }
    return rates;
}

std::vector<double> realized_distortions(const DiscreteFading& fading, const Allocation& alloc,
                                         double bandwidth_ratio) {
    check_dimensions(fading, alloc);
    if (!(bandwidth_ratio > 0.0)) {
        throw validation_error("realized_distortions: bandwidth ratio must be positive");
    }
    const std::size_t m = fading.size();
    std::vector<double> d(m + 1);
    d[0] = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double g = fading.gamma(i);
        const double t_next = (i + 1 < m) ? alloc.cumulative[i + 1] : 0.0;
        d[i + 1] = d[i] * std::pow((1.0 + g * alloc.cumulative[i]) / (1.0 + g * t_next),
                                   -bandwidth_ratio);
    }
    return d;
}

double expected_distortion(const DiscreteFading& fading, const Allocation& alloc,
                           double bandwidth_ratio) {
    check_dimensions(fading, alloc);
    if (!(bandwidth_ratio > 0.0)) {
        throw validation_error("expected_distortion: bandwidth ratio must be positive");
    }
    const std::size_t m = fading.size();
    double ed = fading.outage_prob();
    double prod = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double g = fading.gamma(i);
        const double t_next = (i + 1 < m) ? alloc.cumulative[i + 1] : 0.0;
        prod *= std::pow((1.0 + g * alloc.cumulative[i]) / (1.0 + g * t_next), -bandwidth_ratio);
        ed += fading.prob(i) * prod;
    }
    return ed;
}

namespace {

// Memo key: exact bit patterns of a recursion state. Results are pure
// functions of the tuple, so reuse across backtracks cannot change output.
struct AllocKey {
    int level;
    std::uint64_t w, beta, u, alpha;
    bool operator==(const AllocKey&) const = default;
};

struct AllocKeyHash {
    std::size_t operator()(const AllocKey& k) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(k.level);
        for (std::uint64_t v : {k.w, k.beta, k.u, k.alpha}) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

AllocKey make_key(int level, double w, double beta, double u, double alpha) {
    return {level, std::bit_cast<std::uint64_t>(w), std::bit_cast<std::uint64_t>(beta),
            std::bit_cast<std::uint64_t>(u), std::bit_cast<std::uint64_t>(alpha)};
}

// Recursive allocation (Algorithm sketch):
//   alloc(i, w, beta, u, alpha):
//     U <- two-layer ceiling of (u, w, alpha, beta)
//     bottom layer (i = 1): T_2* <- min(U, P)
//     if U <= P: try the unconstrained merge (w <- W, beta <- alpha),
//       accept T_{i+1}* <- U when the layers below deliver T_i* >= U
//     otherwise merge constrained (u <- p_{i-1} + u), layer i stays inactive
//       with T_{i+1}* <- T_i*
// Run iteratively on an explicit stack; ties at U == T take the unconstrained
// branch (both branch values coincide there).
std::vector<double> alloc_cumulative(const DiscreteFading& fading, double total_power, double b) {
    const std::size_t m = fading.size();
    const double slack = 1e-12 * (1.0 + total_power);

    struct Frame {
        int level; // paper index i; this frame decides T_{i+1}
        double w, beta, u, alpha;
        double ceiling = 0.0;
        int phase = 0; // 0 entering, 1 after unconstrained child, 2 after constrained child
        AllocKey key;
    };

    std::unordered_map<AllocKey, std::vector<double>, AllocKeyHash> memo;
    std::vector<Frame> stack;
    stack.reserve(m);
    stack.push_back({static_cast<int>(m) - 1, fading.prob(m - 1), fading.gamma(m - 1),
                     fading.prob(m - 2), fading.gamma(m - 2)});

    std::vector<double> ret; // T_2..T_{i+1} of the frame that just completed

    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.phase == 0) {
            f.key = make_key(f.level, f.w, f.beta, f.u, f.alpha);
            if (auto it = memo.find(f.key); it != memo.end()) {
                ret = it->second;
                stack.pop_back();
                continue;
            }
            const TwoLayerParams params{f.u, f.w, f.alpha, f.beta, b};
            f.ceiling = power_ceiling(params);
            if (f.level == 1) {
                ret = {std::min(f.ceiling, total_power)};
                memo.emplace(f.key, ret);
                stack.pop_back();
                continue;
            }
            if (f.ceiling <= total_power + slack) {
                f.phase = 1;
                const double aggregate = aggregate_weight(params);
                stack.push_back({f.level - 1, aggregate, f.alpha, fading.prob(f.level - 2),
                                 fading.gamma(f.level - 2)});
            } else {
                f.phase = 2;
                stack.push_back({f.level - 1, f.w, f.beta, fading.prob(f.level - 2) + f.u,
                                 fading.gamma(f.level - 2)});
            }
            continue;
        }
        if (f.phase == 1) {
            if (ret.back() >= f.ceiling - slack) {
                ret.push_back(std::min(f.ceiling, ret.back()));
                memo.emplace(f.key, ret);
                stack.pop_back();
            } else {
                // Unconstrained ceiling infeasible: redo with the constrained merge.
                f.phase = 2;
                stack.push_back({f.level - 1, f.w, f.beta, fading.prob(f.level - 2) + f.u,
                                 fading.gamma(f.level - 2)});
            }
            continue;
        }
        ret.push_back(ret.back()); // layer `level` inactive
        memo.emplace(f.key, ret);
        stack.pop_back();
    }

    std::vector<double> cumulative(m);
    cumulative[0] = total_power;
    for (std::size_t j = 1; j < m; ++j) cumulative[j] = ret[j - 1];
    return cumulative;
}

} // namespace

DiscreteResult minimize_expected_distortion(const DiscreteFading& fading, double total_power,
                                            double bandwidth_ratio) {
    if (!(total_power > 0.0)) {
        throw validation_error("minimize_expected_distortion: total power must be positive");
    }
    if (!(bandwidth_ratio > 0.0)) {
        throw validation_error("minimize_expected_distortion: bandwidth ratio must be positive");
    }
    DiscreteResult result;
    if (fading.size() == 1) {
        result.allocation = Allocation::from_cumulative({total_power});
    } else {
        result.allocation =
            Allocation::from_cumulative(alloc_cumulative(fading, total_power, bandwidth_ratio));
    }
    result.realized_rates = realized_rates(fading, result.allocation);
    result.realized_distortions = realized_distortions(fading, result.allocation, bandwidth_ratio);
    result.expected_distortion = fading.outage_prob();
    for (std::size_t k = 0; k < fading.size(); ++k) {
        result.expected_distortion += fading.prob(k) * result.realized_distortions[k + 1];
    }
    return result;
}

std::pair<Allocation, double> brute_force_min(const DiscreteFading& fading, double total_power,
                                              double bandwidth_ratio, int grid_steps) {
    const std::size_t m = fading.size();
    if (m > 5) {
        throw validation_error("brute_force_min: refusing M > 5 (cost is grid_steps^(M-1))");
    }
    if (!(total_power > 0.0) || !(bandwidth_ratio > 0.0) || grid_steps < 1) {
        throw validation_error("brute_force_min: bad power, bandwidth ratio, or grid");
    }
    const int n = grid_steps;
    // attenuation factor tables: att[i][a] = (1 + gamma_i * t_a)^-b
    std::vector<std::vector<double>> att(m, std::vector<double>(n + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (int a = 0; a <= n; ++a) {
            att[i][a] = std::pow(1.0 + fading.gamma(i) * (total_power * a / n), -bandwidth_ratio);
        }
    }
    const double p0 = fading.outage_prob();
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> idx(m, n), best_idx(m, n); // idx[j] = grid index of T_{j+1}; idx[0] fixed at P

    // layer: 1-based paper index of the finished layer; prev = index of T_layer
    auto recurse = [&](auto&& self, std::size_t layer, int prev, double prod,
                       double partial) -> void {
        if (partial >= best) return; // remaining layers only add nonnegative mass
        if (layer == m) {
            const double total = partial + fading.prob(m - 1) * prod * att[m - 1][prev];
            if (total < best) {
                best = total;
                best_idx = idx;
            }
            return;
        }
        for (int c = prev; c >= 0; --c) {
            const double new_prod = prod * att[layer - 1][prev] / att[layer - 1][c];
            idx[layer] = c;
            self(self, layer + 1, c, new_prod, partial + fading.prob(layer - 1) * new_prod);
        }
    };
    recurse(recurse, 1, n, 1.0, p0);

    std::vector<double> cumulative(m);
    cumulative[0] = total_power;
    for (std::size_t j = 1; j < m; ++j) cumulative[j] = total_power * best_idx[j] / n;
    Allocation alloc = Allocation::from_cumulative(std::move(cumulative));
    return {std::move(alloc), best};
}

std::vector<SweepEntry> snr_sweep(const DiscreteFading& fading, double bandwidth_ratio,
                                  const std::vector<double>& snr_db_list, unsigned threads) {
    if (snr_db_list.empty()) {
        throw validation_error("snr_sweep: empty SNR list");
    }
    std::vector<SweepEntry> entries(snr_db_list.size());
    auto solve_one = [&](std::size_t i) {
        const double power = num::db_to_linear(snr_db_list[i]);
        entries[i] = {snr_db_list[i], power,
                      minimize_expected_distortion(fading, power, bandwidth_ratio)};
    };
    const unsigned workers =
        std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(snr_db_list.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < entries.size(); ++i) solve_one(i);
        return entries;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < entries.size(); i += workers) solve_one(i);
        });
    }
    for (std::thread& th : pool) th.join();
    return entries;
}

} // namespace layercast
