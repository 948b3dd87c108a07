#include "layercast/fading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "layercast/errors.hpp"

namespace layercast {

namespace {
constexpr double kMassTol = 1e-12; // exact-sum tolerance for probability masses
}

DiscreteFading::DiscreteFading(std::vector<FadingState> states, double outage_prob) {
    if (states.empty()) {
        throw validation_error("DiscreteFading: at least one fading state required");
    }
    if (!(outage_prob >= 0.0) || outage_prob > 1.0 + kMassTol) {
        throw validation_error("DiscreteFading: outage_prob must lie in [0, 1]");
    }
    outage_prob_ = outage_prob;
    states_.reserve(states.size());
    for (const FadingState& s : states) {
        if (!(s.gamma >= 0.0) || !std::isfinite(s.gamma)) {
            throw validation_error("DiscreteFading: gains must be finite and nonnegative");
        }
        if (!(s.prob >= 0.0)) {
            throw validation_error("DiscreteFading: probability masses must be nonnegative");
        }
        if (s.prob * s.gamma == 0.0) {
            // Zero expected gain: the layer would get zero power. Mass at
            // gamma = 0 is outage by definition; zero-mass states just vanish.
            ++dropped_states_;
            if (s.gamma == 0.0) outage_prob_ += s.prob;
            continue;
        }
        if (!states_.empty() && !(s.gamma > states_.back().gamma)) {
            throw validation_error("DiscreteFading: gains must be strictly increasing");
        }
        states_.push_back(s);
    }
    if (states_.empty()) {
        throw validation_error("DiscreteFading: all states had zero expected gain");
    }
    double total = outage_prob_;
    for (const FadingState& s : states_) total += s.prob;
    if (std::abs(total - 1.0) > kMassTol) {
        std::ostringstream msg;
        msg << "DiscreteFading: masses sum to " << total << ", expected 1 within " << kMassTol;
        throw validation_error(msg.str());
    }
}

DiscreteFading discretize_rayleigh(double mean_gain, double truncation, int levels) {
    if (!(mean_gain > 0.0) || !(truncation > 0.0) || levels < 1) {
        throw validation_error("discretize_rayleigh: mean_gain, truncation must be > 0 and levels >= 1");
    }
    const int m = levels;
    const double step = truncation / m;
    std::vector<FadingState> states;
    states.reserve(m);
    // Closed-form exponential masses; the telescoping sum is exactly 1.
    for (int i = 1; i < m; ++i) {
        const double lo = std::exp(-(i * step) / mean_gain);
        const double hi = std::exp(-((i + 1) * step) / mean_gain);
        states.push_back({i * step, lo - hi});
    }
    states.push_back({truncation, std::exp(-truncation / mean_gain)});
    const double outage = -std::expm1(-step / mean_gain);
    return DiscreteFading(std::move(states), outage);
}

DiscreteFading discretize(const ContinuousFading& fading, double truncation, int levels) {
    if (!(truncation > 0.0) || levels < 1) {
        throw validation_error("discretize: truncation must be > 0 and levels >= 1");
    }
    const int m = levels;
    const double step = truncation / m;
    std::vector<FadingState> states;
    states.reserve(m);
    for (int i = 1; i < m; ++i) {
        states.push_back({i * step, fading.cdf((i + 1) * step) - fading.cdf(i * step)});
    }
    states.push_back({truncation, 1.0 - fading.cdf(truncation)});
    return DiscreteFading(std::move(states), fading.cdf(step));
}

double outage_probability(const DiscreteFading& fading) { return fading.outage_prob(); }

double erlang_pdf(int diversity, double mean_gain, double gamma) {
    if (diversity < 1 || !(mean_gain > 0.0)) {
        throw validation_error("erlang_pdf: diversity >= 1 and mean_gain > 0 required");
    }
    if (!(gamma >= 0.0)) {
        throw validation_error("erlang_pdf: gamma must be nonnegative");
    }
    const double rate = diversity / mean_gain;
    if (gamma == 0.0) {
        return diversity == 1 ? rate : 0.0;
    }
    return std::exp(diversity * std::log(rate) + (diversity - 1) * std::log(gamma) -
                    rate * gamma - std::lgamma(diversity));
}

ContinuousFading ContinuousFading::rayleigh(double mean_gain) {
    if (!(mean_gain > 0.0) || !std::isfinite(mean_gain)) {
        throw validation_error("rayleigh: mean_gain must be positive and finite");
    }
    ContinuousFading f;
    f.kind_ = Kind::rayleigh;
    f.mean_ = mean_gain;
    f.diversity_ = 1;
    return f;
}

ContinuousFading ContinuousFading::erlang(int diversity, double mean_gain) {
    if (diversity < 1) {
        throw validation_error("erlang: diversity must be a positive integer");
    }
    if (!(mean_gain > 0.0) || !std::isfinite(mean_gain)) {
        throw validation_error("erlang: mean_gain must be positive and finite");
    }
    ContinuousFading f;
    f.kind_ = Kind::erlang;
    f.mean_ = mean_gain;
    f.diversity_ = diversity;
    return f;
}

ContinuousFading ContinuousFading::tabulated(std::vector<double> gammas, std::vector<double> pdf) {
    if (gammas.size() < 2 || gammas.size() != pdf.size()) {
        throw validation_error("tabulated: need >= 2 samples with matching gamma/pdf sizes");
    }
    if (!(gammas.front() >= 0.0)) {
        throw validation_error("tabulated: gains must be nonnegative");
    }
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        if (i > 0 && !(gammas[i] > gammas[i - 1])) {
            throw validation_error("tabulated: gamma samples must be strictly increasing");
        }
        if (!(pdf[i] >= 0.0) || !std::isfinite(pdf[i])) {
            throw validation_error("tabulated: pdf samples must be finite and nonnegative");
        }
    }
    ContinuousFading f;
    f.kind_ = Kind::tabulated;
    f.diversity_ = 1;
    const std::size_t n = gammas.size();
    f.tab_cell_pdf_.resize(n - 1);
    f.tab_cdf_.resize(n, 0.0);
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        f.tab_cell_pdf_[i] = 0.5 * (pdf[i] + pdf[i + 1]);
        mass += f.tab_cell_pdf_[i] * (gammas[i + 1] - gammas[i]);
        f.tab_cdf_[i + 1] = mass;
    }
    if (std::abs(mass - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << "tabulated: pdf mass is " << mass << ", expected 1 within 1e-6";
        throw validation_error(msg.str());
    }
    double mean = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        f.tab_cell_pdf_[i] /= mass;
        f.tab_cdf_[i + 1] /= mass;
        mean += f.tab_cell_pdf_[i] * 0.5 *
                (gammas[i + 1] * gammas[i + 1] - gammas[i] * gammas[i]);
        pdf[i] /= mass;
    }
    pdf.back() /= mass;
    if (!(mean > 0.0)) {
        throw validation_error("tabulated: distribution has zero mean gain");
    }
    f.mean_ = mean;
    f.tab_gammas_ = std::move(gammas);
    f.tab_pdf_ = std::move(pdf);
    return f;
}

double ContinuousFading::pdf(double gamma) const {
    if (kind_ != Kind::tabulated) {
        return gamma < 0.0 ? 0.0 : erlang_pdf(diversity_, mean_, gamma);
    }
    if (gamma < tab_gammas_.front() || gamma >= tab_gammas_.back()) {
        return gamma == tab_gammas_.back() ? tab_cell_pdf_.back() : 0.0;
    }
    const auto it = std::upper_bound(tab_gammas_.begin(), tab_gammas_.end(), gamma);
    const std::size_t cell = static_cast<std::size_t>(it - tab_gammas_.begin()) - 1;
    return tab_cell_pdf_[cell];
}

double ContinuousFading::cdf(double gamma) const {
    if (gamma <= 0.0) return 0.0;
    if (kind_ != Kind::tabulated) {
        const double x = diversity_ * gamma / mean_;
        if (diversity_ == 1) return -std::expm1(-x);
        // 1 - sum of the first L Poisson(x) terms; the sum underflows to 0 for
        // large x, where the cdf is 1 to double precision.
        double term = std::exp(-x);
        double tail = term;
        for (int k = 1; k < diversity_; ++k) {
            term *= x / k;
            tail += term;
        }
        return 1.0 - tail;
    }
    if (gamma <= tab_gammas_.front()) return 0.0;
    if (gamma >= tab_gammas_.back()) return 1.0;
    const auto it = std::upper_bound(tab_gammas_.begin(), tab_gammas_.end(), gamma);
    const std::size_t cell = static_cast<std::size_t>(it - tab_gammas_.begin()) - 1;
    return tab_cdf_[cell] + tab_cell_pdf_[cell] * (gamma - tab_gammas_[cell]);
}

double ContinuousFading::pdf_log_derivative(double gamma) const {
    if (kind_ == Kind::tabulated) {
        throw validation_error("pdf_log_derivative: tabulated pdfs have no pointwise derivative");
    }
    if (!(gamma > 0.0) && diversity_ > 1) {
        throw validation_error("pdf_log_derivative: gamma must be positive");
    }
    return (diversity_ - 1) / gamma - diversity_ / mean_;
}

double ContinuousFading::support_upper() const {
    return kind_ == Kind::tabulated ? tab_gammas_.back()
                                    : std::numeric_limits<double>::infinity();
}

double ContinuousFading::tail_quantile(double mass) const {
    if (!(mass > 0.0)) {
        throw validation_error("tail_quantile: mass must be positive");
    }
    if (kind_ == Kind::tabulated) return tab_gammas_.back();
    if (diversity_ == 1) return -mean_ * std::log(std::min(mass, 1.0));
    double x = mean_;
    for (int i = 0; i < 1024 && 1.0 - cdf(x) > mass; ++i) x *= 1.5;
    return x;
}

double ContinuousFading::pdf_max() const {
    switch (kind_) {
        case Kind::rayleigh:
            return 1.0 / mean_;
        case Kind::erlang: {
            if (diversity_ == 1) return 1.0 / mean_;
            const double mode = mean_ * (diversity_ - 1) / diversity_;
            return pdf(mode);
        }
        case Kind::tabulated:
            return *std::max_element(tab_cell_pdf_.begin(), tab_cell_pdf_.end());
    }
    return 0.0;
}

} // namespace layercast
