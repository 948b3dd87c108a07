#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace layercast {

struct FadingState {
    double gamma; // channel power gain, linear scale, > 0
    double prob;  // probability mass
};

/// Discrete channel pmf: ordered states (gamma_i, p_i), i = 1..M with
/// gamma_M > ... > gamma_1 > 0, plus an outage mass p_0 at gamma = 0.
/// States with prob * gamma == 0 are dropped at construction (they would be
/// allocated zero power anyway); the count of removed states is kept as a
/// diagnostic. Immutable after construction.
class DiscreteFading {
public:
    DiscreteFading(std::vector<FadingState> states, double outage_prob);

    std::size_t size() const { return states_.size(); }
    const std::vector<FadingState>& states() const { return states_; }

    /// 0-based access; layer i here is layer i+1 in 1-based terms.
    double gamma(std::size_t i) const { return states_[i].gamma; }
    double prob(std::size_t i) const { return states_[i].prob; }
    double outage_prob() const { return outage_prob_; }

    std::size_t dropped_states() const { return dropped_states_; }

private:
    std::vector<FadingState> states_;
    double outage_prob_ = 0.0;
    std::size_t dropped_states_ = 0;
};

class ContinuousFading;

/// Uniform-grid discretization of a Rayleigh (exponential-gain) pdf with mean
/// mean_gain, truncated at `truncation`, onto M levels gamma_i = i*truncation/M.
/// Masses come from the exponential cdf in closed form: each mass is assigned
/// to the closest lower level, and the tail beyond the truncation point goes to
/// the top level.
DiscreteFading discretize_rayleigh(double mean_gain, double truncation, int levels);

/// Same closest-lower-level rule for an arbitrary continuous fading law, with
/// masses taken as cdf differences.
DiscreteFading discretize(const ContinuousFading& fading, double truncation, int levels);

/// p_0 of the pmf.
double outage_probability(const DiscreteFading& fading);

/// Erlang density (L/mean)^L g^{L-1} e^{-Lg/mean} / (L-1)!; the gain law of an
/// average of L iid Rayleigh-faded paths. L = 1 is the exponential pdf.
double erlang_pdf(int diversity, double mean_gain, double gamma);

/// Continuous channel-gain law: Rayleigh (exponential gain), Erlang(L), or a
/// tabulated pdf. Tabulated input is renormalized and modeled with a monotone
/// piecewise-linear cdf; its pdf is the interpolant's derivative (piecewise
/// constant). Copyable; evaluation is pure and thread-safe.
class ContinuousFading {
public:
    enum class Kind { rayleigh, erlang, tabulated };

    static ContinuousFading rayleigh(double mean_gain);
    static ContinuousFading erlang(int diversity, double mean_gain);
    static ContinuousFading tabulated(std::vector<double> gammas, std::vector<double> pdf);

    Kind kind() const { return kind_; }
    double mean() const { return mean_; }
    /// Diversity order L; 1 for Rayleigh, 1 for tabulated (unused there).
    int diversity() const { return diversity_; }

    double pdf(double gamma) const;
    double cdf(double gamma) const;

    /// f'(gamma)/f(gamma). Analytic for Rayleigh/Erlang; tabulated pdfs are
    /// piecewise constant and have no pointwise derivative.
    double pdf_log_derivative(double gamma) const;
    bool has_analytic_log_derivative() const { return kind_ != Kind::tabulated; }

    /// Upper end of the support: +inf for Rayleigh/Erlang, last knot otherwise.
    double support_upper() const;
    /// Smallest x with 1 - cdf(x) <= mass (quadrature truncation point).
    double tail_quantile(double mass) const;
    /// Largest pdf value over the support (rejection-sampling envelope).
    double pdf_max() const;

    const std::vector<double>& table_gammas() const { return tab_gammas_; }
    const std::vector<double>& table_pdf() const { return tab_pdf_; }

private:
    ContinuousFading() = default;

    Kind kind_ = Kind::rayleigh;
    double mean_ = 1.0;
    int diversity_ = 1;
    // tabulated representation: knots, piecewise-constant pdf on intervals,
    // cdf values at knots
    std::vector<double> tab_gammas_;
    std::vector<double> tab_pdf_;
    std::vector<double> tab_cell_pdf_;
    std::vector<double> tab_cdf_;
};

} // namespace layercast
