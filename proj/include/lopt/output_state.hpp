#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lopt/amplitudes.hpp"

namespace lopt {

/// Per-channel single-photon probabilities.
struct SourceEfficiencies {
    std::vector<double> p;

    explicit SourceEfficiencies(std::vector<double> probs) : p(std::move(probs)) {
        for (double v : p)
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("SourceEfficiencies: entries must be in [0,1]");
    }

    static SourceEfficiencies uniform(int n, double value) {
        return SourceEfficiencies(std::vector<double>(n, value));
    }

    int modes() const { return static_cast<int>(p.size()); }

    double p_max() const {
        double m = 0.0;
        for (double v : p) m = std::max(m, v);
        return m;
    }
};

/// P_s = prod_i p_i^{s_i} (1-p_i)^{1-s_i}.
inline double pattern_probability(const SourceEfficiencies& eff, const InputPattern& s) {
    if (eff.modes() != s.modes())
        throw std::invalid_argument("pattern_probability: length mismatch");
    double prob = 1.0;
    for (int i = 0; i < s.modes(); ++i) prob *= s.bits[i] ? eff.p[i] : (1.0 - eff.p[i]);
    return prob;
}

/// Conditional photon-number statistics of mode 1 given the chi outcome on
/// the detector modes.
struct OutputStatistics {
    std::vector<double> w;       // unnormalized weights, index n1 = 0..N
    double success_prob = 0.0;   // sum of w = probability of the outcome
    double normalization = 0.0;  // K = 1 / success_prob when possible
    std::vector<double> c;       // c_{n1} = K w_{n1}
    bool possible = false;       // success_prob > 0
};

/// w_{n1} = sum_s P_s |T^{(n1)}_{s,chi}|^2; only patterns with
/// sum(s) = D + n1 contribute (fixed summation order, bit-stable).
inline OutputStatistics output_statistics(const Interferometer& itf,
                                          const SourceEfficiencies& eff,
                                          const ProjectionState& chi) {
    const int N = itf.dim();
    if (eff.modes() != N) throw std::invalid_argument("output_statistics: p length mismatch");
    if (chi.modes() != N - 1)
        throw std::invalid_argument("output_statistics: chi must live on N-1 modes");
    OutputStatistics out;
    out.w.assign(static_cast<std::size_t>(N) + 1, 0.0);
    const int d = chi.total();
    for (int n1 = 0; n1 + d <= N; ++n1) {
        const auto patterns = enumerate_patterns(N, d + n1);
        double w = 0.0;
        for (std::size_t k = 0; k < patterns.size(); ++k) {
            const InputPattern& s = patterns.at(k);
            const double ps = pattern_probability(eff, s);
            if (ps == 0.0) continue;
            w += ps * std::norm(amplitude_T(itf, s, chi, n1));
        }
        out.w[static_cast<std::size_t>(n1)] = w;
        out.success_prob += w;
    }
    out.possible = out.success_prob > 0.0;
    if (out.possible) {
        out.normalization = 1.0 / out.success_prob;
        out.c.resize(out.w.size());
        for (std::size_t i = 0; i < out.w.size(); ++i) out.c[i] = out.w[i] * out.normalization;
    }
    return out;
}

/// c1/c0 against the analytic ceiling p(N1 - D)/(1 - p), for uniform
/// efficiencies. Covers both the D = N1 - 1 case and the D = 0 companion.
struct BoundReport {
    double ratio = 0.0;
    double bound = 0.0;
    double margin = 0.0;  // bound - ratio
    bool ratio_defined = false;
};

inline BoundReport verify_ratio_bound(const Interferometer& itf, double p_uniform,
                                      const ProjectionState& chi) {
    const int N = itf.dim();
    if (!(p_uniform > 0.0 && p_uniform < 1.0))
        throw std::invalid_argument("verify_ratio_bound: requires 0 < p < 1");
    const OutputStatistics stats =
        output_statistics(itf, SourceEfficiencies::uniform(N, p_uniform), chi);
    BoundReport rep;
    rep.bound = p_uniform / (1.0 - p_uniform) * static_cast<double>(N - chi.total());
    if (!stats.possible || stats.w[0] <= 0.0) return rep;  // c0 = 0: ratio undefined
    rep.ratio = stats.w[1] / stats.w[0];
    rep.margin = rep.bound - rep.ratio;
    rep.ratio_defined = true;
    return rep;
}

/// Decomposes mixed-efficiency statistics as the convex combination over
/// extreme configurations: each channel with 0 < p_i < p_max is split as
/// (p_i/p_max) * [p_i -> p_max] + (1 - p_i/p_max) * [p_i -> 0], so every
/// configuration has all inputs at p_max or vacuum.
struct ConvexityReport {
    double max_weight_deviation = 0.0;
    double c1_direct = 0.0;
    double c1_extreme_max = 0.0;
    int configurations = 0;
};

inline ConvexityReport convexity_check(const Interferometer& itf, const SourceEfficiencies& eff,
                                       const ProjectionState& chi) {
    const int N = itf.dim();
    const OutputStatistics direct = output_statistics(itf, eff, chi);
    const double pmax = eff.p_max();

    std::vector<int> partial;
    for (int i = 0; i < N; ++i)
        if (eff.p[i] > 0.0 && eff.p[i] < pmax) partial.push_back(i);

    std::vector<double> combined(static_cast<std::size_t>(N) + 1, 0.0);
    ConvexityReport rep;
    rep.configurations = 1 << partial.size();
    for (int mask = 0; mask < rep.configurations; ++mask) {
        SourceEfficiencies cfg = eff;
        double weight = 1.0;
        for (std::size_t k = 0; k < partial.size(); ++k) {
            const double lam = eff.p[static_cast<std::size_t>(partial[k])] / pmax;
            if (mask & (1 << k)) {
                cfg.p[static_cast<std::size_t>(partial[k])] = pmax;
                weight *= lam;
            } else {
                cfg.p[static_cast<std::size_t>(partial[k])] = 0.0;
                weight *= 1.0 - lam;
            }
        }
        const OutputStatistics part = output_statistics(itf, cfg, chi);
        for (std::size_t i = 0; i < combined.size(); ++i) combined[i] += weight * part.w[i];
        if (part.possible) rep.c1_extreme_max = std::max(rep.c1_extreme_max, part.c[1]);
    }
    for (std::size_t i = 0; i < combined.size(); ++i)
        rep.max_weight_deviation = std::max(rep.max_weight_deviation,
                                            std::abs(combined[i] - direct.w[i]));
    if (direct.possible) rep.c1_direct = direct.c[1];
    return rep;
}

}  // namespace lopt
