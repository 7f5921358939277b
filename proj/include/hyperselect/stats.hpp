#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperselect::stats {

inline constexpr double kSignificance = 0.05;
/// Largest number of non-zero differences evaluated exactly in automatic mode.
inline constexpr std::size_t kExactThreshold = 20;
/// Largest number of non-zero differences the exact distribution supports.
inline constexpr std::size_t kExactLimit = 52;

enum class WilcoxonMode { automatic, exact, normal };

struct WilcoxonResult {
    double w_statistic = 0.0;  // min(W+, W-)
    double w_plus = 0.0;
    std::size_t n_effective = 0;
    double p_value = 1.0;  // two-sided
    bool significant = false;
    bool exact = true;
};

/// Non-zero paired differences and their average ranks.
///
/// Differences are compared with an absolute tolerance of 1e-9 times the largest
/// magnitude in either sample (at least 1): smaller |x - y| counts as zero and |d|
/// values closer than that share a tie group. This keeps results unchanged when both
/// samples are shifted by a constant.
struct SignedRanks {
    std::vector<double> ranks;  // average ranks, 1-based
    std::vector<bool> positive;
    std::vector<std::size_t> tie_sizes;
};

inline SignedRanks signed_ranks(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("wilcoxon: samples differ in length");
    if (x.empty()) throw std::invalid_argument("wilcoxon: samples are empty");
    double scale = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) scale = std::max({scale, std::abs(x[i]), std::abs(y[i])});
    const double tol = 1e-9 * scale;

    struct Diff {
        double magnitude;
        bool positive;
    };
    std::vector<Diff> diffs;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (std::abs(d) <= tol) continue;
        diffs.push_back({std::abs(d), d > 0.0});
    }
    std::stable_sort(diffs.begin(), diffs.end(), [](const Diff& a, const Diff& b) { return a.magnitude < b.magnitude; });

    SignedRanks out;
    out.ranks.resize(diffs.size());
    out.positive.resize(diffs.size());
    std::size_t i = 0;
    while (i < diffs.size()) {
        std::size_t j = i + 1;
        while (j < diffs.size() && diffs[j].magnitude - diffs[j - 1].magnitude <= tol) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            out.ranks[k] = avg;
            out.positive[k] = diffs[k].positive;
        }
        out.tie_sizes.push_back(j - i);
        i = j;
    }
    return out;
}

namespace detail {

/// Two-sided exact p-value over all 2^n sign assignments, computed by counting
/// subsets of doubled ranks (integers) with a dynamic program.
inline double exact_p_value(const SignedRanks& sr) {
    const std::size_t n = sr.ranks.size();
    std::vector<std::uint64_t> doubled(n);
    std::uint64_t total = 0;
    std::uint64_t observed = 0;
    for (std::size_t k = 0; k < n; ++k) {
        doubled[k] = static_cast<std::uint64_t>(std::llround(2.0 * sr.ranks[k]));
        total += doubled[k];
        if (sr.positive[k]) observed += doubled[k];
    }
    // counts[s] = number of sign assignments whose positive doubled-rank sum is s
    std::vector<std::uint64_t> counts(total + 1, 0);
    counts[0] = 1;
    std::uint64_t reach = 0;
    for (std::uint64_t r : doubled) {
        reach += r;
        for (std::uint64_t s = reach; s >= r; --s) {
            counts[s] += counts[s - r];
            if (s == r) break;
        }
    }
    auto deviation = [&](std::uint64_t s) {
        const auto twice = static_cast<std::int64_t>(2 * s) - static_cast<std::int64_t>(total);
        return twice < 0 ? -twice : twice;
    };
    const auto obs_dev = deviation(observed);
    std::uint64_t extreme = 0;
    for (std::uint64_t s = 0; s <= total; ++s) {
        if (deviation(s) >= obs_dev) extreme += counts[s];
    }
    return static_cast<double>(extreme) / std::ldexp(1.0, static_cast<int>(n));
}

inline double normal_p_value(const SignedRanks& sr, double w_plus) {
    const double n = static_cast<double>(sr.ranks.size());
    const double mean = n * (n + 1.0) / 4.0;
    double variance = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
    for (std::size_t t : sr.tie_sizes) {
        const double td = static_cast<double>(t);
        variance -= (td * td * td - td) / 48.0;
    }
    if (variance <= 0.0) return 1.0;
    const double z = std::max(0.0, std::abs(w_plus - mean) - 0.5) / std::sqrt(variance);
    return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

}  // namespace detail

/// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences are
/// dropped; tied magnitudes get average ranks. Automatic mode enumerates the exact
/// null distribution up to kExactThreshold non-zero differences and otherwise uses
/// the normal approximation with tie and continuity corrections.
inline WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y,
                                           WilcoxonMode mode = WilcoxonMode::automatic) {
    const auto sr = signed_ranks(x, y);
    WilcoxonResult r;
    r.n_effective = sr.ranks.size();
    double total = 0.0;
    for (std::size_t k = 0; k < sr.ranks.size(); ++k) {
        total += sr.ranks[k];
        if (sr.positive[k]) r.w_plus += sr.ranks[k];
    }
    r.w_statistic = std::min(r.w_plus, total - r.w_plus);
    if (r.n_effective == 0) {
        r.p_value = 1.0;
        r.significant = false;
        return r;
    }
    bool use_exact = false;
    switch (mode) {
        case WilcoxonMode::automatic: use_exact = r.n_effective <= kExactThreshold; break;
        case WilcoxonMode::exact:
            if (r.n_effective > kExactLimit) {
                throw std::invalid_argument("exact Wilcoxon supports at most " + std::to_string(kExactLimit) +
                                            " non-zero differences");
            }
            use_exact = true;
            break;
        case WilcoxonMode::normal: use_exact = false; break;
    }
    r.exact = use_exact;
    r.p_value = use_exact ? detail::exact_p_value(sr) : detail::normal_p_value(sr, r.w_plus);
    r.significant = r.p_value < kSignificance;
    return r;
}

inline double mean(std::span<const double> v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

struct TechniqueSamples {
    std::string name;
    std::vector<double> values;  // one per run, paired across techniques by run index
};

struct BestMarking {
    std::size_t best = 0;              // index of the technique with the best mean
    std::vector<bool> bold;            // best, plus everything not significantly different from it
    std::vector<double> p_values;      // against the best; 1 for the best itself
};

/// Picks the technique with the highest mean (lowest when `minimize`), the first one
/// on equal means, and bolds every technique whose paired Wilcoxon test against it is
/// not significant at 5%.
inline BestMarking mark_best(std::span<const TechniqueSamples> table, bool minimize = false) {
    if (table.empty()) throw std::invalid_argument("mark_best needs at least one technique");
    BestMarking out;
    std::vector<double> means;
    for (const auto& t : table) means.push_back(mean(t.values));
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (minimize ? means[i] < means[out.best] : means[i] > means[out.best]) out.best = i;
    }
    out.bold.assign(table.size(), false);
    out.p_values.assign(table.size(), 1.0);
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (i == out.best) {
            out.bold[i] = true;
            continue;
        }
        const auto r = wilcoxon_signed_rank(table[out.best].values, table[i].values);
        out.p_values[i] = r.p_value;
        out.bold[i] = !r.significant;
    }
    return out;
}

}  // namespace hyperselect::stats
