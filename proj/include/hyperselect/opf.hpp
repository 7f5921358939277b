#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "hyperselect/binary_mapping.hpp"
#include "hyperselect/data.hpp"

/// Supervised optimum-path forest over the complete graph with the f_max path cost.
///
/// Distances are squared Euclidean over the selected features. f_max only compares
/// and takes maxima of edge weights, and squaring is monotone, so every decision is
/// the same as with plain Euclidean distances; path_cost() reports Euclidean units.
namespace hyperselect::opf {

inline constexpr std::size_t kNoPredecessor = std::numeric_limits<std::size_t>::max();

/// Indices of the selected features, ascending.
inline std::vector<std::size_t> active_features(const FeatureMask& mask) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < mask.size(); ++j) {
        if (mask[j]) out.push_back(j);
    }
    return out;
}

inline double squared_distance(std::span<const double> a, std::span<const double> b,
                               std::span<const std::size_t> features) {
    double sum = 0.0;
    for (std::size_t j : features) {
        const double d = a[j] - b[j];
        sum += d * d;
    }
    return sum;
}

struct OpfModel {
    std::size_t n_features = 0;           // width of the samples the model accepts
    std::vector<std::size_t> features;    // active feature indices
    std::vector<double> samples;          // training rows, compacted to `features`
    std::vector<int> true_labels;
    std::vector<int> labels;              // label propagated from the conquering prototype
    std::vector<double> cost;             // squared-distance units
    std::vector<std::size_t> predecessor;
    std::vector<bool> prototype;
    std::vector<std::size_t> ordered_nodes;  // ascending (cost, index)

    std::size_t size() const { return labels.size(); }
    double path_cost(std::size_t i) const { return std::sqrt(cost[i]); }
    std::span<const double> node(std::size_t i) const {
        return {samples.data() + i * features.size(), features.size()};
    }
};

namespace detail {

inline void require_trainable(const Dataset& train, const FeatureMask& mask) {
    if (mask.size() != train.n_features) throw std::invalid_argument("mask width does not match the dataset");
    if (train.size() == 0) throw std::invalid_argument("cannot train on an empty set");
    const int first = train.labels.front();
    if (std::all_of(train.labels.begin(), train.labels.end(), [&](int l) { return l == first; })) {
        throw std::invalid_argument("training set holds a single class; no prototypes can be found");
    }
}

/// Dense pairwise squared distances over the active features.
inline std::vector<double> distance_matrix(const Dataset& train, std::span<const std::size_t> features) {
    const std::size_t n = train.size();
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            const double d = squared_distance(train.row(i), train.row(k), features);
            dist[i * n + k] = d;
            dist[k * n + i] = d;
        }
    }
    return dist;
}

inline std::vector<std::size_t> prototypes_from(const Dataset& train, const std::vector<double>& dist) {
    // Prim's algorithm from node 0. Candidate edges compare by (weight, same-class,
    // tree-node index): among equal weights an edge joining two classes wins, so
    // duplicated samples with different labels always meet in the tree.
    const std::size_t n = train.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> key(n, inf);
    std::vector<std::size_t> parent(n, kNoPredecessor);
    std::vector<bool> in_tree(n, false);
    std::vector<bool> is_proto(n, false);
    auto same = [&](std::size_t a, std::size_t b) { return train.labels[a] == train.labels[b]; };
    auto better = [&](std::size_t v, double w, std::size_t from) {
        if (w != key[v]) return w < key[v];
        if (parent[v] == kNoPredecessor) return true;
        const bool cross_new = !same(v, from);
        const bool cross_old = !same(v, parent[v]);
        if (cross_new != cross_old) return cross_new;
        return from < parent[v];
    };
    auto rank_less = [&](std::size_t a, std::size_t b) {
        if (key[a] != key[b]) return key[a] < key[b];
        const bool ca = parent[a] != kNoPredecessor && !same(a, parent[a]);
        const bool cb = parent[b] != kNoPredecessor && !same(b, parent[b]);
        if (ca != cb) return ca;
        return a < b;
    };

    key[0] = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t u = kNoPredecessor;
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_tree[v] && (u == kNoPredecessor || rank_less(v, u))) u = v;
        }
        in_tree[u] = true;
        if (parent[u] != kNoPredecessor && !same(u, parent[u])) {
            is_proto[u] = true;
            is_proto[parent[u]] = true;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_tree[v] && better(v, dist[u * n + v], u)) {
                key[v] = dist[u * n + v];
                parent[v] = u;
            }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_proto[i]) out.push_back(i);
    }
    return out;
}

}  // namespace detail

/// Nodes incident to a class-crossing edge of the minimum spanning tree, ascending.
inline std::vector<std::size_t> find_prototypes(const Dataset& train, const FeatureMask& mask) {
    detail::require_trainable(train, mask);
    const auto features = active_features(mask);
    return detail::prototypes_from(train, detail::distance_matrix(train, features));
}

/// Prototypes start at cost 0, every other node at infinity; nodes are conquered in
/// ascending (cost, index) order and offer max(cost, weight) to the rest. An offer
/// replaces the current path only when strictly cheaper.
inline OpfModel train(const Dataset& train, const FeatureMask& mask) {
    detail::require_trainable(train, mask);
    const std::size_t n = train.size();
    OpfModel model;
    model.n_features = train.n_features;
    model.features = active_features(mask);
    const auto dist = detail::distance_matrix(train, model.features);
    const auto protos = detail::prototypes_from(train, dist);

    model.samples.reserve(n * model.features.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto r = train.row(i);
        for (std::size_t j : model.features) model.samples.push_back(r[j]);
    }
    model.true_labels = train.labels;
    model.labels = train.labels;
    model.cost.assign(n, std::numeric_limits<double>::infinity());
    model.predecessor.assign(n, kNoPredecessor);
    model.prototype.assign(n, false);
    for (std::size_t p : protos) {
        model.prototype[p] = true;
        model.cost[p] = 0.0;
    }

    std::vector<bool> done(n, false);
    model.ordered_nodes.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t s = kNoPredecessor;
        for (std::size_t v = 0; v < n; ++v) {
            if (!done[v] && (s == kNoPredecessor || model.cost[v] < model.cost[s])) s = v;
        }
        done[s] = true;
        model.ordered_nodes.push_back(s);
        for (std::size_t t = 0; t < n; ++t) {
            if (done[t]) continue;
            const double offer = std::max(model.cost[s], dist[s * n + t]);
            if (offer < model.cost[t]) {
                model.cost[t] = offer;
                model.predecessor[t] = s;
                model.labels[t] = model.labels[s];
            }
        }
    }
    return model;
}

/// Label of the node minimizing max(cost(s), d(s, sample)); ties go to the lowest
/// node index. `sample` has the full feature width the model was trained on.
inline int classify(const OpfModel& model, std::span<const double> sample) {
    if (sample.size() != model.n_features) throw std::invalid_argument("sample width does not match the model");
    double best = std::numeric_limits<double>::infinity();
    std::size_t winner = kNoPredecessor;
    for (std::size_t s : model.ordered_nodes) {
        if (model.cost[s] > best) break;
        const auto node = model.node(s);
        double d = 0.0;
        for (std::size_t k = 0; k < model.features.size(); ++k) {
            const double diff = node[k] - sample[model.features[k]];
            d += diff * diff;
        }
        const double value = std::max(model.cost[s], d);
        if (value < best || (value == best && s < winner)) {
            best = value;
            winner = s;
        }
    }
    return model.labels[winner];
}

inline std::vector<int> predict(const OpfModel& model, const Dataset& ds) {
    std::vector<int> out(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) out[i] = classify(model, ds.row(i));
    return out;
}

/// Per-class error-rate accuracy:
///   1 - sum_c (FP_c / (n - n_c) + FN_c / n_c) / (2 C)
/// over the C classes present in `truth`. A false-positive term whose denominator is
/// zero (single-class test set) counts as 0.
inline double balanced_accuracy(std::span<const int> truth, std::span<const int> predicted) {
    if (truth.empty()) throw std::invalid_argument("accuracy of an empty set is undefined");
    if (truth.size() != predicted.size()) throw std::invalid_argument("label vectors differ in length");
    const int max_label = std::max(*std::max_element(truth.begin(), truth.end()),
                                   *std::max_element(predicted.begin(), predicted.end()));
    std::vector<double> count(static_cast<std::size_t>(max_label) + 1, 0.0);
    std::vector<double> fp(count.size(), 0.0);
    std::vector<double> fn(count.size(), 0.0);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        count[static_cast<std::size_t>(truth[i])] += 1.0;
        if (truth[i] != predicted[i]) {
            fn[static_cast<std::size_t>(truth[i])] += 1.0;
            fp[static_cast<std::size_t>(predicted[i])] += 1.0;
        }
    }
    const double n = static_cast<double>(truth.size());
    double error = 0.0;
    std::size_t classes = 0;
    for (std::size_t c = 0; c < count.size(); ++c) {
        if (count[c] == 0.0) continue;
        ++classes;
        error += fn[c] / count[c];
        if (n - count[c] > 0.0) error += fp[c] / (n - count[c]);
    }
    return 1.0 - error / (2.0 * static_cast<double>(classes));
}

inline double plain_accuracy(std::span<const int> truth, std::span<const int> predicted) {
    if (truth.empty()) throw std::invalid_argument("accuracy of an empty set is undefined");
    if (truth.size() != predicted.size()) throw std::invalid_argument("label vectors differ in length");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hits += truth[i] == predicted[i] ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

/// Balanced accuracy of `model` on `test`.
inline double accuracy(const OpfModel& model, const Dataset& test) {
    const auto predicted = predict(model, test);
    return balanced_accuracy(test.labels, predicted);
}

}  // namespace hyperselect::opf
