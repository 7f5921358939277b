#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperselect/random.hpp"

namespace hyperselect {

/// Dense labelled samples. Labels are remapped to 1..C in ascending order of the
/// original label values; `class_labels[c - 1]` gives the original label of class c.
struct Dataset {
    std::string name;
    std::size_t n_features = 0;
    std::vector<double> values;  // row-major, size() x n_features
    std::vector<int> labels;     // 1..n_classes
    std::vector<long long> class_labels;

    std::size_t size() const { return labels.size(); }
    std::size_t n_classes() const { return class_labels.size(); }

    std::span<const double> row(std::size_t i) const { return {values.data() + i * n_features, n_features}; }
    std::span<double> row(std::size_t i) { return {values.data() + i * n_features, n_features}; }

    /// Rows `indices`, in that order, with the class mapping kept intact.
    Dataset subset(std::span<const std::size_t> indices) const {
        Dataset out;
        out.name = name;
        out.n_features = n_features;
        out.class_labels = class_labels;
        out.values.reserve(indices.size() * n_features);
        out.labels.reserve(indices.size());
        for (std::size_t i : indices) {
            auto r = row(i);
            out.values.insert(out.values.end(), r.begin(), r.end());
            out.labels.push_back(labels[i]);
        }
        return out;
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline bool parse_double(std::string_view token, double& out) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    if (token.empty()) return false;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

inline bool parse_label(std::string_view token, long long& out) {
    double value = 0.0;
    if (!parse_double(token, value)) return false;
    if (value != std::floor(value) || std::abs(value) > 1e15) return false;
    out = static_cast<long long>(value);
    return true;
}

/// Fills labels/class_labels from raw labels: sorted unique originals become 1..C.
inline void assign_classes(Dataset& ds, const std::vector<long long>& raw) {
    std::vector<long long> uniq = raw;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    ds.class_labels = uniq;
    ds.labels.clear();
    ds.labels.reserve(raw.size());
    for (long long r : raw) {
        ds.labels.push_back(static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), r) - uniq.begin()) + 1);
    }
}

}  // namespace detail

/// Reads the sparse text format: one sample per line, "label index:value ...", with
/// 1-based feature indices. Absent indices are zero. Blank lines and lines starting
/// with '#' are skipped. The largest index seen sets the width unless `n_features`
/// is given.
inline Dataset parse_libsvm(std::istream& in, std::string name = {}, std::size_t n_features = 0) {
    struct Entry {
        std::size_t index;
        double value;
    };
    std::vector<std::vector<Entry>> rows;
    std::vector<long long> raw_labels;
    std::size_t max_index = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if (text.empty() || text.front() == '#') continue;
        std::istringstream tokens{std::string(text)};
        std::string token;
        tokens >> token;
        long long label = 0;
        if (!detail::parse_label(token, label)) throw ParseError(line_no, "invalid label '" + token + "'");
        std::vector<Entry> entries;
        while (tokens >> token) {
            const auto colon = token.find(':');
            if (colon == std::string::npos) throw ParseError(line_no, "expected index:value, got '" + token + "'");
            std::size_t index = 0;
            const auto idx = std::string_view(token).substr(0, colon);
            auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), index);
            if (ec != std::errc{} || ptr != idx.data() + idx.size() || index == 0) {
                throw ParseError(line_no, "invalid feature index in '" + token + "'");
            }
            double value = 0.0;
            if (!detail::parse_double(std::string_view(token).substr(colon + 1), value)) {
                throw ParseError(line_no, "non-numeric value in '" + token + "'");
            }
            for (const auto& e : entries) {
                if (e.index == index) throw ParseError(line_no, "duplicate feature index " + std::to_string(index));
            }
            entries.push_back({index, value});
            max_index = std::max(max_index, index);
        }
        rows.push_back(std::move(entries));
        raw_labels.push_back(label);
    }
    if (rows.empty()) throw std::runtime_error("dataset '" + name + "' contains no samples");
    if (n_features == 0) n_features = max_index;
    if (n_features == 0) throw std::runtime_error("dataset '" + name + "' has no features");
    if (max_index > n_features) {
        throw std::runtime_error("feature index " + std::to_string(max_index) + " exceeds declared width " +
                                 std::to_string(n_features));
    }

    Dataset ds;
    ds.name = std::move(name);
    ds.n_features = n_features;
    ds.values.assign(rows.size() * n_features, 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& e : rows[i]) ds.values[i * n_features + e.index - 1] = e.value;
    }
    detail::assign_classes(ds, raw_labels);
    return ds;
}

/// Writes the sparse text format with original labels; zero values are elided and
/// non-zero values printed with round-trip precision.
inline void write_libsvm(std::ostream& out, const Dataset& ds) {
    char buf[32];
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out << ds.class_labels[static_cast<std::size_t>(ds.labels[i] - 1)];
        auto r = ds.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (r[j] == 0.0) continue;
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, r[j]);
            out << ' ' << (j + 1) << ':' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
        }
        out << '\n';
    }
}

/// Comma-separated values with a header row and the class label in the first column.
inline Dataset parse_csv(std::istream& in, std::string name = {}) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    bool header_seen = false;
    Dataset ds;
    std::vector<long long> raw_labels;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = detail::trim(line);
        if (text.empty()) continue;
        std::vector<std::string_view> cells;
        std::size_t start = 0;
        for (;;) {
            const auto comma = text.find(',', start);
            cells.push_back(detail::trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (!header_seen) {
            header_seen = true;
            if (cells.size() < 2) throw ParseError(line_no, "header needs a label column and at least one feature");
            width = cells.size();
            continue;
        }
        if (cells.size() != width) {
            throw ParseError(line_no, "expected " + std::to_string(width) + " columns, got " + std::to_string(cells.size()));
        }
        long long label = 0;
        if (!detail::parse_label(cells[0], label)) throw ParseError(line_no, "invalid label '" + std::string(cells[0]) + "'");
        raw_labels.push_back(label);
        for (std::size_t c = 1; c < cells.size(); ++c) {
            double v = 0.0;
            if (!detail::parse_double(cells[c], v)) {
                throw ParseError(line_no, "non-numeric value '" + std::string(cells[c]) + "'");
            }
            ds.values.push_back(v);
        }
    }
    if (raw_labels.empty()) throw std::runtime_error("dataset '" + name + "' contains no samples");
    ds.name = std::move(name);
    ds.n_features = width - 1;
    detail::assign_classes(ds, raw_labels);
    return ds;
}

/// Loads a dataset file; ".csv" selects the CSV reader, anything else the sparse format.
/// The dataset name is the file stem.
inline Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");
    auto slash = path.find_last_of("/\\");
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    const bool csv = stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0;
    if (auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0) stem.resize(dot);
    return csv ? parse_csv(in, stem) : parse_libsvm(in, stem);
}

struct SplitSpec {
    double train_fraction = 0.25;
    double validation_fraction = 0.25;
    double test_fraction = 0.50;
    bool stratified = true;

    void validate() const {
        const double sum = train_fraction + validation_fraction + test_fraction;
        if (train_fraction <= 0.0 || validation_fraction <= 0.0 || test_fraction <= 0.0 || std::abs(sum - 1.0) > 1e-9) {
            throw std::invalid_argument("split fractions must be positive and sum to 1");
        }
    }
};

struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
    std::vector<std::size_t> test;
};

struct Partitions {
    Dataset train;
    Dataset validation;
    Dataset test;
};

/// Fisher-Yates shuffle driven by RandomStream, so results do not depend on the
/// standard library's shuffle implementation.
template <class T>
void shuffle(std::vector<T>& items, RandomStream& rng) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng.index(i)]);
}

/// Shuffled partition of sample indices. When stratified, partition sizes per class
/// follow cumulative rounding of the fractions over classes taken in label order, so
/// overall sizes are round(n f) and each class is within one sample of its exact
/// share; every class then gets at least one sample in every partition.
inline SplitIndices split_indices(const Dataset& ds, const SplitSpec& spec, RandomStream& rng) {
    spec.validate();
    std::vector<std::vector<std::size_t>> groups;
    if (spec.stratified) {
        groups.resize(ds.n_classes());
        for (std::size_t i = 0; i < ds.size(); ++i) groups[static_cast<std::size_t>(ds.labels[i] - 1)].push_back(i);
        for (std::size_t c = 0; c < groups.size(); ++c) {
            if (groups[c].size() < 4) {
                throw std::invalid_argument("class " + std::to_string(ds.class_labels[c]) + " has " +
                                            std::to_string(groups[c].size()) +
                                            " samples; stratified splitting needs at least 4");
            }
        }
    } else {
        if (ds.size() < 3) throw std::invalid_argument("splitting needs at least 3 samples");
        groups.emplace_back(ds.size());
        for (std::size_t i = 0; i < ds.size(); ++i) groups[0][i] = i;
    }

    auto rounded = [](double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); };
    const double edge1 = spec.train_fraction;
    const double edge2 = spec.train_fraction + spec.validation_fraction;

    SplitIndices out;
    std::size_t cumulative = 0;
    for (auto& group : groups) {
        shuffle(group, rng);
        const std::size_t before = cumulative;
        cumulative += group.size();
        std::size_t n_train = rounded(static_cast<double>(cumulative) * edge1) - rounded(static_cast<double>(before) * edge1);
        std::size_t n_first_two =
            rounded(static_cast<double>(cumulative) * edge2) - rounded(static_cast<double>(before) * edge2);
        n_first_two = std::max(n_first_two, n_train);
        std::size_t n_val = n_first_two - n_train;
        std::size_t n_test = group.size() - n_first_two;
        // Guarantee one sample per partition by borrowing from the largest one.
        std::size_t* sizes[] = {&n_train, &n_val, &n_test};
        for (auto* sz : sizes) {
            if (*sz > 0) continue;
            auto** largest = std::max_element(std::begin(sizes), std::end(sizes), [](auto* a, auto* b) { return *a < *b; });
            --**largest;
            ++*sz;
        }
        out.train.insert(out.train.end(), group.begin(), group.begin() + static_cast<std::ptrdiff_t>(n_train));
        out.validation.insert(out.validation.end(), group.begin() + static_cast<std::ptrdiff_t>(n_train),
                              group.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
        out.test.insert(out.test.end(), group.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), group.end());
    }
    return out;
}

inline Partitions split(const Dataset& ds, const SplitSpec& spec, RandomStream& rng) {
    const auto idx = split_indices(ds, spec, rng);
    return {ds.subset(idx.train), ds.subset(idx.validation), ds.subset(idx.test)};
}

/// Per-feature min-max scaling fitted on one dataset and applied to others.
/// Constant features map to 0.
class MinMaxScaler {
public:
    static MinMaxScaler fit(const Dataset& ds) {
        MinMaxScaler s;
        s.min_.assign(ds.n_features, 0.0);
        s.max_.assign(ds.n_features, 0.0);
        for (std::size_t i = 0; i < ds.size(); ++i) {
            auto r = ds.row(i);
            for (std::size_t j = 0; j < r.size(); ++j) {
                if (i == 0 || r[j] < s.min_[j]) s.min_[j] = r[j];
                if (i == 0 || r[j] > s.max_[j]) s.max_[j] = r[j];
            }
        }
        return s;
    }

    Dataset apply(Dataset ds) const {
        if (ds.n_features != min_.size()) throw std::invalid_argument("scaler fitted on a different feature count");
        for (std::size_t i = 0; i < ds.size(); ++i) {
            auto r = ds.row(i);
            for (std::size_t j = 0; j < r.size(); ++j) {
                const double range = max_[j] - min_[j];
                r[j] = range > 0.0 ? (r[j] - min_[j]) / range : 0.0;
            }
        }
        return ds;
    }

    const std::vector<double>& min() const { return min_; }
    const std::vector<double>& max() const { return max_; }

private:
    std::vector<double> min_;
    std::vector<double> max_;
};

/// Scales all three partitions with statistics of the training partition only.
inline Partitions normalize(Partitions parts) {
    const auto scaler = MinMaxScaler::fit(parts.train);
    return {scaler.apply(std::move(parts.train)), scaler.apply(std::move(parts.validation)),
            scaler.apply(std::move(parts.test))};
}

/// Min-max scaling of a dataset with its own statistics.
inline Dataset normalize(const Dataset& ds) { return MinMaxScaler::fit(ds).apply(ds); }

}  // namespace hyperselect
