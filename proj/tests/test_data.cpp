#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "hyperselect/data.hpp"
#include "test_support.hpp"

using namespace hyperselect;
using testing_support::data_path;
using testing_support::make_dataset;

namespace {

Dataset parse(const std::string& text, std::size_t width = 0) {
    std::istringstream in(text);
    return parse_libsvm(in, "t", width);
}

Dataset balanced(std::size_t per_class, int classes) {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int c = 1; c <= classes; ++c) {
        for (std::size_t i = 0; i < per_class; ++i) {
            rows.push_back({static_cast<double>(rows.size())});
            labels.push_back(c);
        }
    }
    return make_dataset(rows, labels);
}

}  // namespace

TEST(ParseLibsvm, SingleLine) {
    const auto ds = parse("1 1:0.5 3:2.0\n");
    ASSERT_EQ(ds.size(), 1u);
    ASSERT_EQ(ds.n_features, 3u);
    EXPECT_EQ(ds.values, (std::vector<double>{0.5, 0.0, 2.0}));
    EXPECT_EQ(ds.labels, (std::vector<int>{1}));
    EXPECT_EQ(ds.class_labels, (std::vector<long long>{1}));
}

TEST(ParseLibsvm, OrderIsPreservedAndLabelsRemapped) {
    const auto ds = parse("2 2:1\n1 1:1\n");
    EXPECT_EQ(ds.n_features, 2u);
    EXPECT_EQ(ds.values, (std::vector<double>{0, 1, 1, 0}));
    EXPECT_EQ(ds.labels, (std::vector<int>{2, 1}));

    const auto signed_labels = parse("+1 1:1\n-1 1:2\n+1 1:3\n");
    EXPECT_EQ(signed_labels.labels, (std::vector<int>{2, 1, 2}));
    EXPECT_EQ(signed_labels.class_labels, (std::vector<long long>{-1, 1}));
}

TEST(ParseLibsvm, SkipsBlankAndCommentLinesAndHonoursWidth) {
    const auto ds = parse("# header\n\n3 2:4.5\n", 5);
    EXPECT_EQ(ds.n_features, 5u);
    EXPECT_EQ(ds.size(), 1u);
}

TEST(ParseLibsvm, Errors) {
    EXPECT_THROW(parse(""), std::runtime_error);
    EXPECT_THROW(parse("1 0:1\n"), ParseError);
    EXPECT_THROW(parse("1 1:abc\n"), ParseError);
    EXPECT_THROW(parse("x 1:1\n"), ParseError);
    EXPECT_THROW(parse("1 1-1\n"), ParseError);
    EXPECT_THROW(parse("1 1:1 1:2\n"), ParseError);
    EXPECT_THROW(parse("1 4:1\n", 2), std::runtime_error);
    try {
        parse("1 1:1\n2 2:oops\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(ParseLibsvm, RoundTripIsExact) {
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 60; ++i) {
        std::vector<double> r(9);
        for (auto& v : r) v = (g() % 3 == 0) ? 0.0 : u(g);
        r[8] = 0.1 + std::abs(u(g));  // keep the width visible in the sparse text
        rows.push_back(r);
        labels.push_back(1 + i % 3);
    }
    auto ds = make_dataset(rows, labels);
    ds.class_labels = {-7, 2, 40};
    std::stringstream buf;
    write_libsvm(buf, ds);
    const auto back = parse_libsvm(buf, "t");
    EXPECT_EQ(back.values, ds.values);
    EXPECT_EQ(back.labels, ds.labels);
    EXPECT_EQ(back.class_labels, ds.class_labels);
}

TEST(ParseCsv, HeaderAndLabelColumn) {
    std::istringstream in("class,a,b\n3,0.5,1\n1,2,-1\n");
    const auto ds = parse_csv(in, "c");
    EXPECT_EQ(ds.n_features, 2u);
    EXPECT_EQ(ds.values, (std::vector<double>{0.5, 1, 2, -1}));
    EXPECT_EQ(ds.labels, (std::vector<int>{2, 1}));
    std::istringstream bad("class,a\n1,2,3\n");
    EXPECT_THROW(parse_csv(bad), ParseError);
    std::istringstream empty("class,a\n");
    EXPECT_THROW(parse_csv(empty), std::runtime_error);
}

TEST(LoadDataset, BundledFiles) {
    const auto wine = load_dataset(data_path("wine.libsvm"));
    EXPECT_EQ(wine.name, "wine");
    EXPECT_EQ(wine.size(), 178u);
    EXPECT_EQ(wine.n_features, 13u);
    EXPECT_EQ(wine.n_classes(), 3u);
    const auto sonar = load_dataset(data_path("sonar.libsvm"));
    EXPECT_EQ(sonar.size(), 208u);
    EXPECT_EQ(sonar.n_features, 60u);
    EXPECT_EQ(sonar.n_classes(), 2u);
    EXPECT_THROW(load_dataset(data_path("missing.libsvm")), std::runtime_error);
}

TEST(Split, BalancedHundredGivesExactSizes) {
    const auto ds = balanced(50, 2);
    RandomStream rng(1);
    const auto idx = split_indices(ds, {}, rng);
    EXPECT_EQ(idx.train.size(), 25u);
    EXPECT_EQ(idx.validation.size(), 25u);
    EXPECT_EQ(idx.test.size(), 50u);
}

TEST(Split, SameSeedSameSplit) {
    const auto ds = load_dataset(data_path("wine.libsvm"));
    RandomStream a(9), b(9), c(10);
    const auto x = split_indices(ds, {}, a);
    const auto y = split_indices(ds, {}, b);
    const auto z = split_indices(ds, {}, c);
    EXPECT_EQ(x.train, y.train);
    EXPECT_EQ(x.validation, y.validation);
    EXPECT_EQ(x.test, y.test);
    EXPECT_NE(x.train, z.train);
}

TEST(Split, PartitionsAreDisjointExhaustiveAndStratified) {
    const auto wine = load_dataset(data_path("wine.libsvm"));
    const auto sonar = load_dataset(data_path("sonar.libsvm"));
    for (const auto* ds : {&wine, &sonar}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            RandomStream rng(seed);
            const auto idx = split_indices(*ds, {}, rng);
            std::vector<std::size_t> all;
            all.insert(all.end(), idx.train.begin(), idx.train.end());
            all.insert(all.end(), idx.validation.begin(), idx.validation.end());
            all.insert(all.end(), idx.test.begin(), idx.test.end());
            std::sort(all.begin(), all.end());
            std::vector<std::size_t> expected(ds->size());
            std::iota(expected.begin(), expected.end(), std::size_t{0});
            ASSERT_EQ(all, expected);

            const std::pair<const std::vector<std::size_t>*, double> parts[] = {
                {&idx.train, 0.25}, {&idx.validation, 0.25}, {&idx.test, 0.5}};
            for (std::size_t c = 1; c <= ds->n_classes(); ++c) {
                const double n_c = static_cast<double>(std::count(ds->labels.begin(), ds->labels.end(), c));
                for (const auto& [part, frac] : parts) {
                    const auto in_part = std::count_if(part->begin(), part->end(),
                                                       [&](std::size_t i) { return ds->labels[i] == static_cast<int>(c); });
                    EXPECT_LE(std::abs(static_cast<double>(in_part) - frac * n_c), 1.0);
                    EXPECT_GE(in_part, 1);
                }
            }
        }
    }
}

TEST(Split, SmallClassIsAnError) {
    const auto ds = make_dataset({{0}, {1}, {2}, {3}, {4}, {5}, {6}}, {1, 1, 1, 1, 2, 2, 2});
    RandomStream rng(1);
    try {
        split_indices(ds, {}, rng);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("class 2"), std::string::npos);
    }
    EXPECT_THROW((SplitSpec{0.5, 0.5, 0.5, true}.validate()), std::invalid_argument);
}

TEST(Split, TinyClassesStillReachEveryPartition) {
    const auto ds = balanced(4, 3);
    RandomStream rng(2);
    const auto idx = split_indices(ds, {}, rng);
    EXPECT_EQ(idx.train.size() + idx.validation.size() + idx.test.size(), 12u);
    for (int c = 1; c <= 3; ++c) {
        for (const auto* part : {&idx.train, &idx.validation, &idx.test}) {
            EXPECT_TRUE(std::any_of(part->begin(), part->end(), [&](std::size_t i) { return ds.labels[i] == c; }));
        }
    }
}

TEST(Normalize, Examples) {
    const auto ds = make_dataset({{0, 3, 0.25}, {5, 3, 0.0}, {10, 3, 1.0}}, {1, 2, 1});
    const auto n = normalize(ds);
    EXPECT_EQ(n.values, (std::vector<double>{0, 0, 0.25, 0.5, 0, 0, 1, 0, 1}));
}

TEST(Normalize, UsesTrainingStatisticsOnly) {
    Partitions parts{make_dataset({{0}, {10}}, {1, 2}), make_dataset({{20}}, {1}), make_dataset({{-10}}, {2})};
    const auto n = normalize(parts);
    EXPECT_EQ(n.train.values, (std::vector<double>{0.0, 1.0}));
    EXPECT_EQ(n.validation.values, (std::vector<double>{2.0}));
    EXPECT_EQ(n.test.values, (std::vector<double>{-1.0}));
}

TEST(Shuffle, IsAPermutation) {
    std::vector<int> v(100);
    std::iota(v.begin(), v.end(), 0);
    RandomStream rng(4);
    shuffle(v, rng);
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 100; ++i) EXPECT_EQ(sorted[i], i);
    EXPECT_FALSE(std::is_sorted(v.begin(), v.end()));
}
