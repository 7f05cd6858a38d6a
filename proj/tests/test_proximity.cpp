#include <doctest.h>

#include <random>

#include "golden.hpp"
#include "metricgraph/matrix.hpp"
#include "metricgraph/proximity.hpp"

using namespace metricgraph;

namespace {

EntityTable random_table(std::mt19937& rng, std::size_t n, std::size_t m,
                         bool non_negative) {
    std::uniform_real_distribution<double> dist(non_negative ? 0.1 : -1.0, 1.0);
    EntityTable t;
    for (std::size_t i = 0; i < n; ++i) {
        t.ids.push_back("e" + std::to_string(i));
        std::vector<double> row(m);
        for (auto& x : row) x = dist(rng);
        t.features.push_back(std::move(row));
    }
    t.column_names.assign(m, "c");
    for (std::size_t c = 0; c < m; ++c) t.column_names[c] += std::to_string(c);
    return t;
}

DocumentCorpus random_corpus(std::mt19937& rng, std::size_t n, std::size_t m) {
    std::uniform_int_distribution<int> dist(0, 3);
    DocumentCorpus c;
    for (std::size_t d = 0; d < m; ++d) c.doc_ids.push_back("d" + std::to_string(d));
    for (std::size_t i = 0; i < n; ++i) {
        c.entity_ids.push_back("e" + std::to_string(i));
        std::vector<long long> row(m, 0);
        while (true) {
            bool any = false;
            for (auto& x : row) {
                x = dist(rng) == 0 ? 0 : dist(rng);
                any = any || x > 0;
            }
            if (any) break;
        }
        c.counts.push_back(std::move(row));
    }
    return c;
}

void check_semimetric_shape(const SquareMatrix& m) {
    const auto r = validate_semimetric(m, 1e-12);
    REQUIRE(r.symmetric);
    REQUIRE(r.zero_diagonal);
    REQUIRE(r.non_negative);
}

}  // namespace

TEST_CASE("cosine proximity reproduces the printed walkthrough matrix") {
    const auto result = build_cosine_proximity(golden::table2());
    const auto expected = golden::phi2_printed();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(result.phi(i, j) - expected(i, j)) <= 1e-3);
    CHECK(result.warnings.empty());
}

TEST_CASE("cosine proximity of a single positive feature is the zero matrix") {
    const auto result = build_cosine_proximity(golden::table1());
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(result.phi(i, j) == 0.0);
}

TEST_CASE("orthogonal feature rows give cosine proximity 1") {
    EntityTable t;
    t.ids = {"x", "y"};
    t.column_names = {"c0", "c1"};
    t.features = {{1, 0}, {0, 1}};
    CHECK(build_cosine_proximity(t).phi(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("cosine builder rejects a zero-norm row, naming the entity") {
    EntityTable t;
    t.ids = {"good", "bad"};
    t.column_names = {"c0"};
    t.features = {{1}, {0}};
    CHECK_THROWS_WITH_AS(build_cosine_proximity(t),
                         doctest::Contains("bad"), ValidationError);
}

TEST_CASE("co-occurrence proximity formula") {
    DocumentCorpus c;
    for (int d = 0; d < 10; ++d) c.doc_ids.push_back("d" + std::to_string(d));
    c.entity_ids = {"a", "b"};
    c.counts = {{1, 1, 1, 1, 0, 0, 0, 0, 1, 1}, {2, 1, 3, 1, 1, 1, 0, 0, 0, 0}};
    // shared docs: d0..d3 -> M_ab = 4, phi = (10-4)/10.
    CHECK(build_cooccurrence_proximity(c)(0, 1) == doctest::Approx(0.6));
}

TEST_CASE("entities sharing every document get proximity 0 and a warning") {
    DocumentCorpus c;
    c.doc_ids = {"d0", "d1"};
    c.entity_ids = {"a", "b"};
    c.counts = {{1, 2}, {3, 1}};
    std::vector<std::string> warnings;
    CHECK(build_cooccurrence_proximity(c, &warnings)(0, 1) == 0.0);
    REQUIRE(warnings.size() == 1);
}

TEST_CASE("disjoint entities have proximity 1") {
    DocumentCorpus c;
    c.doc_ids = {"d0", "d1"};
    c.entity_ids = {"a", "b", "c"};
    c.counts = {{1, 0}, {0, 1}, {1, 1}};  // c bridges a and b
    const auto phi = build_cooccurrence_proximity(c);
    CHECK(phi(0, 1) == 1.0);
    CHECK(phi(0, 2) == 0.5);
    CHECK(phi(1, 2) == 0.5);
}

TEST_CASE("merge_duplicates collapses identical supports onto the smallest id") {
    DocumentCorpus c;
    c.doc_ids = {"d0", "d1", "d2"};
    c.entity_ids = {"a1", "a4", "a3", "a2"};
    c.counts = {{1, 0, 1}, {0, 2, 0}, {0, 1, 0}, {1, 1, 1}};  // a4, a3 same support
    std::vector<MergeEntry> log;
    const auto merged = merge_duplicates(c, log);
    REQUIRE(log.size() == 1);
    CHECK(log[0].kept == "a3");
    CHECK(log[0].absorbed == std::vector<std::string>{"a4"});
    REQUIRE(merged.entities() == 3);
    CHECK(merged.entity_ids == std::vector<std::string>{"a1", "a3", "a2"});
    CHECK(merged.counts[1] == std::vector<long long>{0, 3, 0});  // summed
}

TEST_CASE("merge_duplicates: three identical supports collapse to one entity") {
    DocumentCorpus c;
    c.doc_ids = {"d0", "d1"};
    c.entity_ids = {"x", "y", "z", "w"};
    c.counts = {{1, 1}, {2, 3}, {4, 1}, {1, 0}};
    std::vector<MergeEntry> log;
    const auto merged = merge_duplicates(c, log);
    REQUIRE(log.size() == 1);
    CHECK(log[0].kept == "x");
    CHECK(log[0].absorbed == std::vector<std::string>{"y", "z"});
    CHECK(merged.entities() == 2);
}

TEST_CASE("merge_duplicates is a no-op on distinct supports, and idempotent") {
    for (unsigned seed = 0; seed < 20; ++seed) {
        std::mt19937 rng(seed);
        const auto c = random_corpus(rng, 6, 4);
        std::vector<MergeEntry> log1, log2;
        const auto once = merge_duplicates(c, log1);
        const auto twice = merge_duplicates(once, log2);
        REQUIRE(log2.empty());
        REQUIRE(once.entity_ids == twice.entity_ids);
        REQUIRE(once.counts == twice.counts);
    }
}

TEST_CASE("field metric: invoice example") {
    EntityTable t;
    t.ids = {"v", "w"};
    t.column_names = {"date", "amount", "company"};
    t.features = {{1, 100, 7}, {3, 100, 7}};  // company pre-encoded as code 7
    FieldMetricSchema s;
    s.fields = {{FieldKind::AbsoluteDifference, 1.0},
                {FieldKind::AbsoluteDifference, 1.0},
                {FieldKind::DiscreteIndicator, 1.0}};
    CHECK(build_field_metric(t, s)(0, 1) == doctest::Approx(2.0));
}

TEST_CASE("field metric: identical rows and masked-Euclidean seminorm kernel") {
    EntityTable t;
    t.ids = {"p", "q"};
    t.column_names = {"c0", "c1", "c2", "c3"};
    t.features = {{1, 2, 5, 5}, {9, 9, 5, 5}};
    FieldMetricSchema s;
    s.combine = FieldMetricSchema::Combine::MaskedEuclidean;
    s.fields = {{FieldKind::Masked, 1.0},
                {FieldKind::Masked, 1.0},
                {FieldKind::AbsoluteDifference, 1.0},
                {FieldKind::AbsoluteDifference, 1.0}};
    CHECK(build_field_metric(t, s)(0, 1) == 0.0);  // p_L on equal coordinates

    EntityTable same;
    same.ids = {"p", "q"};
    same.column_names = {"c0"};
    same.features = {{3}, {3}};
    FieldMetricSchema abs1;
    abs1.fields = {{FieldKind::AbsoluteDifference, 1.0}};
    CHECK(build_field_metric(same, abs1)(0, 1) == 0.0);
}

TEST_CASE("field metric rejects schema/column mismatch") {
    FieldMetricSchema s;
    s.fields = {{FieldKind::AbsoluteDifference, 1.0}};
    CHECK_THROWS_AS(build_field_metric(golden::table2(), s), DimensionError);
}

TEST_CASE("normalized Euclidean reproduces both walkthrough matrices") {
    const auto d2 = build_normalized_euclidean(golden::table2());
    const auto expected2 = golden::de2();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(d2(i, j) - expected2(i, j)) <= 1e-12);
    CHECK(std::abs(d2(0, 1) - 0.566) <= 1e-3);

    const auto d1 = build_normalized_euclidean(golden::table1());
    const auto expected1 = golden::de1();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(d1(i, j) == expected1(i, j));
}

TEST_CASE("duplicated rows land at distance zero") {
    EntityTable t;
    t.ids = {"a", "b"};
    t.column_names = {"c0", "c1"};
    t.features = {{2, 3}, {2, 3}};
    CHECK(build_normalized_euclidean(t)(0, 1) == 0.0);
}

TEST_CASE("all builders output symmetric non-negative zero-diagonal matrices") {
    for (unsigned seed = 0; seed < 50; ++seed) {
        std::mt19937 rng(seed);
        const auto t = random_table(rng, 3 + seed % 6, 3, true);
        check_semimetric_shape(build_cosine_proximity(t).phi);
        check_semimetric_shape(build_normalized_euclidean(t));
        FieldMetricSchema s;
        s.fields.assign(3, {FieldKind::AbsoluteDifference, 1.0});
        check_semimetric_shape(build_field_metric(t, s));
        check_semimetric_shape(build_cooccurrence_proximity(random_corpus(rng, 5, 6)));
    }
}

TEST_CASE("cosine proximity lies in [0,1] for non-negative features") {
    for (unsigned seed = 0; seed < 50; ++seed) {
        std::mt19937 rng(seed + 500);
        const auto t = random_table(rng, 5, 4, true);
        const auto result = build_cosine_proximity(t);
        for (double v : result.phi.entries()) {
            REQUIRE(v >= 0.0);
            REQUIRE(v <= 1.0);
        }
    }
}

TEST_CASE("cosine proximity warns outside [0,1] with negative features") {
    EntityTable t;
    t.ids = {"a", "b"};
    t.column_names = {"c0"};
    t.features = {{1}, {-1}};
    const auto result = build_cosine_proximity(t);
    CHECK(result.phi(0, 1) == doctest::Approx(2.0));
    CHECK(result.warnings.size() == 1);
}

TEST_CASE("all-absolute-difference schemas satisfy the triangle inequality") {
    for (unsigned seed = 0; seed < 50; ++seed) {
        std::mt19937 rng(seed + 900);
        const auto t = random_table(rng, 6, 3, false);
        FieldMetricSchema s;
        s.fields.assign(3, {FieldKind::AbsoluteDifference, 1.0});
        const auto d = build_field_metric(t, s);
        REQUIRE(validate_semimetric(d, 1e-12).triangle_violations.empty());
    }
}

TEST_CASE("cosine proximity is invariant under positive row scaling") {
    for (unsigned seed = 0; seed < 20; ++seed) {
        std::mt19937 rng(seed + 77);
        auto t = random_table(rng, 5, 3, true);
        const auto base = build_cosine_proximity(t).phi;
        std::uniform_real_distribution<double> scale(0.5, 4.0);
        for (auto& row : t.features) {
            const double s = scale(rng);
            for (auto& x : row) x *= s;
        }
        const auto scaled = build_cosine_proximity(t).phi;
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < t.size(); ++j)
                REQUIRE(std::abs(base(i, j) - scaled(i, j)) <= 1e-12);
    }
}

TEST_CASE("corpus with an all-zero entity row is rejected") {
    DocumentCorpus c;
    c.doc_ids = {"d0"};
    c.entity_ids = {"a", "b"};
    c.counts = {{1}, {0}};
    CHECK_THROWS_AS(c.validate(), ValidationError);
    CHECK_THROWS_AS(build_cooccurrence_proximity(DocumentCorpus{}), ValidationError);
}
