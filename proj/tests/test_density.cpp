#include <doctest.h>

#include <cmath>
#include <random>

#include "golden.hpp"
#include "metricgraph/density.hpp"

using namespace metricgraph;

namespace {

SquareMatrix random_distances(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(0.1, 2.0);
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = dist(rng);
    return m;
}

// Adaptive Simpson quadrature of m(eps)/eps^q over [a,b].
double simpson(const DensityProfile& p, double q, double a, double b) {
    auto f = [&](double eps) { return p.ball_mass(eps) / std::pow(eps, q); };
    auto rec = [&](auto&& self, double lo, double hi, double flo, double fmid,
                   double fhi, double whole, int depth) -> double {
        const double mid = 0.5 * (lo + hi);
        const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
        const double fl = f(lmid), fr = f(rmid);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi);
        if (depth > 40 || std::abs(left + right - whole) < 1e-12 * (1.0 + std::abs(whole)))
            return left + right;
        return self(self, lo, mid, flo, fl, fmid, left, depth + 1) +
               self(self, mid, hi, fmid, fr, fhi, right, depth + 1);
    };
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return rec(rec, a, b, fa, fm, fb, whole, 0);
}

// Numeric reference for the Lebesgue concentration: Simpson on each
// continuity interval up to the largest distance, then the constant-mass
// analytic tail.
double concentration_quadrature(const DensityProfile& p, double r, double q) {
    const double t_max = p.sorted_distances.back();
    double total = 0.0;
    std::vector<double> cuts{r};
    for (double t : p.sorted_distances)
        if (t > r && t < t_max + 1e-12) cuts.push_back(t);
    if (t_max > r) cuts.push_back(t_max);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (hi > lo) total += simpson(p, q, lo + 1e-13 * (hi - lo), hi - 1e-13 * (hi - lo)) ;
    }
    const double tail_lo = std::max(r, t_max);
    double full_mass = 0.0;
    for (double w : p.sorted_weights) full_mass += w;
    total += full_mass * std::pow(tail_lo, 1.0 - q) / (q - 1.0);
    return total;
}

DensityProfile profile_from(std::vector<double> distances) {
    DensityProfile p;
    p.entity = 0;
    p.sorted_distances = std::move(distances);
    p.sorted_weights.assign(p.sorted_distances.size(), 1.0);
    return p;
}

}  // namespace

TEST_CASE("balls of the first walkthrough") {
    const auto d = golden::de1();
    CHECK(ball(d, 0, 3.0 / 8.0) == std::vector<std::size_t>{0});
    CHECK(ball(d, 1, 3.0 / 8.0) == std::vector<std::size_t>{1, 2, 3});
    CHECK(ball(d, 0, 10.0) == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK_THROWS_AS(ball(d, 7, 0.5), ParameterError);
}

TEST_CASE("density values of the first walkthrough") {
    const auto d = golden::de1();
    const RadialWeight q1{1.0};
    CHECK(density_at(DensityProfile::from_matrix(d, 0), 3.0 / 8.0, q1) ==
          doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(density_at(DensityProfile::from_matrix(d, 1), 3.0 / 8.0, q1) ==
          doctest::Approx(8.0).epsilon(1e-15));

    DensityProfile single = profile_from({0.0});
    CHECK(density_at(single, 1.0, RadialWeight{4.0}) == 1.0);
    CHECK_THROWS_AS(density_at(single, 0.0, q1), ParameterError);
}

TEST_CASE("concentration: hand-checked Lebesgue instance") {
    const auto p = profile_from({0.0, 0.5, 1.0});
    const double c = concentration(p, 0.25, RadialWeight{2.0}, MassMeasure::lebesgue());
    CHECK(c == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("concentration: Dirac cases") {
    const auto d = golden::de1();
    const auto p2 = DensityProfile::from_matrix(d, 1);
    CHECK(concentration(p2, 0.1, RadialWeight{1.0}, MassMeasure::dirac(3.0 / 8.0)) ==
          doctest::Approx(8.0));
    CHECK(concentration(p2, 0.5, RadialWeight{1.0}, MassMeasure::dirac(0.2)) == 0.0);
}

TEST_CASE("concentration error paths") {
    const auto p = profile_from({0.0, 1.0});
    CHECK_THROWS_AS(concentration(p, 0.5, RadialWeight{1.0}, MassMeasure::lebesgue()),
                    DivergenceError);
    CHECK_THROWS_AS(concentration(p, 0.0, RadialWeight{2.0}, MassMeasure::lebesgue()),
                    ParameterError);
}

TEST_CASE("Lebesgue closed form matches adaptive quadrature") {
    for (unsigned seed = 0; seed < 50; ++seed) {
        std::mt19937 rng(seed);
        const std::size_t n = 3 + seed % 8;
        const auto d = random_distances(rng, n);
        const auto p = DensityProfile::from_matrix(d, seed % n);
        for (double q : {1.5, 2.0, 4.0}) {
            const double r = 0.05 + 0.1 * (seed % 5);
            const double exact = concentration(p, r, RadialWeight{q}, MassMeasure::lebesgue());
            const double approx = concentration_quadrature(p, r, q);
            REQUIRE(std::abs(exact - approx) <= 1e-6 * std::abs(exact));
        }
    }
}

TEST_CASE("concentration is non-increasing in r") {
    std::mt19937 rng(42);
    const auto d = random_distances(rng, 8);
    const auto p = DensityProfile::from_matrix(d, 0);
    double prev = concentration(p, 0.01, RadialWeight{2.0}, MassMeasure::lebesgue());
    for (double r = 0.05; r < 3.0; r += 0.07) {
        const double cur = concentration(p, r, RadialWeight{2.0}, MassMeasure::lebesgue());
        REQUIRE(cur <= prev + 1e-15);
        prev = cur;
    }
}

TEST_CASE("r_max examples and dual characterization") {
    CHECK(r_max(DensityProfile::from_matrix(golden::de2(), 0)) ==
          doctest::Approx(std::sqrt(5.0) / 5.0));
    CHECK(r_max(DensityProfile::from_matrix(golden::de1(), 0)) == 0.5);
    CHECK(r_max(DensityProfile::from_matrix(golden::de1(), 1)) == 0.0);  // duplicate
    CHECK_THROWS_AS(r_max(profile_from({0.0})), ParameterError);

    // sup{r : |B_r(a)| = 1} by bisection on the step function.
    for (unsigned seed = 0; seed < 100; ++seed) {
        std::mt19937 rng(seed + 10);
        const std::size_t n = 2 + seed % 9;
        const auto d = random_distances(rng, n);
        const auto p = DensityProfile::from_matrix(d, seed % n);
        double lo = 0.0, hi = 10.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (p.ball_count(mid) == 1)
                lo = mid;
            else
                hi = mid;
        }
        REQUIRE(std::abs(r_max(p) - lo) <= 1e-12);
    }
}

TEST_CASE("ball membership is monotone in eps and matches the profile count") {
    std::mt19937 rng(3);
    const auto d = random_distances(rng, 10);
    std::uniform_real_distribution<double> eps_dist(0.01, 2.5);
    for (int probe = 0; probe < 1000; ++probe) {
        const std::size_t a = static_cast<std::size_t>(probe) % 10;
        double e1 = eps_dist(rng), e2 = eps_dist(rng);
        if (e1 > e2) std::swap(e1, e2);
        const auto b1 = ball(d, a, e1);
        const auto b2 = ball(d, a, e2);
        REQUIRE(std::includes(b2.begin(), b2.end(), b1.begin(), b1.end()));
        REQUIRE(DensityProfile::from_matrix(d, a).ball_count(e1) == b1.size());
    }
}

TEST_CASE("density map of the first walkthrough flags a1 low-density") {
    const auto report = density_map(golden::de1(), {}, 3.0 / 8.0, RadialWeight{1.0},
                                    MassMeasure::dirac(3.0 / 8.0), 1.0);
    REQUIRE(report.entries.size() == 4);
    CHECK(report.entries[0].c_r == doctest::Approx(8.0 / 3.0));
    for (std::size_t a = 1; a < 4; ++a)
        CHECK(report.entries[a].c_r == doctest::Approx(8.0));
    CHECK(report.entries[0].flag == DensityFlag::LowDensity);
    for (std::size_t a = 1; a < 4; ++a)
        CHECK(report.entries[a].flag == DensityFlag::Normal);
}

TEST_CASE("equidistant entities produce no flags") {
    const auto d = SquareMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    const auto report =
        density_map(d, {}, std::nullopt, RadialWeight{1.0}, MassMeasure::dirac(0.75), 1.0);
    CHECK(report.radius_used == doctest::Approx(0.5));
    for (const auto& e : report.entries) {
        CHECK(e.z == 0.0);
        CHECK(e.flag == DensityFlag::Normal);
    }
}

TEST_CASE("density map of the walkthrough gauge metric isolates a2") {
    const auto dphi = golden::dphi2_printed();
    CHECK(ball(dphi, 1, 0.015) == std::vector<std::size_t>{1});
    CHECK(ball(dphi, 0, 0.015) == std::vector<std::size_t>{0, 2, 3});
    const auto report = density_map(dphi, {}, 0.001, RadialWeight{1.0},
                                    MassMeasure::dirac(0.015), 1.0);
    double min_c = report.entries[0].c_r;
    std::size_t argmin = 0;
    for (const auto& e : report.entries)
        if (e.c_r < min_c) {
            min_c = e.c_r;
            argmin = e.entity;
        }
    CHECK(argmin == 1);
}

TEST_CASE("a remote entity does not disturb existing Dirac concentrations") {
    std::mt19937 rng(9);
    const auto d = random_distances(rng, 6);
    SquareMatrix bigger(7);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) bigger(i, j) = d(i, j);
    for (std::size_t i = 0; i < 6; ++i) bigger(i, 6) = bigger(6, i) = 50.0;
    for (std::size_t a = 0; a < 6; ++a) {
        const auto before = DensityProfile::from_matrix(d, a);
        const auto after = DensityProfile::from_matrix(bigger, a);
        const auto nu = MassMeasure::dirac(1.5);
        REQUIRE(concentration(before, 0.05, RadialWeight{1.0}, nu) ==
                concentration(after, 0.05, RadialWeight{1.0}, nu));
    }
}

TEST_CASE("weighted mass measure") {
    const auto d = SquareMatrix::from_rows({{0, 0.5}, {0.5, 0}});
    const std::vector<double> weights{2.0, 3.0};
    const auto p = DensityProfile::from_matrix(d, 0, weights);
    CHECK(p.ball_mass(0.1) == 2.0);
    CHECK(p.ball_mass(1.0) == 5.0);
}
