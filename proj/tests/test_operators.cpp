#include <catch2/catch_amalgamated.hpp>

#include <moeadld/operators.hpp>
#include <moeadld/rng.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

using namespace moeadld;

TEST_CASE("mating selection honours the neighborhood pool") {
    Rng rng(42);
    // associations: member i belongs to weight i
    std::vector<std::size_t> assoc{0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<std::size_t> nb{2, 3, 4};

    SECTION("delta = 1 keeps both parents in the neighborhood") {
        for (int rep = 0; rep < 500; ++rep) {
            auto [a, b] = mating_selection(nb, assoc, 1.0, rng);
            CHECK(std::find(nb.begin(), nb.end(), assoc[a]) != nb.end());
            CHECK(std::find(nb.begin(), nb.end(), assoc[b]) != nb.end());
            CHECK(a != b);
        }
    }
    SECTION("delta = 0 draws from the whole population") {
        std::set<std::size_t> seen;
        for (int rep = 0; rep < 2000; ++rep) {
            auto [a, b] = mating_selection(nb, assoc, 0.0, rng);
            seen.insert(a);
            seen.insert(b);
            CHECK(a != b);
        }
        CHECK(seen.size() == assoc.size()); // everyone reachable
    }
    SECTION("empty neighborhood pool falls back to the whole population") {
        std::vector<std::size_t> empty_nb{6, 7};
        std::vector<std::size_t> elsewhere{0, 0, 1, 1};
        for (int rep = 0; rep < 200; ++rep) {
            auto [a, b] = mating_selection(empty_nb, elsewhere, 1.0, rng);
            CHECK(a < elsewhere.size());
            CHECK(b < elsewhere.size());
            CHECK(a != b);
        }
    }
    SECTION("population of two always yields both individuals") {
        std::vector<std::size_t> two{0, 1};
        for (int rep = 0; rep < 100; ++rep) {
            auto [a, b] = mating_selection(nb, two, 0.0, rng);
            CHECK(a != b);
        }
    }
    SECTION("single-member pool may repeat the parent") {
        std::vector<std::size_t> one_nb{0};
        std::vector<std::size_t> one_member_there{0, 5, 5, 5};
        auto [a, b] = mating_selection(one_nb, one_member_there, 1.0, rng);
        CHECK(a == 0);
        CHECK(b == 0);
    }
}

TEST_CASE("sbx respects probability and identity edge cases") {
    Rng rng(7);
    std::vector<double> lb(4, 0.0), ub(4, 1.0);
    std::vector<double> p1{0.1, 0.4, 0.7, 0.9};
    std::vector<double> p2{0.3, 0.2, 0.8, 0.5};

    SECTION("pc = 0 returns one parent verbatim") {
        for (int rep = 0; rep < 100; ++rep) {
            auto child = sbx_crossover(p1, p2, lb, ub, 0.0, 20.0, rng);
            CHECK((child == p1 || child == p2));
        }
    }
    SECTION("identical parents reproduce themselves") {
        for (int rep = 0; rep < 100; ++rep) {
            auto child = sbx_crossover(p1, p1, lb, ub, 1.0, 20.0, rng);
            CHECK(child == p1);
        }
    }
    SECTION("children always stay within bounds") {
        std::vector<double> near_low{0.01, 0.0, 0.02, 0.99};
        std::vector<double> near_high{0.99, 1.0, 0.98, 0.0};
        for (int rep = 0; rep < 5000; ++rep) {
            auto child = sbx_crossover(near_low, near_high, lb, ub, 1.0, 2.0, rng);
            for (std::size_t i = 0; i < child.size(); ++i) {
                CHECK(child[i] >= lb[i]);
                CHECK(child[i] <= ub[i]);
            }
        }
    }
}

TEST_CASE("sbx offspring mean matches the parent midpoint") {
    Rng rng(123);
    std::vector<double> lb{0.0}, ub{1.0};
    std::vector<double> p1{0.4}, p2{0.6};
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int rep = 0; rep < n; ++rep) {
        double c = sbx_crossover(p1, p2, lb, ub, 1.0, 20.0, rng)[0];
        sum += c;
        sumsq += c * c;
    }
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    double se = std::sqrt(var / n);
    CHECK(std::fabs(mean - 0.5) <= 3.0 * std::max(se, 1e-12));
}

TEST_CASE("polynomial mutation basics") {
    Rng rng(99);
    std::vector<double> lb(3, 0.0), ub(3, 1.0);

    SECTION("pm = 0 is the identity") {
        std::vector<double> x{0.2, 0.5, 0.8};
        auto before = x;
        polynomial_mutation(x, lb, ub, 0.0, 20.0, rng);
        CHECK(x == before);
    }
    SECTION("mutation at a bound stays within bounds") {
        for (int rep = 0; rep < 5000; ++rep) {
            std::vector<double> x{0.0, 1.0, 0.5};
            polynomial_mutation(x, lb, ub, 1.0, 20.0, rng);
            for (std::size_t i = 0; i < x.size(); ++i) {
                CHECK(x[i] >= lb[i]);
                CHECK(x[i] <= ub[i]);
            }
        }
    }
    SECTION("degenerate bounds pin the variable") {
        std::vector<double> dlb{0.3}, dub{0.3};
        std::vector<double> x{0.3};
        polynomial_mutation(x, dlb, dub, 1.0, 20.0, rng);
        CHECK(x[0] == 0.3);
    }
}

TEST_CASE("polynomial mutation perturbation is symmetric at the midpoint") {
    Rng rng(2024);
    std::vector<double> lb{0.0}, ub{1.0};
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int rep = 0; rep < n; ++rep) {
        std::vector<double> x{0.5};
        polynomial_mutation(x, lb, ub, 1.0, 20.0, rng);
        double d = x[0] - 0.5;
        sum += d;
        sumsq += d * d;
    }
    double mean = sum / n;
    double se = std::sqrt((sumsq / n - mean * mean) / n);
    CHECK(std::fabs(mean) <= 3.0 * se);
}

TEST_CASE("variation config defaults") {
    VariationConfig v;
    CHECK(v.crossover_probability == 1.0);
    CHECK(v.crossover_index == 20.0);
    CHECK(v.mutation_index == 20.0);
    CHECK(v.neighborhood_selection_probability == 0.8);
    CHECK(v.resolved_mutation_probability(7) == Catch::Approx(1.0 / 7));
    v.mutation_probability = 0.25;
    CHECK(v.resolved_mutation_probability(7) == 0.25);
}

TEST_CASE("operators are reproducible under a fixed seed") {
    std::vector<double> lb(5, 0.0), ub(5, 2.0);
    std::vector<double> p1{0.1, 0.5, 1.0, 1.5, 1.9};
    std::vector<double> p2{1.9, 1.5, 1.0, 0.5, 0.1};
    Rng r1(77), r2(77);
    for (int rep = 0; rep < 50; ++rep) {
        auto c1 = sbx_crossover(p1, p2, lb, ub, 0.9, 15.0, r1);
        auto c2 = sbx_crossover(p1, p2, lb, ub, 0.9, 15.0, r2);
        REQUIRE(c1 == c2);
        polynomial_mutation(c1, lb, ub, 0.2, 20.0, r1);
        polynomial_mutation(c2, lb, ub, 0.2, 20.0, r2);
        REQUIRE(c1 == c2);
    }
}
