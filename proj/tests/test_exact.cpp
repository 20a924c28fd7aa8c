#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cramer/exact.hpp"
#include "cramer/legendre.hpp"

using namespace cramer;

TEST_CASE("exact_distribution")
{
    const auto d1 = exact_distribution(WeightVector(std::vector<double>{1.0}));
    CHECK(d1.support == std::vector<double>{-1.0, 1.0});
    CHECK(d1.probs == std::vector<double>{0.5, 0.5});

    const auto dh = exact_distribution(WeightVector(std::vector<double>{0.5, 0.5}));
    CHECK(dh.support == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(dh.probs == std::vector<double>{0.25, 0.5, 0.25});

    const auto d12 = exact_distribution(WeightVector(std::vector<double>{1.0, 2.0}));
    CHECK(d12.support == std::vector<double>{-3.0, -1.0, 1.0, 3.0});
    for (double p : d12.probs) CHECK(p == 0.25);

    CHECK_THROWS_AS(exact_distribution(WeightVector(std::vector<double>(25, 1.0))),
                    std::length_error);
}

TEST_CASE("distribution invariants on random weights")
{
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<int> nd(1, 12);
    std::uniform_real_distribution<double> wd(0.1, 2.0);
    for (int k = 0; k < 20; ++k) {
        std::vector<double> w(nd(rng));
        for (auto& x : w) {
            x = wd(rng);
            if (rng() & 1u) x = -x;
        }
        const WeightVector t(w);
        const auto d = exact_distribution(t);
        CHECK_THAT(d.total_mass(), Catch::Matchers::WithinAbs(1.0, 1e-12));
        CHECK_THAT(d.support.back(), Catch::Matchers::WithinAbs(t.l1_norm(), 1e-12));

        // mirror symmetry of support and probabilities
        const std::size_t m = d.support.size();
        for (std::size_t i = 0; i < m; ++i) {
            CHECK_THAT(d.support[i], Catch::Matchers::WithinAbs(-d.support[m - 1 - i], 1e-9));
            CHECK_THAT(d.probs[i], Catch::Matchers::WithinAbs(d.probs[m - 1 - i], 1e-12));
        }
        for (std::size_t i = 1; i < m; ++i) CHECK(d.support[i] > d.support[i - 1]);

        // product-formula tie: ln sum p e^{sx} = cgf(t, s)
        for (int j = 0; j <= 10; ++j) {
            const double s = -5.0 + j;
            double mx = -kInf;
            for (double x : d.support) mx = std::max(mx, s * x);
            double acc = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                acc += d.probs[i] * std::exp(s * d.support[i] - mx);
            CHECK_THAT(mx + std::log(acc), Catch::Matchers::WithinAbs(cgf(t, s), 1e-10));
        }
    }
}

TEST_CASE("tail_probability")
{
    const auto d = exact_distribution(WeightVector(std::vector<double>{0.5, 0.5}));
    CHECK(tail_probability(d, -5.0) == 1.0);
    CHECK(tail_probability(d, 0.5) == 0.25);
    CHECK(tail_probability(d, 1.0) == 0.25);  // closed tail includes the atom
    CHECK(tail_probability(d, 1.5) == 0.0);
}

TEST_CASE("convolve_iid")
{
    const ExactDist fair{{-1.0, 1.0}, {0.5, 0.5}};
    const auto same = convolve_iid(fair, 1, 100);
    CHECK(same.support == fair.support);

    const auto two = convolve_iid(fair, 2, 100);
    CHECK(two.support == std::vector<double>{-2.0, 0.0, 2.0});
    CHECK(two.probs == std::vector<double>{0.25, 0.5, 0.25});

    const auto dh = exact_distribution(WeightVector(std::vector<double>{0.5, 0.5}));
    const auto h2 = convolve_iid(dh, 2, 100);
    CHECK(h2.support == std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});
    CHECK_THAT(h2.probs[0], Catch::Matchers::WithinAbs(1.0 / 16, 1e-14));
    CHECK_THAT(h2.probs[1], Catch::Matchers::WithinAbs(4.0 / 16, 1e-14));
    CHECK_THAT(h2.probs[2], Catch::Matchers::WithinAbs(6.0 / 16, 1e-14));

    // mass, symmetry, linear variance growth
    const auto h40 = convolve_iid(dh, 40, 10000);
    CHECK_THAT(h40.total_mass(), Catch::Matchers::WithinAbs(1.0, 1e-11));
    CHECK_THAT(h40.mean(), Catch::Matchers::WithinAbs(0.0, 1e-11));
    const double var1 = dh.variance();
    CHECK_THAT(h40.variance(), Catch::Matchers::WithinRel(40.0 * var1, 1e-9));

    CHECK_THROWS_AS(convolve_iid(dh, 1000, 100), std::length_error);
}

TEST_CASE("conjugate_by_grid")
{
    const WeightVector t1(std::vector<double>{1.0});
    CHECK(conjugate_by_grid(t1, 0.0) == 0.0);
    CHECK_THAT(conjugate_by_grid(t1, 0.5),
               Catch::Matchers::WithinAbs(0.1308120359411370, 1e-6));
    CHECK(std::isinf(conjugate_by_grid(t1, 1.5)));

    const WeightVector t12(std::vector<double>{1.0, 2.0});
    const double ref = cramer_transform(t12, 1.5).value;
    CHECK_THAT(conjugate_by_grid(t12, 1.5), Catch::Matchers::WithinAbs(ref, 1e-6));
}

TEST_CASE("chernoff domination across the interior")
{
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> nd(1, 10);
    std::uniform_real_distribution<double> wd(0.1, 2.0);
    for (int k = 0; k < 10; ++k) {
        std::vector<double> w(nd(rng));
        for (auto& x : w) x = wd(rng);
        const WeightVector t(w);
        const auto d = exact_distribution(t);
        for (int j = 1; j <= 19; ++j) {
            const double alpha = 0.95 * t.l1_norm() * j / 19.0;
            const double rate = cramer_transform(t, alpha).value;
            CHECK(tail_probability(d, alpha) <= std::exp(-rate));
        }
    }
}
