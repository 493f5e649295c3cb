#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ifeq/errors.hpp"
#include "ifeq/transfer.hpp"

using namespace ifeq;

namespace {

// reference one-step transfer, no batching
double naive_T(const WeightedSystem& sys, const FunctionRep& h, double x) {
    double s = 0.0;
    for (std::size_t k = 0; k < sys.size(); ++k)
        s += sys.weights()[k] * h(sys.map(k)(x));
    return s;
}

WeightedSystem swap_third_system() {
    auto s = UnitMap::point_swap({{1.0 / 3.0, 2.0 / 3.0}});
    return WeightedSystem::periodic(s, {0.5, 0.5});
}

WeightedSystem martingale_pair() {
    return WeightedSystem({UnitMap::power(2.0), UnitMap::mirror_power(2.0)},
                          {0.5, 0.5});
}

} // namespace

TEST_CASE("system validation") {
    CHECK_THROWS_AS(WeightedSystem({}, {}), Error);
    CHECK_THROWS_AS(WeightedSystem({UnitMap::identity()}, {0.9}), Error);
    CHECK_THROWS_AS(WeightedSystem({UnitMap::identity()}, {0.5, 0.5}), Error);
    CHECK_THROWS_AS(WeightedSystem({UnitMap::identity()}, {-0.5}), Error);
}

TEST_CASE("periodic declaration demands the iterate structure") {
    auto s = UnitMap::point_swap({{0.25, 0.75}});
    // {id, s} with order 2 closes the cycle
    WeightedSystem ok({UnitMap::identity(), s}, {0.5, 0.5}, 2);
    CHECK(ok.periodic_order() == 2);
    // the squaring map is not an involution
    CHECK_THROWS_AS(WeightedSystem({UnitMap::identity(), UnitMap::power(2.0)},
                                   {0.5, 0.5}, 2),
                    Error);
}

TEST_CASE("letter sampling follows the cumulative weights") {
    WeightedSystem sys({UnitMap::identity(), UnitMap::power(2.0)},
                       {0.25, 0.75});
    CHECK(sys.sample_letter(0.0) == 0);
    CHECK(sys.sample_letter(0.2) == 0);
    CHECK(sys.sample_letter(0.25) == 1);
    CHECK(sys.sample_letter(0.999) == 1);
}

TEST_CASE("truncation drops small trailing mass and renormalizes") {
    WeightedSystem sys({UnitMap::identity(), UnitMap::power(2.0),
                        UnitMap::power(3.0)},
                       {0.6, 0.4 - 1e-13, 1e-13});
    auto tr = sys.truncated(1e-12);
    CHECK(tr.dropped == 1);
    CHECK(tr.tail_mass == doctest::Approx(1e-13));
    CHECK(tr.system.size() == 2);
    double total = 0.0;
    for (double w : tr.system.weights()) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("alpha table rows match hand convolution for a 2-cycle") {
    auto s = UnitMap::point_swap({{0.25, 0.75}});
    WeightedSystem sys = WeightedSystem::periodic(s, {0.25, 0.75});
    auto t = build_alpha_table(sys, 3);
    CHECK(t.row(1)[0] == 0.25);
    CHECK(t.row(1)[1] == 0.75);
    // alpha_{2,0} = p0 p0 + p1 p1, alpha_{2,1} = 2 p0 p1
    CHECK(t.row(2)[0] == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(t.row(2)[1] == doctest::Approx(0.375).epsilon(1e-15));
    // alpha_{3,n} = sum_k alpha_{2,k} p_{(n-k) mod 2}
    CHECK(t.row(3)[0] ==
          doctest::Approx(0.625 * 0.25 + 0.375 * 0.75).epsilon(1e-15));
    CHECK(t.row(3)[1] ==
          doctest::Approx(0.625 * 0.75 + 0.375 * 0.25).epsilon(1e-15));
    CHECK_THROWS_AS(t.row(0), Error);
    CHECK_THROWS_AS(t.row(4), Error);
}

TEST_CASE("alpha rows stay probability vectors") {
    auto s = UnitMap::point_swap({{0.2, 0.9}});
    WeightedSystem sys = WeightedSystem::periodic(s, {0.35, 0.65});
    auto t = build_alpha_table(sys, 50);
    for (std::size_t m = 1; m <= 50; ++m) {
        double total = 0.0;
        for (double a : t.row(m)) {
            CHECK(a >= 0.0);
            total += a;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("uniform weights make every alpha row uniform") {
    auto sys = swap_third_system();
    auto t = build_alpha_table(sys, 10);
    for (std::size_t m = 1; m <= 10; ++m)
        for (double a : t.row(m))
            CHECK(a == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("single-map iterates walk the orbit") {
    WeightedSystem sys({UnitMap::power(2.0)}, {1.0});
    auto h = FunctionRep::poly({0.0, 1.0});
    auto est = iterate_exact(sys, h, 3, 0.9);
    CHECK(est.value == doctest::Approx(0.43046721).epsilon(1e-15));
    CHECK(est.half_width == 0.0);
    CHECK(est.method == IterateMethod::exact_tree);
}

TEST_CASE("tree iterate matches the naive transfer applied twice") {
    auto sys = martingale_pair();
    auto h = FunctionRep::poly({0.0, 0.0, 1.0}); // x^2
    double x = 0.3;
    double t1 = naive_T(sys, h, x);
    double t2 = 0.0;
    for (std::size_t k = 0; k < sys.size(); ++k) {
        double y = sys.map(k)(x);
        t2 += sys.weights()[k] * naive_T(sys, h, y);
    }
    CHECK(iterate_exact(sys, h, 1, x).value == doctest::Approx(t1).epsilon(1e-15));
    CHECK(iterate_exact(sys, h, 2, x).value == doctest::Approx(t2).epsilon(1e-15));
}

TEST_CASE("the mean-identity pair keeps the identity fixed at every depth") {
    auto sys = martingale_pair();
    auto h = FunctionRep::poly({0.0, 1.0});
    for (double x : {0.1, 0.3, 0.5, 0.9})
        for (std::size_t m : {1, 2, 5, 10})
            CHECK(iterate_exact(sys, h, m, x).value ==
                  doctest::Approx(x).epsilon(1e-12));
}

TEST_CASE("periodic iterates agree with the branch tree") {
    auto sys = swap_third_system();
    auto h = FunctionRep::composed_poly({0.0, 1.0, 1.0}, UnitMap::power(2.0));
    auto table = build_alpha_table(sys, 8);
    for (double x : {0.1, 1.0 / 3.0, 0.5})
        for (std::size_t m = 1; m <= 8; ++m) {
            double tree = iterate_exact(sys, h, m, x).value;
            double conv = iterate_periodic(sys, h, m, x, table).value;
            CHECK(conv == doctest::Approx(tree).epsilon(1e-14));
        }
}

TEST_CASE("iterate_sequence picks the convolution path for periodic systems") {
    auto sys = swap_third_system();
    auto h = FunctionRep::poly({0.25, 0.5});
    auto seq = iterate_sequence(sys, h, 6, 1.0 / 3.0);
    CHECK(seq.size() == 7);
    CHECK(seq[0].value == h(1.0 / 3.0));
    for (std::size_t m = 1; m <= 6; ++m) {
        CHECK(seq[m].method == IterateMethod::alpha_table);
        CHECK(seq[m].half_width == 0.0);
        CHECK(seq[m].value ==
              doctest::Approx(iterate_exact(sys, h, m, 1.0 / 3.0).value)
                  .epsilon(1e-14));
    }
}

TEST_CASE("iterate_sequence shares one tree walk when the budget allows") {
    auto sys = martingale_pair();
    auto h = FunctionRep::poly({0.0, 0.0, 0.0, 1.0});
    auto seq = iterate_sequence(sys, h, 12, 0.7);
    for (std::size_t m = 1; m <= 12; ++m) {
        CHECK(seq[m].method == IterateMethod::exact_tree);
        CHECK(seq[m].value ==
              doctest::Approx(iterate_exact(sys, h, m, 0.7).value)
                  .epsilon(1e-13));
    }
}

TEST_CASE("deep trees exceed the budget and fall back to monte carlo") {
    auto sys = martingale_pair();
    auto h = FunctionRep::poly({0.0, 1.0});
    IterateOptions opts;
    opts.branch_budget = 1000;
    CHECK_THROWS_AS(iterate_exact(sys, h, 30, 0.5, opts), Error);
    opts.mc_samples = 4000;
    auto seq = iterate_sequence(sys, h, 30, 0.5, opts);
    CHECK(seq[30].method == IterateMethod::monte_carlo);
    CHECK(seq[30].half_width > 0.0);
    // martingale keeps the mean at x, so the estimate must cover 0.5
    CHECK(std::fabs(seq[30].value - 0.5) <= 3.0 * seq[30].half_width);
}

TEST_CASE("monte carlo iterates are deterministic in the seed") {
    auto sys = martingale_pair();
    auto h = FunctionRep::poly({0.0, 1.0});
    auto a = iterate_mc(sys, h, 5, 0.3, 500, 42);
    auto b = iterate_mc(sys, h, 5, 0.3, 500, 42);
    auto c = iterate_mc(sys, h, 5, 0.3, 500, 43);
    CHECK(a.value == b.value);
    CHECK(a.half_width == b.half_width);
    CHECK(a.value != c.value);
    CHECK(std::fabs(a.value - 0.3) <= 3.0 * a.half_width);
}

TEST_CASE("apply_T is exact at the endpoints and at override points") {
    auto sys = martingale_pair();
    auto h = FunctionRep::grid_with_overrides({0.0, 0.5, 1.0}, {{0.25, 2.0}});
    Grid grid{8, 0.0, 1.0};
    auto th = apply_T(sys, h, grid);
    CHECK(th(0.0) == h(0.0));
    CHECK(th(1.0) == h(1.0));
    // override abscissae carry exactly re-evaluated transfer values
    CHECK(th(0.25) == doctest::Approx(naive_T(sys, h, 0.25)).epsilon(1e-15));
    // interior grid points match the naive sum
    for (std::size_t i = 1; i < 8; ++i) {
        double x = grid.point(i);
        CHECK(th(x) == doctest::Approx(naive_T(sys, h, x)).epsilon(1e-14));
    }
}

TEST_CASE("mean map is the weighted average of the maps") {
    auto sys = martingale_pair();
    for (double x : {0.0, 0.25, 0.5, 1.0})
        CHECK(mean_map(sys, x) == doctest::Approx(x).epsilon(1e-15));
}

TEST_CASE("partial sums telescope for the squaring map") {
    // g = x - x^2 gives s_k(x) = x - x^(2^k) exactly
    WeightedSystem sys({UnitMap::power(2.0)}, {1.0});
    auto g = FunctionRep::poly({0.0, 1.0, -1.0});
    double x = 0.8;
    auto sums = partial_sum_sequence(sys, g, 6, x);
    CHECK(sums[0].value == 0.0);
    for (std::size_t k = 1; k <= 6; ++k) {
        double expect = x - std::pow(x, std::pow(2.0, double(k)));
        CHECK(sums[k].value == doctest::Approx(expect).epsilon(1e-13));
        CHECK(sums[k].half_width == 0.0);
    }
}

TEST_CASE("partial sums grow linearly for the unsolvable swap data") {
    // g = 1 at both swapped points: T^l g = g there, so s_k = k
    auto sys = swap_third_system();
    auto g = FunctionRep::grid_with_overrides(
        {0.0, 0.0, 0.0}, {{1.0 / 3.0, 1.0}, {2.0 / 3.0, 1.0}});
    auto sums = partial_sum_sequence(sys, g, 8, 1.0 / 3.0);
    for (std::size_t k = 0; k <= 8; ++k)
        CHECK(sums[k].value == doctest::Approx(double(k)).epsilon(1e-14));
}

TEST_CASE("monte carlo partial sums cover the exact ones") {
    auto sys = martingale_pair();
    auto g = FunctionRep::poly({0.0, 1.0, -1.0}); // x - x^2
    double x = 0.5;
    auto exact = partial_sum_sequence(sys, g, 10, x);
    IterateOptions opts;
    opts.branch_budget = 50; // force the sampling path
    opts.mc_samples = 4000;
    auto mc = partial_sum_sequence(sys, g, 10, x, opts);
    for (std::size_t k = 1; k <= 10; ++k) {
        CHECK(mc[k].method == IterateMethod::monte_carlo);
        CHECK(std::fabs(mc[k].value - exact[k].value) <=
              3.0 * mc[k].half_width + 1e-12);
    }
}
