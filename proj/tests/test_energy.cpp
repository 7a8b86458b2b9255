#include <doctest.h>

#include <cmath>

#include "empathy/energy.hpp"

using namespace empathy;
using namespace empathy::energy;

namespace {

MarketModel symmetric_market(int n) {
    MarketModel m;
    m.consumers = n;
    m.satisfaction.assign(n, {1.0, 1.0});
    m.price = {0.05, 0.08};
    m.supply = 1.0;
    return m;
}

double total(const std::vector<double>& d) {
    double s = 0.0;
    for (double x : d) s += x;
    return s;
}

}  // namespace

TEST_CASE("single consumer with constant price hits the closed form") {
    MarketModel m;
    m.consumers = 1;
    m.satisfaction = {{1.0, 1.0}};
    m.price = {0.5, 0.0};  // constant price below w'(0) = 1
    auto res = demand_equilibrium(m, 0.0);
    CHECK(res.demand[0] == doctest::Approx(-std::log(0.5)).epsilon(1e-9));
    CHECK(res.residual <= 1e-10);
}

TEST_CASE("empathy lowers every consumer's demand") {
    MarketModel m = symmetric_market(2);
    auto base = demand_equilibrium(m, 0.0);
    auto soft = demand_equilibrium(m, 0.5);
    for (int i = 0; i < 2; ++i) {
        CHECK(soft.demand[i] <= base.demand[i] + 1e-12);
        CHECK(soft.demand[i] < base.demand[i]);  // strict here: interior, slope > 0
    }
    CHECK(base.residual <= 1e-10);
    CHECK(soft.residual <= 1e-10);
}

TEST_CASE("demand profile is componentwise monotone over the empathy grid") {
    MarketModel m = symmetric_market(5);
    std::vector<double> prev;
    for (double lam = 0.0; lam < 0.95; lam += 0.1) {
        auto res = demand_equilibrium(m, lam);
        CHECK(res.residual <= 1e-10);
        if (!prev.empty())
            for (int i = 0; i < m.consumers; ++i) CHECK(res.demand[i] <= prev[i] + 1e-12);
        prev = res.demand;
    }
}

TEST_CASE("aggregate demand never exceeds the selfish level") {
    MarketModel m = symmetric_market(4);
    double selfish = total(demand_equilibrium(m, 0.0).demand);
    for (double lam : {0.1, 0.3, 0.5, 0.7, 0.9})
        CHECK(total(demand_equilibrium(m, lam).demand) <= selfish + 1e-12);
}

TEST_CASE("returned profiles satisfy the stationarity of the empathic payoff") {
    MarketModel m = symmetric_market(3);
    m.satisfaction[1] = {1.3, 0.8};  // break the symmetry
    for (double lam : {0.0, 0.4, 0.8}) {
        auto res = demand_equilibrium(m, lam);
        CHECK(res.residual <= 1e-10);

        // independent check: finite-difference gradient of the empathic payoff
        const double h = 1e-6;
        for (int i = 0; i < m.consumers; ++i) {
            if (res.demand[i] <= 0.0) continue;
            std::vector<double> up = res.demand, dn = res.demand;
            up[i] += h;
            dn[i] -= h;
            double grad = (empathic_payoff(m, lam, up, i) - empathic_payoff(m, lam, dn, i)) /
                          (2.0 * h);
            CHECK(std::abs(grad) <= 1e-4 * std::max(1.0, std::abs(res.demand[i])));
        }
    }
}

TEST_CASE("two-peak day: empathy reduces both peaks") {
    MarketModel m = symmetric_market(5);
    DayProfile day;
    // synthetic day with a morning and an evening peak
    day.appetite = {0.6, 0.5, 0.5, 0.6, 0.8, 1.1, 1.5, 1.9, 1.6, 1.2, 1.0, 0.9,
                    0.9, 0.9, 1.0, 1.1, 1.4, 1.8, 2.0, 1.8, 1.5, 1.2, 0.9, 0.7};
    auto table = peak_comparison(m, day, {0.0, 0.5});
    REQUIRE(table.aggregate.size() == 24);
    for (std::size_t h = 0; h < 24; ++h)
        CHECK(table.aggregate[h][1] <= table.aggregate[h][0] + 1e-12);
    // both named peaks strictly below the selfish baseline
    CHECK(table.aggregate[7][1] < table.aggregate[7][0]);
    CHECK(table.aggregate[18][1] < table.aggregate[18][0]);
    CHECK(table.peak[1] < table.peak[0]);
}

TEST_CASE("peak table is non-increasing in empathy") {
    MarketModel m = symmetric_market(3);
    DayProfile day;
    day.appetite = {1.0, 1.6, 0.8};
    std::vector<double> grid;
    for (double lam = 0.0; lam < 0.95; lam += 0.1) grid.push_back(lam);
    auto table = peak_comparison(m, day, grid);
    for (std::size_t k = 1; k < grid.size(); ++k) CHECK(table.peak[k] <= table.peak[k - 1] + 1e-12);
}

TEST_CASE("iteration cap raises a convergence error with the residual") {
    MarketModel m = symmetric_market(4);
    SolveOptions opts;
    opts.max_iter = 1;
    try {
        demand_equilibrium(m, 0.3, opts);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.residual > 0.0);
    }
}

TEST_CASE("market validation") {
    MarketModel m = symmetric_market(2);
    m.price.slope = -0.1;
    CHECK_THROWS_AS(m.validate(), ValidationError);
    m = symmetric_market(2);
    m.satisfaction[0].rate = 0.0;
    CHECK_THROWS_AS(m.validate(), ValidationError);
    m = symmetric_market(2);
    CHECK_THROWS_AS(demand_equilibrium(m, 1.0), ValidationError);
    CHECK_THROWS_AS(demand_equilibrium(m, -0.2), ValidationError);
}
