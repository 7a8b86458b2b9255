#pragma once

#include <functional>
#include <string>
#include <vector>

#include "empathy/errors.hpp"

namespace empathy::auction {

// Production-cost distribution on [0, upper]: F(0) = 0, F(upper) = 1,
// non-decreasing. The density is optional; when absent it is recovered by
// central differences with step 1e-6.
struct CostDistribution {
    std::string name;
    double upper = 1.0;
    std::function<double(double)> cdf;
    std::function<double(double)> density;  // may be empty

    double cdf_at(double c) const;
    double density_at(double c) const;
    void validate() const;
};

CostDistribution uniform_distribution(double upper = 1.0);
CostDistribution truncated_exponential(double rate, double upper = 1.0);
// cdf knots (cost, F(cost)); first must be (0,0), last (upper,1)
CostDistribution piecewise_linear(const std::vector<std::pair<double, double>>& knots);

// One bid evaluation. tilt > 0 is the spiteful direction; partially
// altruistic bidders pass the tilt negated. Entry cost and quantity are
// carried along for reporting but do not move the optimal price.
struct BidQuery {
    double cost = 0.0;
    double tilt = 0.0;  // requires 1 + tilt > 0
    CostDistribution distribution;
    double entry_cost = 0.0;
    double quantity = 1.0;
};

// P(X_tilt < c) = 1 - (1 - F(c))^(1 + tilt). A valid cdf for any tilt > -1.
double tilted_cdf(const CostDistribution& d, double tilt, double c);

// Optimal bid: E[X_tilt | X_tilt > c], integrated adaptively (absolute
// tolerance 1e-10) on the survival form c + int_c^upper (1-F)^(1+tilt) dx
// normalized by the tail mass, which avoids the density blow-up near the
// upper support end for negative tilts. Result lies in [cost, upper].
double bid_price(const BidQuery& q);

// Same conditional expectation through the density route
// int x dI_tilt(x) / tail; kept as an independent cross-check. Requires
// tilt >= 0: for negative tilts the tilted density blows up at the upper
// support end, which is what the survival form in bid_price avoids.
double bid_price_density_route(const BidQuery& q);

struct BidCurve {
    std::vector<double> tilts;
    std::vector<double> costs;
    std::vector<std::vector<double>> price;  // [cost index][tilt index]
};

BidCurve bid_curve(const CostDistribution& d, const std::vector<double>& tilts,
                   const std::vector<double>& costs);

void export_bid_curve_csv(const std::string& path, const BidCurve& curve);

}  // namespace empathy::auction
