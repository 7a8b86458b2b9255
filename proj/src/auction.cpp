#include "empathy/auction.hpp"

#include <algorithm>
#include <cmath>

#include "empathy/csv.hpp"

namespace empathy::auction {

namespace {

constexpr double kQuadTol = 1e-10;
constexpr double kTailFloor = 1e-14;

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, m, fa, flm, fm);
    double right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = simpson(a, b, fa, fm, fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

void check_tilt(double tilt) {
    if (!(1.0 + tilt > 0.0))
        throw ValidationError("tilt must satisfy 1 + tilt > 0 for a valid tilted cdf");
}

}  // namespace

double CostDistribution::cdf_at(double c) const {
    if (!cdf) throw ValidationError("distribution has no cdf");
    double v = cdf(std::clamp(c, 0.0, upper));
    if (!std::isfinite(v)) throw ValidationError("cdf returned a non-finite value");
    return std::clamp(v, 0.0, 1.0);
}

double CostDistribution::density_at(double c) const {
    if (density) return density(std::clamp(c, 0.0, upper));
    double h = 1e-6 * std::max(1.0, upper);
    double lo = std::max(0.0, c - h), hi = std::min(upper, c + h);
    return (cdf_at(hi) - cdf_at(lo)) / (hi - lo);
}

void CostDistribution::validate() const {
    if (!(upper > 0.0)) throw ValidationError("distribution upper support must be positive");
    if (!cdf) throw ValidationError("distribution has no cdf");
    if (std::abs(cdf_at(0.0)) > 1e-9 || std::abs(cdf_at(upper) - 1.0) > 1e-9)
        throw ValidationError("cdf must run from 0 at cost 0 to 1 at the upper support");
}

CostDistribution uniform_distribution(double upper) {
    if (!(upper > 0.0)) throw ValidationError("uniform distribution needs positive upper support");
    CostDistribution d;
    d.name = "uniform";
    d.upper = upper;
    d.cdf = [upper](double c) { return c / upper; };
    d.density = [upper](double) { return 1.0 / upper; };
    return d;
}

CostDistribution truncated_exponential(double rate, double upper) {
    if (!(rate > 0.0) || !(upper > 0.0))
        throw ValidationError("truncated exponential needs positive rate and upper support");
    double norm = 1.0 - std::exp(-rate * upper);
    CostDistribution d;
    d.name = "truncated-exponential";
    d.upper = upper;
    d.cdf = [rate, norm](double c) { return (1.0 - std::exp(-rate * c)) / norm; };
    d.density = [rate, norm](double c) { return rate * std::exp(-rate * c) / norm; };
    return d;
}

CostDistribution piecewise_linear(const std::vector<std::pair<double, double>>& knots) {
    if (knots.size() < 2) throw ValidationError("piecewise-linear cdf needs at least two knots");
    if (knots.front().first != 0.0 || std::abs(knots.front().second) > 1e-12)
        throw ValidationError("piecewise-linear cdf must start at (0, 0)");
    if (std::abs(knots.back().second - 1.0) > 1e-12)
        throw ValidationError("piecewise-linear cdf must end at value 1");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (knots[i].first <= knots[i - 1].first || knots[i].second < knots[i - 1].second)
            throw ValidationError("piecewise-linear cdf knots must be increasing");
    CostDistribution d;
    d.name = "piecewise-linear";
    d.upper = knots.back().first;
    d.cdf = [knots](double c) {
        if (c <= knots.front().first) return 0.0;
        for (std::size_t i = 1; i < knots.size(); ++i) {
            if (c <= knots[i].first) {
                double t = (c - knots[i - 1].first) / (knots[i].first - knots[i - 1].first);
                return knots[i - 1].second + t * (knots[i].second - knots[i - 1].second);
            }
        }
        return 1.0;
    };
    return d;
}

double tilted_cdf(const CostDistribution& d, double tilt, double c) {
    check_tilt(tilt);
    d.validate();
    if (c < 0.0 || c > d.upper) throw ValidationError("cost outside the distribution support");
    double survival = 1.0 - d.cdf_at(c);
    return 1.0 - std::pow(survival, 1.0 + tilt);
}

double bid_price(const BidQuery& q) {
    check_tilt(q.tilt);
    q.distribution.validate();
    const double upper = q.distribution.upper;
    if (q.cost < 0.0 || q.cost >= upper)
        throw ValidationError("bid cost must lie in [0, upper support)");

    const double expo = 1.0 + q.tilt;
    auto tail = [&](double x) { return std::pow(1.0 - q.distribution.cdf_at(x), expo); };
    double tail_at_cost = tail(q.cost);
    if (tail_at_cost < kTailFloor)
        throw DegenerateConditioningError(
            "conditioning tail mass below 1e-14; bid is degenerate at the support edge");
    double price = q.cost + integrate(tail, q.cost, upper, kQuadTol) / tail_at_cost;
    return std::clamp(price, q.cost, upper);
}

double bid_price_density_route(const BidQuery& q) {
    check_tilt(q.tilt);
    if (q.tilt < 0.0)
        throw ValidationError("density route needs tilt >= 0 (unbounded integrand otherwise)");
    q.distribution.validate();
    const double upper = q.distribution.upper;
    const double expo = 1.0 + q.tilt;
    auto tilted_density = [&](double x) {
        double s = 1.0 - q.distribution.cdf_at(x);
        return expo * std::pow(s, expo - 1.0) * q.distribution.density_at(x);
    };
    double tail = std::pow(1.0 - q.distribution.cdf_at(q.cost), expo);
    if (tail < kTailFloor)
        throw DegenerateConditioningError(
            "conditioning tail mass below 1e-14; bid is degenerate at the support edge");
    auto integrand = [&](double x) { return x * tilted_density(x); };
    return integrate(integrand, q.cost, upper, kQuadTol) / tail;
}

BidCurve bid_curve(const CostDistribution& d, const std::vector<double>& tilts,
                   const std::vector<double>& costs) {
    for (double t : tilts) check_tilt(t);
    BidCurve curve;
    curve.tilts = tilts;
    curve.costs = costs;
    curve.price.assign(costs.size(), std::vector<double>(tilts.size(), 0.0));
    for (std::size_t i = 0; i < costs.size(); ++i)
        for (std::size_t j = 0; j < tilts.size(); ++j)
            curve.price[i][j] = bid_price({costs[i], tilts[j], d});
    return curve;
}

void export_bid_curve_csv(const std::string& path, const BidCurve& curve) {
    CsvWriter csv(path);
    std::vector<std::string> header{"cost"};
    for (double t : curve.tilts) header.push_back("tilt=" + fmt_num(t));
    csv.row(header);
    for (std::size_t i = 0; i < curve.costs.size(); ++i) {
        std::vector<std::string> row{fmt_num(curve.costs[i])};
        for (double p : curve.price[i]) row.push_back(fmt_num(p));
        csv.row(row);
    }
}

}  // namespace empathy::auction
