#include "empathy/energy.hpp"

#include <algorithm>
#include <cmath>

#include "empathy/csv.hpp"

namespace empathy::energy {

namespace {

double w_value(const Satisfaction& s, double d) {
    return s.amplitude * (1.0 - std::exp(-s.rate * d));
}

double w_slope(const Satisfaction& s, double d) {
    return s.amplitude * s.rate * std::exp(-s.rate * d);
}

// marginal cost seen by consumer i at own demand x given the others' total
double marginal_cost(const MarketModel& m, double empathy, double others, double x) {
    double price = m.price.base + m.price.slope * (others + x - m.supply);
    return price + m.price.slope * x + empathy * m.price.slope * others;
}

// unique best response of consumer i given the others' total demand
double best_response(const MarketModel& m, double empathy, int i, double others) {
    const Satisfaction& s = m.satisfaction[i];
    if (w_slope(s, 0.0) <= marginal_cost(m, empathy, others, 0.0)) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (w_slope(s, hi) > marginal_cost(m, empathy, others, hi)) {
        hi *= 2.0;
        if (hi > 1e12) throw ConvergenceError("energy best response unbounded", hi);
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (w_slope(s, mid) > marginal_cost(m, empathy, others, mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

void MarketModel::validate() const {
    if (consumers < 1) throw ValidationError("market needs at least one consumer");
    if (static_cast<int>(satisfaction.size()) != consumers)
        throw ValidationError("satisfaction parameters must match the consumer count");
    for (const auto& s : satisfaction)
        if (!(s.amplitude > 0.0) || !(s.rate > 0.0))
            throw ValidationError("satisfaction amplitude and rate must be positive");
    if (!(std::isfinite(price.base)) || price.base < 0.0)
        throw ValidationError("price base must be finite and >= 0");
    if (!(std::isfinite(price.slope)) || price.slope < 0.0)
        throw ValidationError("price slope must be finite and >= 0");
    if (!std::isfinite(supply)) throw ValidationError("supply must be finite");
}

double empathic_payoff(const MarketModel& m, double empathy, const std::vector<double>& d, int i) {
    if (static_cast<int>(d.size()) != m.consumers)
        throw ValidationError("demand profile size mismatch");
    double total = 0.0;
    for (double x : d) total += x;
    double price = m.price.base + m.price.slope * (total - m.supply);
    double own = w_value(m.satisfaction[i], d[i]) - price * d[i];
    double others = 0.0;
    for (int j = 0; j < m.consumers; ++j)
        if (j != i) others += w_value(m.satisfaction[j], d[j]) - price * d[j];
    return own + empathy * others;
}

double foc_residual(const MarketModel& m, double empathy, const std::vector<double>& d) {
    if (static_cast<int>(d.size()) != m.consumers)
        throw ValidationError("demand profile size mismatch");
    double total = 0.0;
    for (double x : d) total += x;
    double worst = 0.0;
    for (int i = 0; i < m.consumers; ++i) {
        double others = total - d[i];
        double gap = w_slope(m.satisfaction[i], d[i]) - marginal_cost(m, empathy, others, d[i]);
        worst = std::max(worst, d[i] > 0.0 ? std::abs(gap) : std::max(0.0, gap));
    }
    return worst;
}

DemandResult demand_equilibrium(const MarketModel& m, double empathy, const SolveOptions& opts) {
    m.validate();
    if (!(empathy >= 0.0 && empathy < 1.0))
        throw ValidationError("empathy weight must lie in [0,1)");
    if (!(opts.damping > 0.0 && opts.damping <= 1.0))
        throw ValidationError("damping must lie in (0,1]");

    std::vector<double> d(m.consumers, 0.0);
    double residual = foc_residual(m, empathy, d);
    int it = 0;
    for (; it < opts.max_iter && residual > opts.tol; ++it) {
        double total = 0.0;
        for (double x : d) total += x;
        std::vector<double> next(m.consumers);
        for (int i = 0; i < m.consumers; ++i) {
            double br = best_response(m, empathy, i, total - d[i]);
            next[i] = std::max(0.0, (1.0 - opts.damping) * d[i] + opts.damping * br);
        }
        d.swap(next);
        residual = foc_residual(m, empathy, d);
    }
    if (residual > opts.tol)
        throw ConvergenceError("demand equilibrium did not reach tolerance " +
                                   fmt_num(opts.tol) + " after " + std::to_string(opts.max_iter) +
                                   " iterations (residual " + fmt_num(residual) + ")",
                               residual);
    return {d, residual, it};
}

PeakTable peak_comparison(const MarketModel& m, const DayProfile& day,
                          const std::vector<double>& lambdas, const SolveOptions& opts) {
    m.validate();
    if (day.appetite.empty()) throw ValidationError("day profile needs at least one hour");
    if (!day.supply.empty() && day.supply.size() != day.appetite.size())
        throw ValidationError("per-hour supply must match the appetite table length");

    PeakTable table;
    table.lambdas = lambdas;
    table.aggregate.assign(day.appetite.size(), std::vector<double>(lambdas.size(), 0.0));
    table.peak.assign(lambdas.size(), 0.0);
    for (std::size_t h = 0; h < day.appetite.size(); ++h) {
        if (!(day.appetite[h] > 0.0)) throw ValidationError("hourly appetite must be positive");
        MarketModel hour = m;
        for (auto& s : hour.satisfaction) s.amplitude *= day.appetite[h];
        if (!day.supply.empty()) hour.supply = day.supply[h];
        for (std::size_t k = 0; k < lambdas.size(); ++k) {
            DemandResult res = demand_equilibrium(hour, lambdas[k], opts);
            double total = 0.0;
            for (double x : res.demand) total += x;
            table.aggregate[h][k] = total;
            table.peak[k] = std::max(table.peak[k], total);
        }
    }
    return table;
}

void export_peak_table_csv(const std::string& path, const PeakTable& table) {
    CsvWriter csv(path);
    std::vector<std::string> header{"hour"};
    for (double l : table.lambdas) header.push_back("lambda=" + fmt_num(l));
    csv.row(header);
    for (std::size_t h = 0; h < table.aggregate.size(); ++h) {
        std::vector<std::string> row{std::to_string(h)};
        for (double v : table.aggregate[h]) row.push_back(fmt_num(v));
        csv.row(row);
    }
    std::vector<std::string> peak_row{"peak"};
    for (double v : table.peak) peak_row.push_back(fmt_num(v));
    csv.row(peak_row);
}

}  // namespace empathy::energy
