#include "cuspsum/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

namespace cuspsum {

MomentSpec make_moment_spec(double A, ShortSumSpec spec) {
    if (!(A >= 1.0)) throw std::invalid_argument("MomentSpec: A must be >= 1");
    return {A, spec};
}

namespace {

struct PartialMoment {
    CompensatedSum sum;
    double max_abs = 0.0;
    double argmax = 0.0;
};

void reduce_range(const StepFunction& sf, double A, size_t first, size_t last,
                  PartialMoment& out) {
    for (size_t i = first; i < last; ++i) {
        double len = sf.breakpoints[i + 1] - sf.breakpoints[i];
        if (len <= 0.0) continue;
        double mag = std::abs(sf.plateaus[i]);
        out.sum.add(len * std::pow(mag, A));
        if (mag > out.max_abs) {
            out.max_abs = mag;
            out.argmax = 0.5 * (sf.breakpoints[i] + sf.breakpoints[i + 1]);
        }
    }
}

}  // namespace

MomentResult exact_moment(const StepFunction& sf, double A, int threads) {
    if (!(A >= 1.0)) throw std::invalid_argument("exact_moment: A must be >= 1");
    if (threads < 1) threads = 1;
    const size_t n = sf.plateaus.size();

    MomentResult r;
    r.plateau_count = static_cast<long long>(n);
    std::vector<PartialMoment> parts;

    size_t chunks = static_cast<size_t>(threads);
    if (chunks <= 1 || n < 4 * chunks) {
        parts.resize(1);
        reduce_range(sf, A, 0, n, parts[0]);
    } else {
        parts.resize(chunks);
        std::vector<std::thread> pool;
        size_t per = (n + chunks - 1) / chunks;
        for (size_t c = 0; c < chunks; ++c) {
            size_t first = c * per, last = std::min(n, first + per);
            if (first >= last) break;
            pool.emplace_back([&, c, first, last] {
                reduce_range(sf, A, first, last, parts[c]);
            });
        }
        for (auto& th : pool) th.join();
    }

    CompensatedSum total;
    for (const auto& p : parts) {
        total.add(p.sum.value());
        if (p.max_abs > r.max_abs) {
            r.max_abs = p.max_abs;
            r.argmax = p.argmax;
        }
    }
    r.value = total.value();
    return r;
}

MomentResult exact_moment(const MomentSpec& ms, const CoefficientTable& t,
                          int threads) {
    StepFunction sf = build_step_function(ms.spec, t, threads);
    return exact_moment(sf, ms.A, threads);
}

double moment_over_range(const StepFunction& sf, double A, double lo, double hi) {
    if (lo < sf.domain_lo() || hi > sf.domain_hi() || lo > hi)
        throw std::invalid_argument("moment_over_range: bad subrange");
    CompensatedSum acc;
    for (size_t i = 0; i + 1 < sf.breakpoints.size(); ++i) {
        double a = std::max(sf.breakpoints[i], lo);
        double b = std::min(sf.breakpoints[i + 1], hi);
        if (b <= a) continue;
        acc.add((b - a) * std::pow(std::abs(sf.plateaus[i]), A));
    }
    return acc.value();
}

double DeltaRule::delta(double M) const { return coeff * std::pow(M, exponent); }

MomentGrowthFit moment_growth_fit(double A, const DeltaRule& rule,
                                  const RationalTwist& twist,
                                  std::span<const double> M_ladder,
                                  const CoefficientTable& t, int threads) {
    if (M_ladder.size() < 3)
        throw std::invalid_argument("moment_growth_fit: need >= 3 ladder points");
    for (size_t i = 1; i < M_ladder.size(); ++i)
        if (M_ladder[i] <= M_ladder[i - 1])
            throw std::invalid_argument("moment_growth_fit: ladder must ascend");
    for (double M : M_ladder) {
        double D = rule.delta(M);
        if (!(D >= 1.0) || !(D <= M))
            throw std::invalid_argument(
                "moment_growth_fit: rule gives Delta outside [1, M] at M = " +
                std::to_string(M));
        if (2.0 * M + D > static_cast<double>(t.n_max))
            throw std::invalid_argument("moment_growth_fit: table too short");
    }

    MomentGrowthFit fit;
    std::vector<double> Ms, vals;
    for (double M : M_ladder) {
        double D = rule.delta(M);
        MomentSpec ms = make_moment_spec(A, make_short_sum_spec(M, D, twist));
        MomentResult mr = exact_moment(ms, t, threads);
        fit.rows.push_back({M, D, twist.k, A, mr.value, mr.max_abs, mr.argmax});
        Ms.push_back(M);
        vals.push_back(mr.value);
    }
    bool all_zero = std::all_of(vals.begin(), vals.end(),
                                [](double v) { return v == 0.0; });
    if (all_zero)
        throw std::invalid_argument(
            "moment_growth_fit: all moment values are zero, degenerate fit");
    fit.slope = fit_loglog(Ms, vals).slope;
    return fit;
}

LargeValueCensus large_value_census(const StepFunction& sf, double V,
                                    double delta_knob, const ExponentPair& e) {
    if (!(V >= 1.0))
        throw std::invalid_argument("large_value_census: V must be >= 1");
    LargeValueCensus census;
    census.V = V;
    double cursor = sf.domain_lo();
    for (size_t i = 0; i < sf.plateaus.size(); ++i) {
        if (std::abs(sf.plateaus[i]) < V) continue;
        for (;;) {
            double x = std::max(sf.breakpoints[i], cursor);
            if (x >= sf.breakpoints[i + 1]) break;
            census.points.push_back(x);
            // keep x_next - x >= V despite rounding in x + V
            double next = x + V;
            while (next - x < V)
                next = std::nextafter(next, std::numeric_limits<double>::infinity());
            cursor = next;
        }
    }
    census.R = static_cast<long long>(census.points.size());
    census.bound_rhs = thm2_rhs(static_cast<double>(sf.spec.twist.k), sf.spec.M,
                                sf.spec.Delta, V, e, delta_knob)
                           .value;
    return census;
}

double abs_percentile(const StepFunction& sf, double percentile) {
    if (!(percentile >= 0.0) || !(percentile <= 100.0))
        throw std::invalid_argument("abs_percentile: percentile outside [0,100]");
    std::vector<std::pair<double, double>> mag_len;
    mag_len.reserve(sf.plateaus.size());
    double total = 0.0;
    for (size_t i = 0; i < sf.plateaus.size(); ++i) {
        double len = sf.breakpoints[i + 1] - sf.breakpoints[i];
        if (len <= 0.0) continue;
        mag_len.emplace_back(std::abs(sf.plateaus[i]), len);
        total += len;
    }
    if (mag_len.empty()) return 0.0;
    std::sort(mag_len.begin(), mag_len.end());
    double target = total * percentile / 100.0;
    double acc = 0.0;
    for (const auto& [mag, len] : mag_len) {
        acc += len;
        if (acc >= target) return mag;
    }
    return mag_len.back().first;
}

double conjecture_probe(const StepFunction& sf) {
    double max_abs = 0.0;
    for (const auto& p : sf.plateaus) max_abs = std::max(max_abs, std::abs(p));
    double denom = std::min(std::sqrt(sf.spec.Delta),
                            std::sqrt(static_cast<double>(sf.spec.twist.k)) *
                                std::pow(sf.spec.M, 0.25));
    return max_abs / denom;
}

void export_csv(const MomentGrowthFit& fit, std::ostream& out) {
    out << "M,Delta,k,A,value,max_abs,argmax\n";
    char buf[200];
    for (const auto& r : fit.rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%lld,%.17g,%.17g,%.17g,%.17g\n",
                      r.M, r.Delta, r.k, r.A, r.value, r.max_abs, r.argmax);
        out << buf;
    }
}

void export_csv(const LargeValueCensus& census, const StepFunction& sf,
                std::ostream& out) {
    out << "x,abs_S\n";
    char buf[80];
    for (double x : census.points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x,
                      std::abs(sf.value_at(x)));
        out << buf;
    }
}

}  // namespace cuspsum
