#include "cuspsum/spacing.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

namespace cuspsum {

SpacingQuery make_spacing_query(double L, double delta, double omega, double k,
                                double M, double theta) {
    if (!(L >= 0.5)) throw std::invalid_argument("SpacingQuery: L must be >= 1/2");
    if (!(delta > 0.0)) throw std::invalid_argument("SpacingQuery: delta must be > 0");
    if (!(omega > 1.0)) throw std::invalid_argument("SpacingQuery: omega must be > 1");
    if (!(k >= 1.0) || !(M >= 1.0))
        throw std::invalid_argument("SpacingQuery: need k >= 1 and M >= 1");
    return {L, delta, omega, k, M, theta};
}

double corollary_rhs(double L, double k, double M, double theta) {
    if (!(L >= 0.5) || !(k >= 1.0) || !(M >= 1.0))
        throw std::invalid_argument("corollary_rhs: need L >= 1/2, k >= 1, M >= 1");
    return std::pow(L, 3.5) * k * std::pow(M, theta - 0.5) + L * L;
}

namespace {

// Comparison context shared by both counting algorithms. Decisions are made
// in binary64; if |disc| lands within the guard band of the threshold, the
// four roots are recomputed in __float128 and the comparison redone there,
// so boundary quadruples resolve identically everywhere.
struct SpacingContext {
    long long lo, hi;              // integers in (L, 2L]
    std::vector<double> root;      // root[n - lo] = n^{1/omega}
    double threshold;              // delta * L^{1/omega}
    double guard;
    double inv_omega;
    __float128 threshold_q;
    __float128 inv_omega_q;

    explicit SpacingContext(const SpacingQuery& q) {
        lo = static_cast<long long>(std::floor(q.L)) + 1;
        hi = static_cast<long long>(std::floor(2.0 * q.L));
        inv_omega = 1.0 / q.omega;
        threshold = q.delta * std::pow(q.L, inv_omega);
        guard = 1e-12 * (1.0 + threshold);
        inv_omega_q = static_cast<__float128>(1.0) / static_cast<__float128>(q.omega);
        threshold_q = static_cast<__float128>(q.delta) *
                      powq(static_cast<__float128>(q.L), inv_omega_q);
        root.reserve(static_cast<size_t>(std::max<long long>(hi - lo + 1, 0)));
        for (long long n = lo; n <= hi; ++n)
            root.push_back(std::pow(static_cast<double>(n), inv_omega));
    }

    long long size() const { return hi - lo + 1; }

    double pair_sum(long long a, long long b) const {
        return root[a - lo] + root[b - lo];
    }

    bool close_exact(long long a, long long b, long long c, long long d) const {
        __float128 disc = powq(static_cast<__float128>(a), inv_omega_q) +
                          powq(static_cast<__float128>(b), inv_omega_q) -
                          powq(static_cast<__float128>(c), inv_omega_q) -
                          powq(static_cast<__float128>(d), inv_omega_q);
        return fabsq(disc) < threshold_q;
    }

    bool close(long long a, long long b, long long c, long long d) const {
        double disc = pair_sum(a, b) - pair_sum(c, d);
        if (std::abs(std::abs(disc) - threshold) <= guard)
            return close_exact(a, b, c, d);
        return std::abs(disc) < threshold;
    }
};

void fill_bounds(const SpacingQuery& q, SpacingCount& c) {
    c.bound_rs = q.delta * std::pow(q.L, 4.0) + q.L * q.L;
    c.bound_corollary = corollary_rhs(q.L, q.k, q.M, q.theta);
}

}  // namespace

SpacingCount spacing_count_bruteforce(const SpacingQuery& q) {
    if (q.L > kBruteForceMaxL)
        throw resource_error("spacing_count_bruteforce: L over budget");
    SpacingContext ctx(q);
    SpacingCount out;
    fill_bounds(q, out);
    for (long long a = ctx.lo; a <= ctx.hi; ++a)
        for (long long b = ctx.lo; b <= ctx.hi; ++b)
            for (long long c = ctx.lo; c <= ctx.hi; ++c)
                for (long long d = ctx.lo; d <= ctx.hi; ++d)
                    if (ctx.close(a, b, c, d)) ++out.count;
    return out;
}

SpacingCount spacing_count_pairsum(const SpacingQuery& q) {
    if (q.L > kPairSumMaxL)
        throw resource_error("spacing_count_pairsum: L over budget");
    SpacingContext ctx(q);
    SpacingCount out;
    fill_bounds(q, out);
    if (ctx.size() <= 0) return out;

    // unordered pairs a <= b with ordered multiplicity
    struct Entry {
        double s;
        int a, b;
        long long w;
    };
    std::vector<Entry> entries;
    entries.reserve(static_cast<size_t>(ctx.size()) * (ctx.size() + 1) / 2);
    for (long long a = ctx.lo; a <= ctx.hi; ++a)
        for (long long b = a; b <= ctx.hi; ++b)
            entries.push_back({ctx.pair_sum(a, b), static_cast<int>(a),
                               static_cast<int>(b), a == b ? 1LL : 2LL});
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        if (x.s != y.s) return x.s < y.s;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });

    const size_t n = entries.size();
    std::vector<double> svals(n);
    std::vector<long long> prefw(n + 1, 0);
    for (size_t i = 0; i < n; ++i) {
        svals[i] = entries[i].s;
        prefw[i + 1] = prefw[i] + entries[i].w;
    }

    const double T = ctx.threshold, g = 2.0 * ctx.guard;
    auto lower = [&](double v) {
        return static_cast<size_t>(
            std::lower_bound(svals.begin(), svals.end(), v) - svals.begin());
    };

    long long total = 0;
    for (size_t i = 0; i < n; ++i) {
        const Entry& ei = entries[i];
        // certainly inside: |s_i - s_j| < T - g, double comparison suffices
        size_t safe_lo = lower(ei.s - T + g);
        size_t safe_hi = lower(ei.s + T - g);
        long long cnt = prefw[safe_hi] - prefw[safe_lo];
        // boundary zones get the full guarded decision
        size_t zlo0 = lower(ei.s - T - g), zlo1 = safe_lo;
        size_t zhi0 = safe_hi, zhi1 = lower(ei.s + T + g);
        for (size_t j = zlo0; j < zlo1; ++j)
            if (ctx.close(ei.a, ei.b, entries[j].a, entries[j].b))
                cnt += entries[j].w;
        for (size_t j = zhi0; j < zhi1; ++j)
            if (ctx.close(ei.a, ei.b, entries[j].a, entries[j].b))
                cnt += entries[j].w;
        total += ei.w * cnt;
    }
    out.count = total;
    return out;
}

void export_csv(const SpacingQuery& q, const SpacingCount& c, std::ostream& out) {
    out << "L,delta,omega,count,bound_rs,bound_corollary\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%lld,%.17g,%.17g\n", q.L,
                  q.delta, q.omega, c.count, c.bound_rs, c.bound_corollary);
    out << buf;
}

}  // namespace cuspsum
