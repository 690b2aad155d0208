#include "cuspsum/sums.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace cuspsum {

namespace {
constexpr long long kResyncInterval = 1 << 16;
}

RationalTwist make_twist(long long h, long long k) {
    if (k < 1) throw std::invalid_argument("make_twist: k must be positive");
    long long g = gcd_ll(h, k);
    if (g != 1)
        throw std::invalid_argument("make_twist: gcd(h,k) = " + std::to_string(g) +
                                    ", twist must be reduced");
    RationalTwist t;
    t.k = k;
    t.h = ((h % k) + k) % k;
    t.h_bar = (k == 1) ? 0 : mod_inverse(t.h, k);
    return t;
}

ShortSumSpec make_short_sum_spec(double M, double Delta, RationalTwist twist) {
    if (!(M >= 1.0))
        throw std::invalid_argument("ShortSumSpec: M must be >= 1");
    if (!(Delta > 0.0) || !(Delta <= M))
        throw std::invalid_argument("ShortSumSpec: need 0 < Delta <= M");
    return {M, Delta, twist};
}

TwistTable::TwistTable(const RationalTwist& t)
    : k_(t.k), h_(t.h), h_bar_(t.h_bar) {
    roots_.resize(k_);
    const long double two_pi = 6.283185307179586476925286766559L;
    for (long long j = 0; j < k_; ++j) {
        long double th = two_pi * static_cast<long double>(j) / k_;
        roots_[j] = {static_cast<double>(cosl(th)), static_cast<double>(sinl(th))};
    }
}

namespace {

// closed integer window [x, x+Delta]
std::pair<long long, long long> window_range(double x, double Delta) {
    long long lo = static_cast<long long>(std::ceil(x));
    long long hi = static_cast<long long>(std::floor(x + Delta));
    return {std::max<long long>(lo, 1), hi};
}

}  // namespace

std::complex<double> short_sum_direct(double x, const ShortSumSpec& spec,
                                      const CoefficientTable& t) {
    if (x + spec.Delta > static_cast<double>(t.n_max))
        throw std::invalid_argument("short_sum_direct: coefficient table too short");
    TwistTable tw(spec.twist);
    auto [lo, hi] = window_range(x, spec.Delta);
    ComplexSum acc;
    for (long long n = lo; n <= hi; ++n) acc.add(t.a[n] * tw.forward(n));
    return acc.value();
}

std::complex<double> long_sum_direct(double x, const RationalTwist& twist,
                                     const CoefficientTable& t) {
    if (x > static_cast<double>(t.n_max))
        throw std::invalid_argument("long_sum_direct: coefficient table too short");
    TwistTable tw(twist);
    long long hi = static_cast<long long>(std::floor(x));
    ComplexSum acc;
    for (long long n = 1; n <= hi; ++n) acc.add(t.a[n] * tw.forward(n));
    return acc.value();
}

size_t StepFunction::interval_index(double x) const {
    if (x < domain_lo() || x > domain_hi())
        throw std::invalid_argument("StepFunction: x outside domain");
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    size_t i = static_cast<size_t>(it - breakpoints.begin());
    if (i == 0) return 0;
    --i;
    return std::min(i, plateaus.size() - 1);
}

std::complex<double> StepFunction::value_at(double x) const {
    return plateaus[interval_index(x)];
}

namespace {

struct Event {
    double pos;
    long long n;
    bool enter;  // true: term n joins the window; false: it leaves
};

// Active integers on the interval just right of position x:
// {n : n > x and n - Delta <= x}. The entering-event position for n is the
// rounded double(n) - Delta, so membership is tested with that expression.
struct ActiveWindow {
    long long lo, hi;
};

ActiveWindow active_at(double x, double Delta) {
    long long lo = static_cast<long long>(std::floor(x)) + 1;
    long long hi = static_cast<long long>(std::floor(x + Delta));
    while (static_cast<double>(hi + 1) - Delta <= x) ++hi;
    while (hi >= lo && static_cast<double>(hi) - Delta > x) --hi;
    return {std::max<long long>(lo, 1), hi};
}

std::complex<double> window_sum(const ActiveWindow& w, const CoefficientTable& t,
                                const TwistTable& tw) {
    ComplexSum acc;
    for (long long n = w.lo; n <= w.hi; ++n) acc.add(t.a[n] * tw.forward(n));
    return acc.value();
}

// Sweep intervals [first, last) of the breakpoint list, writing plateaus.
void sweep_chunk(const StepFunction& sf, const CoefficientTable& t,
                 const TwistTable& tw, const std::vector<Event>& events,
                 size_t first, size_t last,
                 std::vector<std::complex<double>>& out) {
    const auto& B = sf.breakpoints;
    const double Delta = sf.spec.Delta;

    ActiveWindow w = active_at(B[first], Delta);
    ComplexSum acc;
    acc.add(window_sum(w, t, tw));

    // first event strictly to the right of the chunk's left edge
    size_t ei = static_cast<size_t>(
        std::upper_bound(events.begin(), events.end(), B[first],
                         [](double x, const Event& e) { return x < e.pos; }) -
        events.begin());

    long long processed = 0;
    for (size_t i = first; i < last; ++i) {
        if (i > first) {
            while (ei < events.size() && events[ei].pos <= B[i]) {
                const Event& e = events[ei];
                if (e.enter) {
                    acc.add(t.a[e.n] * tw.forward(e.n));
                    w.hi = e.n;
                } else {
                    acc.sub(t.a[e.n] * tw.forward(e.n));
                    w.lo = e.n + 1;
                }
                ++ei;
                if (++processed % kResyncInterval == 0) {
                    acc.reset();
                    acc.add(window_sum(w, t, tw));
                }
            }
        }
        out[i] = acc.value();
    }
}

}  // namespace

StepFunction build_step_function(const ShortSumSpec& spec,
                                 const CoefficientTable& t, int threads) {
    const double M = spec.M, Delta = spec.Delta;
    if (2.0 * M + Delta > static_cast<double>(t.n_max))
        throw std::invalid_argument("build_step_function: coefficient table too short");
    if (threads < 1) threads = 1;

    const double lo = M, hi = 2.0 * M;
    std::vector<double> bks;
    std::vector<Event> events;
    {
        // leaving events at integer n in [M, 2M]
        long long n0 = static_cast<long long>(std::ceil(lo));
        long long n1 = static_cast<long long>(std::floor(hi));
        for (long long n = n0; n <= n1; ++n) {
            double p = static_cast<double>(n);
            bks.push_back(p);
            events.push_back({p, n, false});
        }
        // entering events at n - Delta in [M, 2M]
        long long m0 = static_cast<long long>(std::floor(lo + Delta));
        long long m1 = static_cast<long long>(std::ceil(hi + Delta)) + 1;
        for (long long n = std::max<long long>(m0 - 1, 1); n <= m1; ++n) {
            double p = static_cast<double>(n) - Delta;
            if (p >= lo && p <= hi) {
                bks.push_back(p);
                events.push_back({p, n, true});
            }
        }
    }
    bks.push_back(lo);
    bks.push_back(hi);
    std::sort(bks.begin(), bks.end());
    bks.erase(std::unique(bks.begin(), bks.end()), bks.end());
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.pos != b.pos) return a.pos < b.pos;
        if (a.enter != b.enter) return !a.enter;  // leave before enter
        return a.n < b.n;
    });

    StepFunction sf;
    sf.spec = spec;
    sf.breakpoints = std::move(bks);
    size_t n_intervals = sf.breakpoints.size() - 1;
    sf.plateaus.assign(n_intervals, {0.0, 0.0});

    TwistTable tw(spec.twist);
    size_t chunks = static_cast<size_t>(threads);
    if (chunks <= 1 || n_intervals < 4 * chunks) {
        sweep_chunk(sf, t, tw, events, 0, n_intervals, sf.plateaus);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(chunks);
        size_t per = (n_intervals + chunks - 1) / chunks;
        for (size_t c = 0; c < chunks; ++c) {
            size_t first = c * per;
            size_t last = std::min(n_intervals, first + per);
            if (first >= last) break;
            pool.emplace_back([&, first, last] {
                sweep_chunk(sf, t, tw, events, first, last, sf.plateaus);
            });
        }
        for (auto& th : pool) th.join();
    }
    return sf;
}

void export_csv(const StepFunction& sf, std::ostream& out) {
    out << "x_left,x_right,re,im\n";
    char buf[160];
    for (size_t i = 0; i + 1 < sf.breakpoints.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n",
                      sf.breakpoints[i], sf.breakpoints[i + 1],
                      sf.plateaus[i].real(), sf.plateaus[i].imag());
        out << buf;
    }
}

}  // namespace cuspsum
