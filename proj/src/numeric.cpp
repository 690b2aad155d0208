#include "cuspsum/numeric.hpp"

#include <cmath>
#include <cstdlib>

namespace cuspsum {

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("fit_line: size mismatch");
    if (xs.size() < 2)
        throw std::invalid_argument("fit_line: need at least 2 points");
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    LineFit f;
    if (denom == 0.0) return f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

LineFit fit_loglog(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("fit_loglog: size mismatch");
    std::vector<double> lx, ly;
    lx.reserve(xs.size());
    ly.reserve(ys.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > 0.0 && ys[i] > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    if (lx.size() < 2) return {};
    return fit_line(lx, ly);
}

double through_origin_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("through_origin_slope: size mismatch");
    double num = 0, den = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        num += xs[i] * ys[i];
        den += xs[i] * xs[i];
    }
    return den == 0.0 ? 0.0 : num / den;
}

long long gcd_ll(long long a, long long b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b != 0) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long long mod_inverse(long long h, long long k) {
    if (k == 1) return 0;
    long long r = ((h % k) + k) % k;
    // extended Euclid on (r, k)
    long long old_r = r, cur_r = k;
    long long old_s = 1, cur_s = 0;
    while (cur_r != 0) {
        long long q = old_r / cur_r;
        long long t = old_r - q * cur_r;
        old_r = cur_r;
        cur_r = t;
        t = old_s - q * cur_s;
        old_s = cur_s;
        cur_s = t;
    }
    if (old_r != 1)
        throw std::invalid_argument("mod_inverse: arguments not coprime");
    return ((old_s % k) + k) % k;
}

}  // namespace cuspsum
