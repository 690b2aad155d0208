#include "cuspsum/coefficients.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace cuspsum {

namespace {

struct SparseTerm {
    long long exponent;
    long long coeff;  // +-(2j+1), fits comfortably in a word
};

// prod(1-q^n)^3 = sum_{j>=0} (-1)^j (2j+1) q^{j(j+1)/2}
std::vector<SparseTerm> eta_cube_terms(long long n_max) {
    std::vector<SparseTerm> terms;
    for (long long j = 0;; ++j) {
        long long e = j * (j + 1) / 2;
        if (e > n_max) break;
        long long c = 2 * j + 1;
        terms.push_back({e, (j % 2 == 0) ? c : -c});
    }
    return terms;
}

double normalized_value(const mpz_class& tau_n, long long n, int weight) {
    return tau_n.get_d() / std::pow(static_cast<double>(n),
                                    (weight - 1) / 2.0);
}

}  // namespace

CoefficientTable generate_delta_coefficients(long long n_max, long long budget) {
    if (n_max < 1)
        throw std::invalid_argument("generate_delta_coefficients: n_max must be >= 1");
    if (n_max > budget)
        throw resource_error("generate_delta_coefficients: n_max " +
                             std::to_string(n_max) + " exceeds budget " +
                             std::to_string(budget));

    const long long len = n_max;  // coefficients of q^0 .. q^{n_max-1}
    auto sparse = eta_cube_terms(len - 1);

    // dense = eta^3 truncated
    std::vector<mpz_class> dense(len);
    for (const auto& t : sparse) dense[t.exponent] = static_cast<long>(t.coeff);

    // seven sparse-by-dense passes: eta^3 -> eta^6 -> ... -> eta^24
    std::vector<mpz_class> next(len);
    for (int pass = 0; pass < 7; ++pass) {
        for (auto& z : next) z = 0;
        for (const auto& t : sparse) {
            const long long e = t.exponent;
            if (t.coeff >= 0) {
                const unsigned long c = static_cast<unsigned long>(t.coeff);
                for (long long i = 0; i + e < len; ++i)
                    mpz_addmul_ui(next[i + e].get_mpz_t(), dense[i].get_mpz_t(), c);
            } else {
                const unsigned long c = static_cast<unsigned long>(-t.coeff);
                for (long long i = 0; i + e < len; ++i)
                    mpz_submul_ui(next[i + e].get_mpz_t(), dense[i].get_mpz_t(), c);
            }
        }
        dense.swap(next);
    }

    CoefficientTable t;
    t.weight = 12;
    t.n_max = n_max;
    t.source = TableSource::generated;
    t.tau.resize(n_max + 1);
    t.a.assign(n_max + 1, 0.0);
    for (long long n = 1; n <= n_max; ++n) {
        t.tau[n] = std::move(dense[n - 1]);  // Delta = q * eta(q)^24
        t.a[n] = normalized_value(t.tau[n], n, t.weight);
    }
    return t;
}

long long divisor_count(long long n) {
    if (n < 1) throw std::invalid_argument("divisor_count: n must be >= 1");
    long long count = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            long long e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            count *= e + 1;
        }
    }
    if (n > 1) count *= 2;
    return count;
}

std::vector<long long> divisor_count_sieve(long long n_max) {
    std::vector<long long> d(n_max + 1, 0);
    for (long long i = 1; i <= n_max; ++i)
        for (long long m = i; m <= n_max; m += i) d[m]++;
    return d;
}

std::vector<int> smallest_prime_factor_sieve(long long n_max) {
    std::vector<int> spf(n_max + 1, 0);
    for (long long i = 2; i <= n_max; ++i) {
        if (spf[i] == 0) {
            for (long long m = i; m <= n_max; m += i)
                if (spf[m] == 0) spf[m] = static_cast<int>(i);
        }
    }
    return spf;
}

bool ValidationReport::has_errors() const {
    for (const auto& v : violations)
        if (!v.warning) return true;
    return false;
}

bool ValidationReport::contains(ViolationKind kind, long long witness) const {
    for (const auto& v : violations)
        if (v.kind == kind && v.witness == witness) return true;
    return false;
}

ValidationReport validate_table(const CoefficientTable& t) {
    ValidationReport report;
    if (t.n_max < 1 || t.tau.size() != static_cast<size_t>(t.n_max + 1) ||
        t.a.size() != static_cast<size_t>(t.n_max + 1))
        throw std::invalid_argument("validate_table: malformed table");

    const bool demote = (t.source == TableSource::loaded);
    auto add = [&](ViolationKind kind, long long witness, std::string detail,
                   bool warning) {
        report.violations.push_back({kind, witness, std::move(detail), warning});
    };

    if (t.tau[1] != 1)
        add(ViolationKind::leading_one, 1, "tau(1) != 1", false);
    if (t.a[1] != 1.0)
        add(ViolationKind::leading_one, 1, "a(1) != 1", false);

    // Deligne |a(n)| <= d(n), on the stored doubles
    auto d = divisor_count_sieve(t.n_max);
    for (long long n = 1; n <= t.n_max; ++n) {
        if (std::abs(t.a[n]) > static_cast<double>(d[n])) {
            std::ostringstream os;
            os << "|a(" << n << ")| = " << std::abs(t.a[n]) << " > d(" << n
               << ") = " << d[n];
            add(ViolationKind::deligne, n, os.str(), false);
        }
    }

    // normalization a(n) == tau(n)/n^{(weight-1)/2} within fp tolerance
    for (long long n = 1; n <= t.n_max; ++n) {
        double expect = normalized_value(t.tau[n], n, t.weight);
        double scale = std::max({1.0, std::abs(expect), std::abs(t.a[n])});
        if (std::abs(t.a[n] - expect) > 1e-9 * scale) {
            std::ostringstream os;
            os << "a(" << n << ") = " << t.a[n] << " but tau gives " << expect;
            add(ViolationKind::normalization, n, os.str(), false);
        }
    }

    // multiplicativity, exact integers: split n = p^e * m with gcd(p^e,m)=1
    auto spf = smallest_prime_factor_sieve(t.n_max);
    for (long long n = 2; n <= t.n_max; ++n) {
        long long p = spf[n];
        long long pe = 1, m = n;
        while (m % p == 0) {
            m /= p;
            pe *= p;
        }
        if (m == 1) continue;  // prime power, covered by the Hecke check
        if (t.tau[n] != t.tau[pe] * t.tau[m]) {
            std::ostringstream os;
            os << "tau(" << n << ") != tau(" << pe << ")*tau(" << m << ")";
            add(ViolationKind::multiplicativity, n, os.str(), demote);
        }
    }

    // Hecke recursion at prime powers, exact integers:
    // tau(p)tau(p^j) = tau(p^{j+1}) + p^{weight-1} tau(p^{j-1})
    for (long long p = 2; p <= t.n_max; ++p) {
        if (spf[p] != p) continue;  // not prime
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(t.weight - 1));
        long long pj = p;       // p^j
        long long pjm1 = 1;     // p^{j-1}
        for (long long j = 1;; ++j) {
            if (pj > t.n_max / p) break;
            long long pj1 = pj * p;  // p^{j+1}
            mpz_class lhs = t.tau[p] * t.tau[pj];
            mpz_class rhs = t.tau[pj1] + pk * t.tau[pjm1];
            if (lhs != rhs) {
                std::ostringstream os;
                os << "Hecke failure at p=" << p << ", j=" << j;
                add(ViolationKind::hecke, pj1, os.str(), demote);
            }
            pjm1 = pj;
            pj = pj1;
        }
    }

    return report;
}

std::vector<mpz_class> hecke_reconstruct(const CoefficientTable& t) {
    std::vector<mpz_class> r(t.n_max + 1);
    if (t.n_max >= 1) r[1] = 1;
    auto spf = smallest_prime_factor_sieve(t.n_max);
    for (long long n = 2; n <= t.n_max; ++n) {
        long long p = spf[n];
        long long pe = 1, m = n;
        while (m % p == 0) {
            m /= p;
            pe *= p;
        }
        if (m > 1) {
            r[n] = r[pe] * r[m];
        } else if (n == p) {
            r[n] = t.tau[p];  // prime values seed the recursion
        } else {
            // n = p^j, j >= 2: tau(p^j) = tau(p)tau(p^{j-1}) - p^{w-1}tau(p^{j-2})
            mpz_class pk;
            mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(t.weight - 1));
            r[n] = r[p] * r[n / p] - pk * r[n / p / p];
        }
    }
    return r;
}

RankinSelbergFit rankin_selberg_scan(const CoefficientTable& t,
                                     std::span<const long long> checkpoints) {
    if (checkpoints.size() < 3)
        throw std::invalid_argument("rankin_selberg_scan: need >= 3 checkpoints");
    for (size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] > t.n_max)
            throw std::invalid_argument("rankin_selberg_scan: checkpoint beyond n_max");
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("rankin_selberg_scan: checkpoints must ascend");
    }

    std::vector<double> Ms, sums;
    CompensatedSum acc;
    size_t ci = 0;
    for (long long n = 1; n <= checkpoints.back(); ++n) {
        acc.add(t.a[n] * t.a[n]);
        while (ci < checkpoints.size() && checkpoints[ci] == n) {
            Ms.push_back(static_cast<double>(n));
            sums.push_back(acc.value());
            ++ci;
        }
    }

    RankinSelbergFit fit;
    fit.A_hat = through_origin_slope(Ms, sums);
    std::vector<double> resid(Ms.size());
    for (size_t i = 0; i < Ms.size(); ++i)
        resid[i] = std::abs(sums[i] - fit.A_hat * Ms[i]);
    fit.residual_exponent = fit_loglog(Ms, resid).slope;
    return fit;
}

void save_cache(const CoefficientTable& t, std::ostream& out) {
    out << "cuspsum-coeffs v1 weight=" << t.weight << " n_max=" << t.n_max << "\n";
    char hexbuf[64];
    for (long long n = 1; n <= t.n_max; ++n) {
        std::snprintf(hexbuf, sizeof hexbuf, "%a", t.a[n]);
        out << n << ',' << t.tau[n].get_str() << ',' << hexbuf << "\n";
    }
}

void save_cache(const CoefficientTable& t, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("save_cache: cannot open " + path.string());
    save_cache(t, out);
    if (!out.good())
        throw std::runtime_error("save_cache: write failure on " + path.string());
}

CoefficientTable load_cache(std::istream& in) {
    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error("load_cache: empty file");
    int weight = 0;
    long long n_max = 0;
    if (std::sscanf(header.c_str(), "cuspsum-coeffs v1 weight=%d n_max=%lld",
                    &weight, &n_max) != 2 || weight <= 0 || weight % 2 != 0 ||
        n_max < 1)
        throw std::runtime_error("load_cache: bad header: " + header);

    CoefficientTable t;
    t.weight = weight;
    t.n_max = n_max;
    t.source = TableSource::loaded;
    t.tau.resize(n_max + 1);
    t.a.assign(n_max + 1, 0.0);

    std::string line;
    for (long long n = 1; n <= n_max; ++n) {
        if (!std::getline(in, line))
            throw std::runtime_error("load_cache: truncated at n=" + std::to_string(n));
        size_t c1 = line.find(',');
        size_t c2 = (c1 == std::string::npos) ? std::string::npos
                                              : line.find(',', c1 + 1);
        if (c2 == std::string::npos)
            throw std::runtime_error("load_cache: malformed line: " + line);
        long long idx = std::stoll(line.substr(0, c1));
        if (idx != n)
            throw std::runtime_error("load_cache: out-of-order index " +
                                     std::to_string(idx));
        if (t.tau[n].set_str(line.substr(c1 + 1, c2 - c1 - 1), 10) != 0)
            throw std::runtime_error("load_cache: bad integer on line: " + line);
        t.a[n] = std::strtod(line.c_str() + c2 + 1, nullptr);
    }
    return t;
}

CoefficientTable load_cache(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_cache: cannot open " + path.string());
    return load_cache(in);
}

}  // namespace cuspsum
