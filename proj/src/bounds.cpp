#include "cuspsum/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cuspsum {

bool exponent_pair_valid(const ExponentPair& e) {
    return e.p > 0.0 && e.p <= 0.5 && e.q >= 0.5 && e.q <= 1.0;
}

namespace {

void require_valid(const ExponentPair& e, const char* who) {
    if (!exponent_pair_valid(e)) {
        std::ostringstream os;
        os << who << ": <" << e.p << "," << e.q
           << "> outside (0,1/2] x [1/2,1]";
        throw std::invalid_argument(os.str());
    }
}

void flag_if(std::vector<std::string>& flags, bool bad, const std::string& msg) {
    if (bad) flags.push_back(msg);
}

}  // namespace

ExponentPair ep_process_A(const ExponentPair& e) {
    require_valid(e, "ep_process_A input");
    ExponentPair r{e.p / (2.0 * e.p + 2.0), (e.p + e.q + 1.0) / (2.0 * e.p + 2.0)};
    require_valid(r, "ep_process_A output");
    return r;
}

ExponentPair ep_process_B(const ExponentPair& e) {
    require_valid(e, "ep_process_B input");
    ExponentPair r{e.q - 0.5, e.p + 0.5};
    require_valid(r, "ep_process_B output");
    return r;
}

double plain_expsum_bound(const ExponentPair& e, double Amp, double M,
                          double Delta) {
    require_valid(e, "plain_expsum_bound");
    if (!(Amp > 0.0)) throw std::invalid_argument("plain_expsum_bound: Amp must be > 0");
    if (!(M >= 1.0) || !(Delta >= 1.0) || !(Delta <= M))
        throw std::invalid_argument("plain_expsum_bound: need M >= 1, 1 <= Delta <= M");
    return std::pow(Amp, e.p) * std::pow(M, e.q - e.p / 2.0) + std::sqrt(M) / Amp;
}

BombieriResult bombieri_check(
    std::span<const std::complex<double>> xi,
    std::span<const std::vector<std::complex<double>>> phis) {
    if (phis.empty())
        throw std::invalid_argument("bombieri_check: need at least one phi");
    const size_t N = xi.size();
    if (N == 0) throw std::invalid_argument("bombieri_check: zero dimension");
    for (const auto& phi : phis)
        if (phi.size() != N)
            throw std::invalid_argument("bombieri_check: dimension mismatch");

    auto inner = [N](std::span<const std::complex<double>> z,
                     std::span<const std::complex<double>> w) {
        std::complex<double> s{0.0, 0.0};
        for (size_t l = 0; l < N; ++l) s += std::conj(z[l]) * w[l];
        return s;
    };

    BombieriResult r{0.0, 0.0};
    double xi_norm2 = 0.0;
    for (auto z : xi) xi_norm2 += std::norm(z);

    const size_t R = phis.size();
    double max_row = 0.0;
    for (size_t i = 0; i < R; ++i) {
        r.lhs += std::norm(inner(xi, phis[i]));
        double row = 0.0;
        for (size_t j = 0; j < R; ++j) row += std::abs(inner(phis[i], phis[j]));
        max_row = std::max(max_row, row);
    }
    r.rhs = xi_norm2 * max_row;
    return r;
}

const char* to_string(Thm1Branch b) {
    switch (b) {
        case Thm1Branch::branch1: return "branch1";
        case Thm1Branch::branch2: return "branch2";
        default: return "not_covered";
    }
}

Thm1Result thm1_rhs(double k, double M, double Delta, double eps_knob) {
    if (!(Delta >= 1.0) || !(Delta <= M))
        throw std::invalid_argument("thm1_rhs: need 1 <= Delta <= M");
    double lower = Delta / std::sqrt(M);             // M^{-1/2} Delta
    double upper = std::pow(M, -0.25) * std::pow(Delta, 2.0 / 3.0);
    if (k <= lower && k <= std::pow(M, 0.25))
        return {Thm1Branch::branch1, k * k * std::pow(M, 2.0 + eps_knob)};
    if (k >= lower && k <= upper)
        return {Thm1Branch::branch2, std::pow(M, 1.0 + eps_knob) * Delta * Delta};
    return {Thm1Branch::not_covered, std::numeric_limits<double>::quiet_NaN()};
}

FlaggedValue thm2_rhs(double k, double M, double Delta, double V,
                      const ExponentPair& e, double delta_knob) {
    require_valid(e, "thm2_rhs");
    FlaggedValue r;
    const double d = delta_knob, p = e.p, q = e.q;
    flag_if(r.flags, V < k * std::pow(M, 2.0 * d), "V below k*M^{2delta}");
    flag_if(r.flags, V > k * std::pow(M, 0.5 + d), "V above k*M^{1/2+delta}");
    flag_if(r.flags,
            V < std::pow(k * Delta, 2.0 / 3.0) * std::pow(M, -1.0 / 3.0 + d),
            "V below k^{2/3}Delta^{2/3}M^{-1/3+delta}");
    flag_if(r.flags, V > Delta * std::pow(M, d), "V above Delta*M^{delta}");

    double t1 = k * k * std::pow(M, 1.0 + 7.0 * d) * Delta * Delta * std::pow(V, -5.0);
    double t2 = std::pow(k, 2.0 * q / p) * std::pow(Delta, 2.0 + 2.0 / p) *
                std::pow(M, 1.0 + q / p + d * (6.0 + 5.0 / p + 2.0 * q / p)) *
                std::pow(V, -2.0 * q / p - 4.0 - 3.0 / p);
    r.value = t1 + t2;
    return r;
}

ThreeTermBound thm3_rhs(const BoundParams& params, const ExponentPair& e) {
    require_valid(e, "thm3_rhs");
    const double a = params.alpha, b = params.beta, g = params.gamma;
    const double A = params.A, V0 = params.V0, k = params.k, M = params.M,
                 D = params.Delta, eps = params.eps_knob;
    const double p = e.p, q = e.q;

    ThreeTermBound r{0.0, 0.0, 0.0, {}};
    const double pointwise = std::pow(k, a) * std::pow(D, b) * std::pow(M, g);
    flag_if(r.flags, !(A >= 2.0), "A below 2");
    flag_if(r.flags, V0 < k, "V0 below k");
    flag_if(r.flags, V0 > pointwise, "V0 above k^alpha Delta^beta M^gamma");
    flag_if(r.flags,
            V0 < std::pow(k * D, 2.0 / 3.0) * std::pow(M, -1.0 / 3.0),
            "V0 below k^{2/3}Delta^{2/3}M^{-1/3}");

    r.main = std::pow(M, 1.0 + eps) * std::pow(V0, A);

    if (A <= 4.0)
        r.Phi = k * k * std::pow(M, 1.0 + eps) * D * D * std::pow(V0, A - 4.0);
    else
        r.Phi = std::pow(k, a * A - 4.0 * a + 2.0) *
                std::pow(D, b * A - 4.0 * b + 2.0) *
                std::pow(M, g * A - 4.0 * g + 1.0 + eps);

    const double split = 2.0 * q / p + 3.0 + 3.0 / p;
    const double prefac = std::pow(k, 2.0 * q / p) * std::pow(D, 2.0 + 2.0 / p) *
                          std::pow(M, 1.0 + q / p + eps);
    if (A <= split)
        r.Psi = prefac * std::pow(V0, A - split);
    else
        r.Psi = prefac * std::pow(pointwise, A - split);
    return r;
}

FlaggedValue thm4_rhs(double k, double M, double A, double eps_knob) {
    FlaggedValue r;
    flag_if(r.flags, !(A >= 11.0), "A below 11");
    flag_if(r.flags, k < std::pow(M, 1.0 / 9.0), "k below M^{1/9}");
    flag_if(r.flags, k > std::pow(M, 7.0 / 18.0), "k above M^{7/18}");
    r.value = k * k *
              std::pow(M, 11.0 / 6.0 + 29.0 * (A - 4.0) / 72.0 + eps_knob);
    return r;
}

Thm5Result thm5_rhs(double M, double Delta, double A, double eps_knob) {
    Thm5Result r{0.0, 0, {}};
    flag_if(r.flags, !(A >= 4.0) || !(A <= 11.0), "A outside [4,11]");
    flag_if(r.flags, Delta < std::pow(M, 0.2), "Delta below M^{1/5}");
    flag_if(r.flags, Delta > std::pow(M, 4.0 / 9.0), "Delta above M^{4/9}");
    if (A == 8.0)
        r.flags.push_back("A=8: low and high case lines overlap");

    const double eps = eps_knob;
    auto first_form = [&] {
        return std::pow(M, A / 11.0 + 1.0 + eps) * std::pow(Delta, 6.0 * A / 11.0);
    };
    if (A <= 8.0) {
        if (Delta <= std::pow(M, 7.0 / 24.0)) {
            r.case_line = 1;
            r.value = first_form();
        } else {
            r.case_line = 2;
            r.value = std::pow(M, A / 4.0 + 1.0 + eps);
        }
    } else {
        if (Delta <= std::pow(M, 4.0 / 9.0 - 11.0 / (9.0 * A))) {
            r.case_line = 3;
            r.value = first_form();
        } else {
            r.case_line = 4;
            r.value = std::pow(M, (A + 1.0) / 3.0 + eps);
        }
    }
    return r;
}

ThreeTermBound longsum_moment_rhs(const BoundParams& params,
                                  const ExponentPair& e) {
    require_valid(e, "longsum_moment_rhs");
    const double a = params.alpha, b = params.beta;
    const double A = params.A, k = params.k, M = params.M,
                 eps = params.eps_knob;
    const double p = e.p, q = e.q;

    ThreeTermBound r{0.0, 0.0, 0.0, {}};
    flag_if(r.flags, q < (p + 1.0) / 2.0, "pair violates q >= (p+1)/2");
    flag_if(r.flags, k > std::pow(M, 0.5 - eps), "k above M^{1/2-eps}");

    r.main = std::pow(k, A / 2.0) * std::pow(M, A / 4.0 + 1.0);

    if (A >= 2.0)
        r.Phi = std::pow(k, a * A + 2.0 * (1.0 - a)) *
                std::pow(M, b * A + (1.0 - 2.0 * b) + eps);
    else
        r.Phi = std::pow(k, A / 2.0 + 1.0) * std::pow(M, A / 4.0 + 0.5 + eps);

    const double split = 1.0 + (1.0 + 2.0 * q) / p;
    if (A >= split)
        r.Psi = std::pow(k, a * A - a - a / p + (1.0 - a) * 2.0 * q / p) *
                std::pow(M, b * A + 1.0 - b - b / p + (1.0 - 2.0 * b) * q / p + eps);
    else
        r.Psi = std::pow(k, A / 2.0 - 0.5 - 1.0 / (2.0 * p) + q / p) *
                std::pow(M, A / 4.0 + 0.75 - 1.0 / (4.0 * p) + q / (2.0 * p) + eps);
    return r;
}

}  // namespace cuspsum
