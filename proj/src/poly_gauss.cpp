#include "vtwa/poly_gauss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vtwa {

namespace {

void require_same_envelope(const PolyGauss& a, const PolyGauss& b, const char* op) {
    if (!(a.envelope() == b.envelope()))
        throw AlgebraError(std::string(op) + ": operands use different Gaussian envelopes");
}

double max_abs(const PolyGauss::Coeffs& c) {
    double m = 0.0;
    for (const auto& [mono, v] : c) m = std::max(m, std::abs(v));
    return m;
}

void check_degree(const Monomial& m) {
    if (m.x_pow + m.p_pow > PolyGauss::kMaxDegree)
        throw AlgebraError("PolyGauss: total degree exceeds " +
                           std::to_string(PolyGauss::kMaxDegree));
}

}  // namespace

PolyGauss::PolyGauss(GaussianWignerState envelope, int k) : envelope_(envelope), k_(k) {
    if (k < 0) throw AlgebraError("PolyGauss: envelope power must be >= 0");
}

PolyGauss::PolyGauss(GaussianWignerState envelope, int k, Coeffs coeffs)
    : PolyGauss(envelope, k) {
    coeffs_ = std::move(coeffs);
    for (const auto& [m, v] : coeffs_) {
        if (m.x_pow < 0 || m.p_pow < 0) throw AlgebraError("PolyGauss: negative exponent");
        check_degree(m);
    }
    normalize(max_abs(coeffs_));
}

PolyGauss PolyGauss::constant(const GaussianWignerState& env, double c, int k) {
    return monomial(env, 0, 0, c, k);
}

PolyGauss PolyGauss::monomial(const GaussianWignerState& env, int x_pow, int p_pow, double c,
                              int k) {
    return PolyGauss(env, k, {{Monomial{x_pow, p_pow}, c}});
}

PolyGauss PolyGauss::gaussian(const GaussianWignerState& env) {
    return constant(env, 1.0 / (2.0 * kPi * env.sigma_x() * env.sigma_p()), 1);
}

PolyGauss PolyGauss::quadratic_form(const GaussianWignerState& env) {
    const double ax = 0.5 / (env.sigma_x() * env.sigma_x());
    const double ap = 0.5 / (env.sigma_p() * env.sigma_p());
    const double x0 = env.x0();
    const double p0 = env.p0();
    Coeffs c;
    c[{2, 0}] += ax;
    c[{1, 0}] += -2.0 * ax * x0;
    c[{0, 2}] += ap;
    c[{0, 1}] += -2.0 * ap * p0;
    c[{0, 0}] += ax * x0 * x0 + ap * p0 * p0;
    return PolyGauss(env, 0, std::move(c));
}

double PolyGauss::coeff(int x_pow, int p_pow) const {
    const auto it = coeffs_.find({x_pow, p_pow});
    return it == coeffs_.end() ? 0.0 : it->second;
}

int PolyGauss::degree() const {
    int d = -1;
    for (const auto& [m, v] : coeffs_) d = std::max(d, m.x_pow + m.p_pow);
    return d;
}

int PolyGauss::p_degree() const {
    int d = -1;
    for (const auto& [m, v] : coeffs_) d = std::max(d, m.p_pow);
    return d;
}

void PolyGauss::normalize(double scale) {
    const double cut = kPruneRelative * scale;
    std::erase_if(coeffs_, [&](const auto& kv) { return std::abs(kv.second) <= cut; });
}

PolyGauss PolyGauss::operator-() const { return *this * -1.0; }

PolyGauss PolyGauss::operator*(double s) const {
    PolyGauss r(envelope_, k_);
    if (s == 0.0) return r;
    for (const auto& [m, v] : coeffs_) r.coeffs_[m] = s * v;
    return r;
}

PolyGauss pg_add(const PolyGauss& a, const PolyGauss& b) {
    require_same_envelope(a, b, "pg_add");
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    if (a.k_ != b.k_) throw AlgebraError("pg_add: envelope powers differ");
    PolyGauss r = a;
    for (const auto& [m, v] : b.coeffs_) r.coeffs_[m] += v;
    r.normalize(std::max(max_abs(a.coeffs_), max_abs(b.coeffs_)));
    return r;
}

PolyGauss pg_sub(const PolyGauss& a, const PolyGauss& b) { return pg_add(a, -b); }

PolyGauss pg_mul(const PolyGauss& a, const PolyGauss& b) {
    require_same_envelope(a, b, "pg_mul");
    PolyGauss r(a.envelope_, a.k_ + b.k_);
    for (const auto& [ma, va] : a.coeffs_) {
        for (const auto& [mb, vb] : b.coeffs_) {
            const Monomial m{ma.x_pow + mb.x_pow, ma.p_pow + mb.p_pow};
            check_degree(m);
            r.coeffs_[m] += va * vb;
        }
    }
    r.normalize(max_abs(a.coeffs_) * max_abs(b.coeffs_));
    return r;
}

// d/dx (P e^{-kQ}) = (dP/dx - k P dQ/dx) e^{-kQ}, dQ/dx = (x - x0)/sx^2.
PolyGauss pg_dx(const PolyGauss& a) {
    PolyGauss r(a.envelope_, a.k_);
    const double inv = 1.0 / (a.envelope_.sigma_x() * a.envelope_.sigma_x());
    const double kk = static_cast<double>(a.k_);
    double scale = 0.0;
    for (const auto& [m, v] : a.coeffs_) {
        if (m.x_pow > 0) r.coeffs_[{m.x_pow - 1, m.p_pow}] += m.x_pow * v;
        if (a.k_ > 0) {
            const Monomial up{m.x_pow + 1, m.p_pow};
            check_degree(up);
            r.coeffs_[up] += -kk * inv * v;
            r.coeffs_[m] += kk * inv * a.envelope_.x0() * v;
        }
        scale = std::max(scale, std::abs(v) * std::max({1.0 * m.x_pow, kk * inv,
                                                         kk * inv * std::abs(a.envelope_.x0())}));
    }
    r.normalize(scale);
    return r;
}

PolyGauss pg_dp(const PolyGauss& a) {
    PolyGauss r(a.envelope_, a.k_);
    const double inv = 1.0 / (a.envelope_.sigma_p() * a.envelope_.sigma_p());
    const double kk = static_cast<double>(a.k_);
    double scale = 0.0;
    for (const auto& [m, v] : a.coeffs_) {
        if (m.p_pow > 0) r.coeffs_[{m.x_pow, m.p_pow - 1}] += m.p_pow * v;
        if (a.k_ > 0) {
            const Monomial up{m.x_pow, m.p_pow + 1};
            check_degree(up);
            r.coeffs_[up] += -kk * inv * v;
            r.coeffs_[m] += kk * inv * a.envelope_.p0() * v;
        }
        scale = std::max(scale, std::abs(v) * std::max({1.0 * m.p_pow, kk * inv,
                                                         kk * inv * std::abs(a.envelope_.p0())}));
    }
    r.normalize(scale);
    return r;
}

PolyGauss poisson(const PolyGauss& a, const PolyGauss& b) {
    require_same_envelope(a, b, "poisson");
    const PolyGauss lhs = pg_mul(pg_dx(a), pg_dp(b));
    const PolyGauss rhs = pg_mul(pg_dp(a), pg_dx(b));
    if (lhs.is_zero() && rhs.is_zero()) return PolyGauss(a.envelope(), a.k() + b.k());
    return pg_sub(lhs, rhs);
}

PolyGauss quartic_hamiltonian(const QuarticModel& model, const GaussianWignerState& env) {
    return PolyGauss(env, 0, {{{0, 2}, 0.5}, {{2, 0}, 0.5}, {{4, 0}, 0.25 * model.g()}});
}

PolyGauss moyal_quartic(const QuarticModel& model, const PolyGauss& f) {
    const PolyGauss h = quartic_hamiltonian(model, f.envelope());
    const PolyGauss classical = poisson(h, f);
    if (model.g() == 0.0) return classical;
    const PolyGauss d3 = pg_dp(pg_dp(pg_dp(f)));
    const PolyGauss correction =
        pg_mul(PolyGauss::monomial(f.envelope(), 1, 0, -0.25 * model.g()), d3);
    if (correction.is_zero()) return classical;
    if (classical.is_zero()) return correction;
    return pg_add(classical, correction);
}

double pg_eval(const PolyGauss& a, PhasePoint pt) {
    if (a.is_zero()) return 0.0;
    double poly = 0.0;
    for (const auto& [m, v] : a.coeffs())
        poly += v * std::pow(pt.x, m.x_pow) * std::pow(pt.p, m.p_pow);
    if (a.k() == 0) return poly;
    return poly * std::exp(-static_cast<double>(a.k()) * a.envelope().quadratic_form(pt));
}

double pg_max_abs_coeff(const PolyGauss& a) { return max_abs(a.coeffs()); }

double pg_relative_residual(const PolyGauss& a, const PolyGauss& b) {
    const double scale = std::max(pg_max_abs_coeff(a), pg_max_abs_coeff(b));
    if (scale == 0.0) return 0.0;
    return pg_max_abs_coeff(pg_sub(a, b)) / scale;
}

}  // namespace vtwa
