/// @file poly_gauss.hpp
/// @brief Exact algebra of phase-space functions P(x,p) exp(-k Q(x,p)).
///
/// Q is the quadratic form of a fixed Gaussian envelope. With a shared
/// envelope this family is closed under sums, products, partial derivatives
/// and hence under Poisson brackets and the (finite) quartic Moyal bracket,
/// which lets identities between brackets be checked coefficient by
/// coefficient instead of pointwise.

#ifndef VTWA_POLY_GAUSS_HPP
#define VTWA_POLY_GAUSS_HPP

#include <compare>
#include <map>
#include <stdexcept>

#include "vtwa/phase_space.hpp"

namespace vtwa {

/// Exponent pair of x^a p^b.
struct Monomial {
    int x_pow = 0;
    int p_pow = 0;
    auto operator<=>(const Monomial&) const = default;
};

class AlgebraError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

class PolyGauss {
  public:
    static constexpr int kMaxDegree = 16;
    /// Coefficients below this fraction of the operands' scale are dropped.
    static constexpr double kPruneRelative = 1e-14;

    using Coeffs = std::map<Monomial, double>;

    /// Zero element with envelope power k.
    explicit PolyGauss(GaussianWignerState envelope, int k = 0);
    PolyGauss(GaussianWignerState envelope, int k, Coeffs coeffs);

    static PolyGauss constant(const GaussianWignerState& env, double c, int k = 0);
    static PolyGauss monomial(const GaussianWignerState& env, int x_pow, int p_pow,
                              double c = 1.0, int k = 0);
    /// The Wigner function of the envelope state itself, N exp(-Q).
    static PolyGauss gaussian(const GaussianWignerState& env);
    /// Q(x,p) written out as a polynomial (k = 0).
    static PolyGauss quadratic_form(const GaussianWignerState& env);

    const GaussianWignerState& envelope() const { return envelope_; }
    int k() const { return k_; }
    const Coeffs& coeffs() const { return coeffs_; }
    double coeff(int x_pow, int p_pow) const;
    bool is_zero() const { return coeffs_.empty(); }
    /// Highest total degree a + b; -1 for the zero element.
    int degree() const;
    int p_degree() const;

    PolyGauss operator-() const;
    PolyGauss operator*(double s) const;
    friend PolyGauss operator*(double s, const PolyGauss& a) { return a * s; }

  private:
    void normalize(double scale);

    GaussianWignerState envelope_;
    int k_;
    Coeffs coeffs_;

    friend PolyGauss pg_add(const PolyGauss&, const PolyGauss&);
    friend PolyGauss pg_mul(const PolyGauss&, const PolyGauss&);
    friend PolyGauss pg_dx(const PolyGauss&);
    friend PolyGauss pg_dp(const PolyGauss&);
};

/// Requires equal envelopes and equal k (unless one side is zero).
PolyGauss pg_add(const PolyGauss& a, const PolyGauss& b);
PolyGauss pg_sub(const PolyGauss& a, const PolyGauss& b);
/// Polynomial product; envelope powers add.
PolyGauss pg_mul(const PolyGauss& a, const PolyGauss& b);
PolyGauss pg_dx(const PolyGauss& a);
PolyGauss pg_dp(const PolyGauss& a);

inline PolyGauss operator+(const PolyGauss& a, const PolyGauss& b) { return pg_add(a, b); }
inline PolyGauss operator-(const PolyGauss& a, const PolyGauss& b) { return pg_sub(a, b); }
inline PolyGauss operator*(const PolyGauss& a, const PolyGauss& b) { return pg_mul(a, b); }

/// {a,b} = da/dx db/dp - da/dp db/dx.
PolyGauss poisson(const PolyGauss& a, const PolyGauss& b);

/// The quartic Hamiltonian as a k = 0 element over the given envelope.
PolyGauss quartic_hamiltonian(const QuarticModel& model, const GaussianWignerState& env);

/// Moyal bracket {H, f}_M for the quartic H. The Moyal series terminates:
/// {H,f}_M = {H,f} - (g x / 4) d^3 f / dp^3.
PolyGauss moyal_quartic(const QuarticModel& model, const PolyGauss& f);

double pg_eval(const PolyGauss& a, PhasePoint pt);
double pg_max_abs_coeff(const PolyGauss& a);

/// max|a - b| / max(max|a|, max|b|); 0 when both vanish.
double pg_relative_residual(const PolyGauss& a, const PolyGauss& b);

}  // namespace vtwa

#endif  // VTWA_POLY_GAUSS_HPP
