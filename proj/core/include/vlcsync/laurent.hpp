#pragma once

// Laurent polynomials with real coefficients. Every distribution of the
// symbol-count discrepancy is carried by one of these: exponent i holds the
// probability of outcome i.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vlcsync {

/// Coefficients below this magnitude are dropped and counted as lost mass.
inline constexpr double kUnderflowCutoff = 1e-300;

/// Finite Laurent polynomial sum_i c_i y^i.
///
/// Storage is a dense coefficient run starting at `min_exponent()`; the run is
/// trimmed so both ends are nonzero. An optional symmetric window [-D, D]
/// confines products: terms falling outside it, together with underflowed
/// coefficients, are accumulated into `lost_mass()` (absolute values), which
/// propagates through `add`, `scale` and `mul`.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(std::initializer_list<std::pair<int, double>> terms);

  static LaurentPoly monomial(int exponent, double coeff = 1.0);
  /// The multiplicative identity, 1·y^0.
  static LaurentPoly unit() { return monomial(0, 1.0); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Exponent range of nonzero terms; both 0 for the zero polynomial.
  int min_exponent() const noexcept { return offset_; }
  int max_exponent() const noexcept { return offset_ + static_cast<int>(coeffs_.size()) - 1; }
  double coeff(int exponent) const noexcept;

  /// Nonzero terms in increasing exponent order.
  std::vector<std::pair<int, double>> terms() const;
  template <typename F>
  void for_each_term(F&& f) const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0.0) f(offset_ + static_cast<int>(i), coeffs_[i]);
    }
  }

  void add_term(int exponent, double coeff);

  const std::optional<int>& window() const noexcept { return window_; }
  /// Confines this polynomial to [-D, D], moving any outside terms to lost mass.
  void set_window(int half_width);
  double lost_mass() const noexcept { return lost_; }

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator*=(double s);

  friend LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q);
  friend LaurentPoly scale(const LaurentPoly& p, double s);
  /// Full convolution; truncated to the narrower window of the two operands.
  friend LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q);
  friend LaurentPoly fold_mod(const LaurentPoly& p, int modulus);

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.offset_ == b.offset_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void ensure_range(int lo, int hi);
  void normalize();

  int offset_ = 0;
  std::vector<double> coeffs_;
  std::optional<int> window_;
  double lost_ = 0.0;
};

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly scale(const LaurentPoly& p, double s);
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q);
inline LaurentPoly operator+(const LaurentPoly& p, const LaurentPoly& q) { return add(p, q); }
inline LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q) { return mul(p, q); }
inline LaurentPoly operator*(const LaurentPoly& p, double s) { return scale(p, s); }
inline LaurentPoly operator*(double s, const LaurentPoly& p) { return scale(p, s); }

/// e-fold convolution power by iterated multiplication; power(p, 0) is the unit.
LaurentPoly power(const LaurentPoly& p, unsigned e);

/// Sum of coefficients.
double mass(const LaurentPoly& p);
/// Moments of the exponent under the (normalized) coefficient weights. Throw ZeroMass.
double mean(const LaurentPoly& p);
double variance(const LaurentPoly& p);

/// Residue distribution: exponent r in [0, T) collects every exponent ≡ r (mod T).
LaurentPoly fold_mod(const LaurentPoly& p, int modulus);

/// Tolerance on |mass - 1| accepted by `entropy_bits`, which renormalizes internally.
inline constexpr double kEntropyMassTolerance = 1e-6;

/// Shannon entropy (base 2) of the coefficients, 0·log 0 = 0. Throws
/// InvalidArgument when the mass differs from one by more than
/// kEntropyMassTolerance.
double entropy_bits(const LaurentPoly& p);

/// Smallest d >= 1 with sum_{|i| > d} c_i < eta. Throws NotConverged when the
/// tracked lost mass alone could exceed eta, so no finite d can be certified.
int pseudo_degree(const LaurentPoly& p, double eta);

/// Human-readable form such as "0.0625y^-1 + 0.8352 + 0.1023y".
std::string to_string(const LaurentPoly& p, int precision = 6);

/// Lines of "exponent<TAB>coefficient" in increasing exponent order.
std::string dump_terms(const LaurentPoly& p);

}  // namespace vlcsync
