#pragma once

#include "coprime/gf.hpp"
#include "coprime/rat.hpp"

#include <utility>

namespace coprime {

/// A univariate polynomial over a finite field, in the indeterminate x.
///
/// Coefficients are element ids of the owning field, stored constant term
/// first with no trailing zeros; the zero polynomial stores nothing and has
/// degree -1. Value semantics throughout.
class Poly {
 public:
  explicit Poly(FieldPtr field);  // zero
  Poly(FieldPtr field, std::vector<std::uint32_t> coeffs);

  static Poly zero(FieldPtr field) { return Poly(std::move(field)); }
  static Poly one(FieldPtr field) { return constant(std::move(field), 1); }
  static Poly constant(FieldPtr field, std::uint32_t c);
  static Poly monomial(FieldPtr field, std::uint32_t c, int deg);

  const FieldPtr& field() const { return field_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

  /// Coefficient of x^i (zero beyond the degree).
  std::uint32_t coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : 0;
  }
  std::uint32_t leading() const;  // throws on the zero polynomial
  const std::vector<std::uint32_t>& coeffs() const { return coeffs_; }

  std::uint32_t eval(std::uint32_t point) const;
  std::string str() const;  // e.g. "x^2+2x+1", "0"

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(std::uint32_t scalar) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

 private:
  void trim();
  void require_same(const Poly& o) const;
  FieldPtr field_;
  std::vector<std::uint32_t> coeffs_;
};

/// Quotient and remainder with deg r < deg b; throws std::domain_error if b
/// is zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // exact or truncating quotient

/// Scale a nonzero polynomial by the inverse of its leading coefficient.
Poly monic(const Poly& f);

/// Monic greatest common divisor; gcd(f, 0) = monic(f). Throws if both are
/// zero.
Poly gcd_monic(const Poly& a, const Poly& b);

/// Monic least common multiple; zero if either argument is zero.
Poly lcm_monic(const Poly& a, const Poly& b);

/// Monic gcd of a whole family (at least one entry must be nonzero).
Poly setwise_gcd(const std::vector<Poly>& fs);

Poly derivative(const Poly& f);

/// True when f has no repeated irreducible factor, i.e. gcd(f, f') is
/// constant. Requires f nonzero.
bool is_squarefree(const Poly& f);

/// Degree cap for the irreducibility sieve and distinct-factor splitting.
inline constexpr int kMaxFactorDegree = 16;

/// Trial-division irreducibility for 1 <= deg f <= kMaxFactorDegree.
bool is_irreducible(const Poly& f);

/// All monic irreducible polynomials of the given degree, in index order
/// (memoised per field).
const std::vector<Poly>& irreducible_polys(const FieldPtr& field, int deg);

/// The distinct monic irreducible factors of a monic nonzero f, without
/// multiplicities, sorted by (degree, index); omega() is their count.
struct FactorSet {
  std::vector<Poly> factors;
  std::size_t omega() const { return factors.size(); }
};
FactorSet distinct_factors(const Poly& f);

/// Number-theoretic Mobius function.
int mobius(std::uint64_t n);

/// The number of monic irreducible polynomials of degree j over a field of
/// order q: (1/j) * sum_{d | j} mobius(d) q^{j/d}.
BigInt irreducible_count(unsigned j, const BigInt& q);

/// Every monic polynomial of exactly the given degree, in index order.
/// Throws std::length_error if q^deg exceeds `ceiling`.
std::vector<Poly> monic_polys(const FieldPtr& field, int deg,
                              std::uint64_t ceiling = 1ull << 24);
std::vector<Poly> squarefree_monic_polys(const FieldPtr& field, int deg,
                                         std::uint64_t ceiling = 1ull << 24);

/// The index <-> polynomial bijection used by all enumeration code: index n
/// has base-q digits d0, d1, ... (least significant first) and maps to the
/// polynomial whose x^i coefficient is the element with id d_i. Monic degree-k
/// polynomials thus occupy the index range [q^k, 2 q^k).
Poly index_to_poly(const FieldPtr& field, std::uint64_t n);
std::uint64_t poly_to_index(const Poly& f);

}  // namespace coprime
