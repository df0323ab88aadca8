#include "coprime/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace coprime {

Poly::Poly(FieldPtr field) : field_(std::move(field)) {
  if (!field_) throw std::invalid_argument("null field");
}

Poly::Poly(FieldPtr field, std::vector<std::uint32_t> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (!field_) throw std::invalid_argument("null field");
  for (std::uint32_t c : coeffs_)
    if (c >= field_->order()) throw std::out_of_range("coefficient id out of range");
  trim();
}

Poly Poly::constant(FieldPtr field, std::uint32_t c) {
  return Poly(std::move(field), std::vector<std::uint32_t>{c});
}

Poly Poly::monomial(FieldPtr field, std::uint32_t c, int deg) {
  if (deg < 0) throw std::invalid_argument("negative degree");
  std::vector<std::uint32_t> v(deg + 1, 0);
  v[deg] = c;
  return Poly(std::move(field), std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

void Poly::require_same(const Poly& o) const {
  if (!field_->same_field(*o.field_))
    throw std::invalid_argument("polynomials over different fields");
}

std::uint32_t Poly::leading() const {
  if (coeffs_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

std::uint32_t Poly::eval(std::uint32_t point) const {
  const Field& F = *field_;
  std::uint32_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = F.add(F.mul(acc, point), *it);
  return acc;
}

Poly Poly::operator+(const Poly& o) const {
  require_same(o);
  const Field& F = *field_;
  std::vector<std::uint32_t> out(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return Poly(field_, std::move(out));
}

Poly Poly::operator-(const Poly& o) const {
  require_same(o);
  const Field& F = *field_;
  std::vector<std::uint32_t> out(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return Poly(field_, std::move(out));
}

Poly Poly::operator*(const Poly& o) const {
  require_same(o);
  if (is_zero() || o.is_zero()) return Poly(field_);
  const Field& F = *field_;
  std::vector<std::uint32_t> out(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      out[i + j] = F.add(out[i + j], F.mul(coeffs_[i], o.coeffs_[j]));
  }
  return Poly(field_, std::move(out));
}

Poly Poly::operator*(std::uint32_t scalar) const {
  const Field& F = *field_;
  std::vector<std::uint32_t> out = coeffs_;
  for (auto& c : out) c = F.mul(c, scalar);
  return Poly(field_, std::move(out));
}

bool Poly::operator==(const Poly& o) const {
  return field_->same_field(*o.field_) && coeffs_ == o.coeffs_;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  const Field& F = *field_;
  std::string out;
  for (int d = degree(); d >= 0; --d) {
    const std::uint32_t c = coeff(d);
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    std::string cs = F.element_str(c);
    if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    if (d == 0) {
      out += cs;
    } else {
      if (c != 1) out += cs;
      out += d == 1 ? "x" : "x^" + std::to_string(d);
    }
  }
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (!a.field()->same_field(*b.field()))
    throw std::invalid_argument("polynomials over different fields");
  const Field& F = *a.field();
  if (a.degree() < b.degree()) return {Poly(a.field()), a};
  std::vector<std::uint32_t> rem = a.coeffs();
  std::vector<std::uint32_t> quo(a.degree() - b.degree() + 1, 0);
  const std::uint32_t lead_inv = F.inv(b.leading());
  for (int d = a.degree(); d >= b.degree(); --d) {
    const std::uint32_t r = rem[d];
    if (r == 0) continue;
    const std::uint32_t factor = F.mul(r, lead_inv);
    quo[d - b.degree()] = factor;
    for (int j = 0; j <= b.degree(); ++j)
      rem[d - b.degree() + j] = F.sub(rem[d - b.degree() + j], F.mul(factor, b.coeff(j)));
  }
  return {Poly(a.field(), std::move(quo)), Poly(a.field(), std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

Poly monic(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("cannot normalise the zero polynomial");
  if (f.is_monic()) return f;
  return f * f.field()->inv(f.leading());
}

Poly gcd_monic(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

Poly lcm_monic(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field());
  return monic((a * b) / gcd_monic(a, b));
}

Poly setwise_gcd(const std::vector<Poly>& fs) {
  if (fs.empty()) throw std::invalid_argument("setwise_gcd of an empty family");
  Poly g = Poly(fs.front().field());
  for (const Poly& f : fs) {
    if (f.is_zero()) continue;
    g = g.is_zero() ? monic(f) : gcd_monic(g, f);
    if (g.is_one()) break;  // cannot shrink further
  }
  if (g.is_zero()) throw std::domain_error("setwise_gcd of an all-zero family");
  return g;
}

Poly derivative(const Poly& f) {
  if (f.degree() < 1) return Poly(f.field());
  const Field& F = *f.field();
  const std::uint32_t p = F.characteristic();
  std::vector<std::uint32_t> out(f.degree(), 0);
  for (int i = 1; i <= f.degree(); ++i) {
    // multiply by i mod p, as repeated addition collapsed to a scalar
    const std::uint32_t n = static_cast<std::uint32_t>(i % p);
    std::uint32_t c = 0;
    for (std::uint32_t r = 0; r < n; ++r) c = F.add(c, f.coeff(i));
    out[i - 1] = c;
  }
  return Poly(f.field(), std::move(out));
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("squarefreeness of zero is undefined");
  if (f.is_constant()) return true;
  return gcd_monic(f, derivative(f)).is_one();
}

namespace {

// Memoised per-field lists of monic irreducibles, keyed by the canonical
// shared Field instance.
std::mutex irr_mu;
std::map<std::pair<const Field*, int>, std::vector<Poly>> irr_cache;

std::vector<Poly> build_irreducibles(const FieldPtr& field, int deg) {
  std::vector<Poly> out;
  for (Poly& f : monic_polys(field, deg)) {
    bool divisible = false;
    for (int d = 1; 2 * d <= deg && !divisible; ++d)
      for (const Poly& g : irreducible_polys(field, d))
        if ((f % g).is_zero()) {
          divisible = true;
          break;
        }
    if (!divisible) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

const std::vector<Poly>& irreducible_polys(const FieldPtr& field, int deg) {
  if (deg < 1 || deg > kMaxFactorDegree)
    throw std::domain_error("irreducible_polys: degree out of supported range");
  {
    std::lock_guard<std::mutex> lock(irr_mu);
    auto it = irr_cache.find({field.get(), deg});
    if (it != irr_cache.end()) return it->second;
  }
  // Build outside the lock; lower-degree lists may be requested recursively.
  std::vector<Poly> built = build_irreducibles(field, deg);
  std::lock_guard<std::mutex> lock(irr_mu);
  return irr_cache.emplace(std::make_pair(field.get(), deg), std::move(built))
      .first->second;
}

bool is_irreducible(const Poly& f) {
  const int n = f.degree();
  if (n < 1) throw std::domain_error("irreducibility needs degree >= 1");
  if (n > kMaxFactorDegree) throw std::domain_error("degree above factoring cap");
  if (n == 1) return true;
  for (int d = 1; 2 * d <= n; ++d)
    for (const Poly& g : irreducible_polys(f.field(), d))
      if ((f % g).is_zero()) return false;
  return true;
}

FactorSet distinct_factors(const Poly& f) {
  if (f.is_zero() || !f.is_monic()) throw std::domain_error("need a monic nonzero polynomial");
  if (f.degree() > kMaxFactorDegree) throw std::domain_error("degree above factoring cap");
  FactorSet out;
  Poly rem = f;
  for (int d = 1; 2 * d <= rem.degree(); ++d) {
    for (const Poly& g : irreducible_polys(f.field(), d)) {
      if (rem.degree() < 2 * d) break;
      auto [q, r] = divmod(rem, g);
      if (!r.is_zero()) continue;
      out.factors.push_back(g);
      do {  // strip the full power of g
        rem = std::move(q);
        std::tie(q, r) = divmod(rem, g);
      } while (r.is_zero());
    }
  }
  if (rem.degree() >= 1) out.factors.push_back(rem);  // irreducible leftover
  return out;
}

int mobius(std::uint64_t n) {
  if (n == 0) throw std::domain_error("mobius(0) is undefined");
  int sign = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    n /= d;
    if (n % d == 0) return 0;  // square factor
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

BigInt irreducible_count(unsigned j, const BigInt& q) {
  if (j == 0) throw std::domain_error("irreducible_count needs j >= 1");
  BigInt sum = 0;
  for (unsigned d = 1; d <= j; ++d) {
    if (j % d != 0) continue;
    sum += mobius(d) * ipow(q, j / d);
  }
  if (sum % j != 0) throw std::logic_error("irreducible count was not an integer");
  return sum / j;
}

std::vector<Poly> monic_polys(const FieldPtr& field, int deg, std::uint64_t ceiling) {
  if (deg < 0) throw std::invalid_argument("negative degree");
  const std::uint64_t q = field->order();
  std::uint64_t count = 1;
  for (int i = 0; i < deg; ++i) {
    if (count > ceiling / q) throw std::length_error("monic enumeration exceeds ceiling");
    count *= q;
  }
  std::vector<Poly> out;
  out.reserve(count);
  std::vector<std::uint32_t> digits(deg + 1, 0);
  digits[deg] = 1;
  for (std::uint64_t n = 0; n < count; ++n) {
    out.emplace_back(field, digits);
    for (int i = 0; i < deg; ++i) {  // odometer over the non-leading digits
      if (++digits[i] < q) break;
      digits[i] = 0;
    }
  }
  return out;
}

std::vector<Poly> squarefree_monic_polys(const FieldPtr& field, int deg,
                                         std::uint64_t ceiling) {
  std::vector<Poly> out;
  for (Poly& f : monic_polys(field, deg, ceiling))
    if (is_squarefree(f)) out.push_back(std::move(f));
  return out;
}

Poly index_to_poly(const FieldPtr& field, std::uint64_t n) {
  const std::uint64_t q = field->order();
  std::vector<std::uint32_t> digits;
  while (n != 0) {
    digits.push_back(static_cast<std::uint32_t>(n % q));
    n /= q;
  }
  return Poly(field, std::move(digits));
}

std::uint64_t poly_to_index(const Poly& f) {
  const std::uint64_t q = f.field()->order();
  std::uint64_t n = 0;
  for (int i = f.degree(); i >= 0; --i) {
    if (n > (UINT64_MAX - f.coeff(i)) / q)
      throw std::overflow_error("polynomial index exceeds 64 bits");
    n = n * q + f.coeff(i);
  }
  return n;
}

}  // namespace coprime
