#include "coprime/gf.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace coprime {
namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// --- dense polynomials over Z/p, used only to sieve for a field modulus ---

using ZpPoly = std::vector<std::uint32_t>;  // coeffs, constant term first

int zp_deg(const ZpPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

// Remainder of a by monic b, in place.
void zp_mod(ZpPoly& a, const ZpPoly& b, std::uint32_t p) {
  const int db = zp_deg(b);
  for (int da = zp_deg(a); da >= db; da = zp_deg(a)) {
    const std::uint64_t c = a[da];
    for (int j = 0; j <= db; ++j) {
      const std::uint64_t sub = c * b[j] % p;
      a[da - db + j] = static_cast<std::uint32_t>((a[da - db + j] + p - sub) % p);
    }
  }
}

bool zp_divides(const ZpPoly& d, const ZpPoly& f, std::uint32_t p) {
  ZpPoly r = f;
  zp_mod(r, d, p);
  return zp_deg(r) < 0;
}

// Trial division by every monic polynomial of degree 1..deg(f)/2.
bool zp_irreducible(const ZpPoly& f, std::uint32_t p) {
  const int n = zp_deg(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  for (int d = 1; 2 * d <= n; ++d) {
    ZpPoly div(d + 1, 0);
    div[d] = 1;
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t m = 0; m < count; ++m) {
      std::uint64_t v = m;
      for (int i = 0; i < d; ++i) {
        div[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      if (zp_divides(div, f, p)) return false;
    }
  }
  return true;
}

// First irreducible monic degree-k polynomial, scanning coefficient vectors
// (c0, ..., c_{k-1}) in lexicographic order with c0 most significant.
ZpPoly find_modulus(std::uint32_t p, std::uint32_t k) {
  ZpPoly f(k + 1, 0);
  f[k] = 1;
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t m = 0; m < count; ++m) {
    std::uint64_t v = m;
    for (int i = static_cast<int>(k) - 1; i >= 0; --i) {
      f[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (zp_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible modulus found");  // unreachable
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  q_ = 1;
  for (std::uint32_t i = 0; i < k_; ++i) q_ *= p_;
  if (q_ <= 256) {
    const std::size_t q = static_cast<std::size_t>(q_);
    add_table_.resize(q * q);
    mul_table_.resize(q * q);
    neg_table_.resize(q);
    inv_table_.assign(q, 0);
    for (std::uint32_t a = 0; a < q; ++a) {
      neg_table_[a] = static_cast<std::uint16_t>(neg_generic(a));
      for (std::uint32_t b = 0; b < q; ++b) {
        add_table_[a * q + b] = static_cast<std::uint16_t>(add_generic(a, b));
        mul_table_[a * q + b] = static_cast<std::uint16_t>(mul_generic(a, b));
      }
    }
    // a^{q-2} inverts every nonzero a; tables are ready for pow() by now.
    for (std::uint32_t a = 1; a < q; ++a)
      inv_table_[a] = static_cast<std::uint16_t>(pow(a, q_ - 2));
  }
}

void Field::check(std::uint32_t a) const {
  if (a >= q_) throw std::out_of_range("element id out of range for this field");
}

std::uint32_t Field::add_generic(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) {
    std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<std::uint32_t>(s >= q_ ? s - q_ : s);
  }
  if (p_ == 2) return a ^ b;
  std::uint32_t out = 0, mult = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint32_t da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    std::uint32_t s = da + db;
    if (s >= p_) s -= p_;
    out += s * mult;
    mult *= p_;
  }
  return out;
}

std::uint32_t Field::neg_generic(std::uint32_t a) const {
  if (k_ == 1) return a == 0 ? 0 : static_cast<std::uint32_t>(q_ - a);
  if (p_ == 2) return a;
  std::uint32_t out = 0, mult = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    std::uint32_t d = a % p_;
    a /= p_;
    out += (d == 0 ? 0 : p_ - d) * mult;
    mult *= p_;
  }
  return out;
}

std::uint32_t Field::mul_generic(std::uint32_t a, std::uint32_t b) const {
  if (k_ == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % q_);
  // Schoolbook product of the coefficient vectors, then reduce by the modulus.
  std::uint32_t da[32], db[32];
  std::uint64_t prod[63] = {0};
  for (std::uint32_t i = 0; i < k_; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < k_; ++j)
      prod[i + j] += static_cast<std::uint64_t>(da[i]) * db[j];
  }
  for (int i = 2 * static_cast<int>(k_) - 2; i >= static_cast<int>(k_); --i) {
    const std::uint64_t c = prod[i] % p_;
    prod[i] = 0;
    if (c == 0) continue;
    // x^k == -(m0 + m1 x + ... + m_{k-1} x^{k-1})
    for (std::uint32_t j = 0; j < k_; ++j)
      prod[i - k_ + j] += c * (p_ - modulus_[j] % p_);
  }
  std::uint32_t out = 0, mult = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += static_cast<std::uint32_t>(prod[i] % p_) * mult;
    mult *= p_;
  }
  return out;
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
  check(a);
  check(b);
  if (!add_table_.empty()) return add_table_[a * q_ + b];
  return add_generic(a, b);
}

std::uint32_t Field::neg(std::uint32_t a) const {
  check(a);
  if (!neg_table_.empty()) return neg_table_[a];
  return neg_generic(a);
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
  check(a);
  check(b);
  if (!mul_table_.empty()) return mul_table_[a * q_ + b];
  return mul_generic(a, b);
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const {
  check(a);
  std::uint32_t acc = 1, b = a;
  while (e != 0) {
    if (e & 1) acc = mul(acc, b);
    e >>= 1;
    if (e != 0) b = mul(b, b);
  }
  return acc;
}

std::uint32_t Field::inv(std::uint32_t a) const {
  check(a);
  if (a == 0) throw std::domain_error("inverse of zero");
  if (!inv_table_.empty()) return inv_table_[a];
  return pow(a, q_ - 2);
}

std::uint32_t Field::div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

std::vector<std::uint32_t> Field::element_coeffs(std::uint32_t a) const {
  check(a);
  std::vector<std::uint32_t> c(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

std::uint32_t Field::element_from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (c.size() != k_) throw std::invalid_argument("coefficient vector has wrong length");
  std::uint32_t out = 0, mult = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (c[i] >= p_) throw std::out_of_range("coefficient out of range");
    out += c[i] * mult;
    mult *= p_;
  }
  return out;
}

std::vector<std::uint32_t> Field::elements() const {
  std::vector<std::uint32_t> e(q_);
  for (std::uint64_t i = 0; i < q_; ++i) e[i] = static_cast<std::uint32_t>(i);
  return e;
}

std::string Field::element_str(std::uint32_t a) const {
  check(a);
  if (k_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  const auto c = element_coeffs(a);
  std::string out;
  for (int d = static_cast<int>(k_) - 1; d >= 0; --d) {
    if (c[d] == 0) continue;
    if (!out.empty()) out += "+";
    if (d == 0) {
      out += std::to_string(c[d]);
    } else {
      if (c[d] != 1) out += std::to_string(c[d]);
      out += d == 1 ? "z" : "z^" + std::to_string(d);
    }
  }
  return out;
}

bool Field::same_field(const Field& other) const {
  return this == &other ||
         (p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_);
}

FieldPtr build_field(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (k == 0) throw std::invalid_argument("extension degree must be positive");
  long double size = 1;
  for (std::uint32_t i = 0; i < k; ++i) size *= p;
  if (size > static_cast<long double>(Field::kMaxOrder))
    throw std::domain_error("field order exceeds supported maximum");

  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, k}];
  if (!slot) {
    std::vector<std::uint32_t> modulus;
    if (k > 1) modulus = find_modulus(p, k);
    slot = FieldPtr(new Field(p, k, std::move(modulus)));
  }
  return slot;
}

FieldPtr field_of_order(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("field order must be at least 2");
  std::uint64_t p = 2;
  while (q % p != 0) {
    ++p;
    if (p * p > q) {
      p = q;
      break;
    }
  }
  std::uint32_t k = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw std::invalid_argument("field order is not a prime power");
  return build_field(static_cast<std::uint32_t>(p), k);
}

FieldElem::FieldElem(FieldPtr field, std::uint32_t value)
    : field_(std::move(field)), value_(value) {
  if (!field_) throw std::invalid_argument("null field");
  if (value_ >= field_->order()) throw std::out_of_range("element id out of range");
}

void FieldElem::require_same(const FieldElem& o) const {
  if (!field_->same_field(*o.field_))
    throw std::invalid_argument("elements belong to different fields");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  require_same(o);
  return {field_, field_->add(value_, o.value_)};
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  require_same(o);
  return {field_, field_->sub(value_, o.value_)};
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  require_same(o);
  return {field_, field_->mul(value_, o.value_)};
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
  require_same(o);
  return {field_, field_->div(value_, o.value_)};
}

FieldElem FieldElem::operator-() const { return {field_, field_->neg(value_)}; }

FieldElem FieldElem::inv() const { return {field_, field_->inv(value_)}; }

FieldElem FieldElem::pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }

bool FieldElem::operator==(const FieldElem& o) const {
  return field_->same_field(*o.field_) && value_ == o.value_;
}

}  // namespace coprime
