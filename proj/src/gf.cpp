#include "cardsec/gf.hpp"

#include <string>

namespace cardsec::gf {
namespace {

constexpr std::uint32_t kMaxOrder = 1u << 16;

using Poly = std::vector<std::uint32_t>;  // constant term first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo a monic g over GF(p).
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    std::uint32_t lead = f.back();
    std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i)
      f[shift + i] = (f[shift + i] + (p - lead) * g[i]) % p;
    trim(f);
  }
  return f;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return r;
}

std::uint32_t ipow(std::uint32_t b, std::uint32_t e) {
  std::uint32_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

std::uint32_t FieldSpec::order() const { return ipow(p, k); }

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint32_t q) {
  if (q < 2) return std::nullopt;
  std::uint32_t p = q;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  std::uint32_t k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(p, k);
}

bool is_prime_power(std::uint32_t q) { return prime_power(q).has_value(); }

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    const std::uint32_t count = ipow(p, static_cast<std::uint32_t>(d));
    for (std::uint32_t lower = 0; lower < count; ++lower) {
      Poly g(d + 1, 0);
      g[d] = 1;
      std::uint32_t x = lower;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = x % p;
        x /= p;
      }
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldSpec field_spec(std::uint32_t q) {
  if (q < 2 || q > kMaxOrder)
    throw Error(ErrorCode::OutOfRange, "field order must lie in [2, 65536], got " + std::to_string(q));
  auto pk = prime_power(q);
  if (!pk) throw Error(ErrorCode::NonPrimePower, std::to_string(q) + " is not a prime power");
  auto [p, k] = *pk;
  FieldSpec spec;
  spec.p = p;
  spec.k = k;
  if (k == 1) return spec;
  // Walk lower coefficient vectors in lexicographic order, c_0 most significant.
  const std::uint32_t count = ipow(p, k);
  for (std::uint32_t n = 0; n < count; ++n) {
    Poly f(k + 1, 0);
    f[k] = 1;
    std::uint32_t x = n;
    for (std::uint32_t i = k; i-- > 0;) {
      f[i] = x % p;
      x /= p;
    }
    if (is_irreducible(p, f)) {
      spec.modulus = f;
      return spec;
    }
  }
  throw Error(ErrorCode::UnsupportedParameters, "no irreducible polynomial found");
}

// ---------------------------------------------------------------------------

GaloisField::GaloisField(FieldSpec spec) : spec_(std::move(spec)), q_(spec_.order()) {
  if (!is_prime(spec_.p)) throw Error(ErrorCode::NonPrimePower, "field characteristic not prime");
  if (spec_.k > 1 && !is_irreducible(spec_.p, spec_.modulus))
    throw Error(ErrorCode::InvalidArgument, "field modulus is reducible");

  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    Poly r = poly_mul(coeffs(a), coeffs(b), spec_.p);
    if (spec_.k > 1) r = poly_mod(r, spec_.modulus, spec_.p);
    r.resize(spec_.k, 0);
    return from_coeffs(r);
  };

  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  for (std::uint32_t g = 1; g < q_; ++g) {
    std::uint32_t x = 1;
    std::uint32_t i = 0;
    bool primitive = true;
    do {
      exp_[i] = x;
      x = slow_mul(x, g);
      ++i;
      if (x == 1 && i < q_ - 1) primitive = false;
    } while (primitive && i < q_ - 1);
    if (primitive && x == 1) break;
  }
  for (std::uint32_t i = 0; i < q_ - 1; ++i) log_[exp_[i]] = i;
}

std::uint32_t GaloisField::add(std::uint32_t a, std::uint32_t b) const {
  if (spec_.p == 2) return a ^ b;
  std::uint32_t r = 0;
  std::uint32_t place = 1;
  for (std::uint32_t i = 0; i < spec_.k; ++i) {
    r += ((a % spec_.p + b % spec_.p) % spec_.p) * place;
    a /= spec_.p;
    b /= spec_.p;
    place *= spec_.p;
  }
  return r;
}

std::uint32_t GaloisField::neg(std::uint32_t a) const {
  if (spec_.p == 2) return a;
  std::uint32_t r = 0;
  std::uint32_t place = 1;
  for (std::uint32_t i = 0; i < spec_.k; ++i) {
    r += ((spec_.p - a % spec_.p) % spec_.p) * place;
    a /= spec_.p;
    place *= spec_.p;
  }
  return r;
}

std::uint32_t GaloisField::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t GaloisField::inv(std::uint32_t a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

std::uint32_t GaloisField::pow(std::uint32_t a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    return e == 0 ? 1 : 0;
  }
  const std::int64_t n = q_ - 1;
  std::int64_t r = (static_cast<std::int64_t>(log_[a]) * (e % n)) % n;
  if (r < 0) r += n;
  return exp_[static_cast<std::size_t>(r)];
}

std::vector<std::uint32_t> GaloisField::coeffs(std::uint32_t a) const {
  std::vector<std::uint32_t> c(spec_.k);
  for (auto& x : c) {
    x = a % spec_.p;
    a /= spec_.p;
  }
  return c;
}

std::uint32_t GaloisField::from_coeffs(std::span<const std::uint32_t> c) const {
  std::uint32_t r = 0;
  std::uint32_t place = 1;
  for (std::size_t i = 0; i < spec_.k; ++i) {
    std::uint32_t v = i < c.size() ? c[i] : 0;
    if (v >= spec_.p) throw Error(ErrorCode::InvalidArgument, "coefficient not reduced mod p");
    r += v * place;
    place *= spec_.p;
  }
  return r;
}

FieldElement GaloisField::element(std::uint32_t index) const { return FieldElement(*this, index); }

std::vector<FieldElement> GaloisField::elements() const {
  std::vector<FieldElement> out;
  out.reserve(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out.emplace_back(*this, i);
  return out;
}

std::shared_ptr<const GaloisField> make_field(std::uint32_t q) {
  return std::make_shared<const GaloisField>(field_spec(q));
}

std::vector<FieldElement> subfield_elements(const GaloisField& field, std::uint32_t base) {
  if (!is_prime_power(base) || static_cast<std::uint64_t>(base) * base != field.order())
    throw Error(ErrorCode::InvalidArgument,
                "field order is not the square of the requested prime-power base");
  std::vector<FieldElement> out;
  for (std::uint32_t x = 0; x < field.order(); ++x)
    if (field.pow(x, base) == x) out.push_back(field.element(x));
  return out;
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(const GaloisField& field, std::uint32_t index)
    : field_(&field), index_(index) {
  if (index >= field.order()) throw Error(ErrorCode::OutOfRange, "field element index out of range");
}

std::vector<std::uint32_t> FieldElement::coeffs() const { return field_->coeffs(index_); }

namespace {
void require_same(const FieldElement& a, const FieldElement& b) {
  if (&a.field() != &b.field())
    throw Error(ErrorCode::InvalidArgument, "field elements belong to different fields");
}
}  // namespace

FieldElement FieldElement::operator-() const { return {*field_, field_->neg(index_)}; }
FieldElement FieldElement::inv() const { return {*field_, field_->inv(index_)}; }
FieldElement FieldElement::pow(std::int64_t e) const { return {*field_, field_->pow(index_, e)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return {*a.field_, a.field_->add(a.index_, b.index_)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return {*a.field_, a.field_->sub(a.index_, b.index_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return {*a.field_, a.field_->mul(a.index_, b.index_)};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return {*a.field_, a.field_->div(a.index_, b.index_)};
}

}  // namespace cardsec::gf
