#pragma once

// Finite fields GF(p^k), q = p^k <= 2^16.
//
// Elements are addressed by an index in [0, q): the coefficient vector
// (c_0, ..., c_{k-1}) of the residue polynomial maps to sum c_i p^i. Index 0
// is zero and index 1 is one. Multiplication runs through log/antilog tables
// built from the smallest primitive element.

#include "cardsec/core.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace cardsec::gf {

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  // Monic, constant term first, length k + 1. For k = 1 this is [0, 1].
  std::vector<std::uint32_t> modulus{0, 1};

  std::uint32_t order() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// (p, k) with q = p^k, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint32_t q);
bool is_prime(std::uint32_t n);
bool is_prime_power(std::uint32_t q);

/// Irreducibility over GF(p) by trial division with every monic polynomial of
/// degree <= deg/2. `poly` is monic, constant term first.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly);

/// The lexicographically smallest monic irreducible modulus (coefficients
/// compared constant term first). Throws NonPrimePower or OutOfRange.
FieldSpec field_spec(std::uint32_t q);

class GaloisField;

class FieldElement {
 public:
  FieldElement(const GaloisField& field, std::uint32_t index);

  std::uint32_t index() const noexcept { return index_; }
  const GaloisField& field() const noexcept { return *field_; }
  std::vector<std::uint32_t> coeffs() const;
  bool is_zero() const noexcept { return index_ == 0; }

  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(std::int64_t e) const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.index_ == b.index_;
  }

 private:
  const GaloisField* field_;
  std::uint32_t index_;
};

/// Immutable after construction. Elements refer back to their field, so the
/// field must outlive them.
class GaloisField {
 public:
  explicit GaloisField(FieldSpec spec);

  const FieldSpec& spec() const noexcept { return spec_; }
  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return spec_.p; }
  std::uint32_t degree() const noexcept { return spec_.k; }
  std::uint32_t primitive() const noexcept { return exp_[1 % exp_.size()]; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  /// Throws DivisionByZero for 0.
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t pow(std::uint32_t a, std::int64_t e) const;

  std::vector<std::uint32_t> coeffs(std::uint32_t a) const;
  std::uint32_t from_coeffs(std::span<const std::uint32_t> c) const;

  FieldElement element(std::uint32_t index) const;
  FieldElement zero() const { return element(0); }
  FieldElement one() const { return element(1); }
  /// All q elements in index order.
  std::vector<FieldElement> elements() const;

 private:
  FieldSpec spec_;
  std::uint32_t q_;
  std::vector<std::uint32_t> exp_;  // exp_[i] = g^i, i < q-1
  std::vector<std::uint32_t> log_;  // log_[g^i] = i; log_[0] unused
};

std::shared_ptr<const GaloisField> make_field(std::uint32_t q);

/// Elements x of GF(base^2) with x^base = x, i.e. the subfield GF(base).
/// Throws InvalidArgument unless field.order() == base^2 with base a prime
/// power.
std::vector<FieldElement> subfield_elements(const GaloisField& field, std::uint32_t base);

}  // namespace cardsec::gf
