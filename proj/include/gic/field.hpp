#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace gic {

/// Characteristic-2 field GF(2^w), 1 <= w <= 16.
struct FieldSpec {
  int w = 1;

  std::uint32_t order() const { return 1u << w; }
  auto operator<=>(const FieldSpec&) const = default;
};

inline constexpr FieldSpec gf2{1};
inline constexpr FieldSpec gf256{8};

/// Log/antilog arithmetic in GF(2^w) over a fixed irreducible polynomial.
///
/// For w = 8 the polynomial is x^8+x^4+x^3+x+1 (0x11b). It is irreducible but
/// not primitive, so the tables are built from the smallest element that
/// generates the multiplicative group rather than from x.
class GaloisField {
 public:
  using element = std::uint16_t;

  explicit GaloisField(int w);

  /// Shared, lazily built table for degree `w`.
  static const GaloisField& get(int w);
  static const GaloisField& get(FieldSpec spec) { return get(spec.w); }

  int degree() const { return w_; }
  std::uint32_t order() const { return 1u << w_; }
  std::uint32_t polynomial() const { return poly_; }
  element generator() const { return generator_; }

  static element add(element a, element b) { return static_cast<element>(a ^ b); }

  element mul(element a, element b) const {
    if (a == 0 || b == 0) {
      return 0;
    }
    return exp_[log_[a] + log_[b]];
  }

  /// Throws std::domain_error for a == 0.
  element inv(element a) const;
  element div(element a, element b) const { return mul(a, inv(b)); }
  element pow(element a, std::uint32_t n) const;

  /// Reference shift-and-add product, independent of the tables.
  element mul_slow(element a, element b) const;

 private:
  int w_;
  std::uint32_t poly_;
  element generator_ = 1;
  std::vector<element> exp_;
  std::vector<std::uint32_t> log_;
};

/// Irreducible polynomial used for GF(2^w), including the x^w term.
std::uint32_t field_polynomial(int w);

}  // namespace gic
