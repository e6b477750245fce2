#include "gic/field.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace gic {

std::uint32_t field_polynomial(int w) {
  static constexpr std::array<std::uint32_t, 17> polys = {
      0,        0x3,    0x7,    0xb,    0x13,   0x25,   0x43,   0x89,  0x11b,
      0x211,    0x409,  0x805,  0x1053, 0x201b, 0x4443, 0x8003, 0x1100b,
  };
  if (w < 1 || w > 16) {
    throw std::invalid_argument("field degree must be in [1..16], got " + std::to_string(w));
  }
  return polys[static_cast<std::size_t>(w)];
}

GaloisField::GaloisField(int w) : w_(w), poly_(field_polynomial(w)) {
  const std::uint32_t q = order();
  const std::uint32_t group = q - 1;
  exp_.assign(2 * group, 0);
  log_.assign(q, 0);

  bool found = false;
  for (std::uint32_t g = (w == 1 ? 1 : 2); g < q && !found; ++g) {
    element x = 1;
    std::uint32_t period = 0;
    do {
      x = mul_slow(x, static_cast<element>(g));
      ++period;
    } while (x != 1 && period <= group);
    if (period == group) {
      generator_ = static_cast<element>(g);
      found = true;
    }
  }
  if (!found) {
    throw std::logic_error("polynomial for GF(2^" + std::to_string(w) + ") is not primitive-generated");
  }
  element x = 1;
  for (std::uint32_t e = 0; e < group; ++e) {
    exp_[e] = x;
    exp_[e + group] = x;
    log_[x] = e;
    x = mul_slow(x, generator_);
  }
}

const GaloisField& GaloisField::get(int w) {
  static std::array<std::unique_ptr<GaloisField>, 17> cache;
  static std::array<std::once_flag, 17> once;
  field_polynomial(w);
  const auto slot = static_cast<std::size_t>(w);
  std::call_once(once[slot], [&] { cache[slot] = std::make_unique<GaloisField>(w); });
  return *cache[slot];
}

GaloisField::element GaloisField::inv(element a) const {
  if (a == 0) {
    throw std::domain_error("zero has no inverse");
  }
  const std::uint32_t group = order() - 1;
  return exp_[(group - log_[a]) % group];
}

GaloisField::element GaloisField::pow(element a, std::uint32_t n) const {
  if (n == 0) {
    return 1;
  }
  if (a == 0) {
    return 0;
  }
  const std::uint64_t group = order() - 1;
  return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * n) % group)];
}

GaloisField::element GaloisField::mul_slow(element a, element b) const {
  std::uint32_t acc = 0;
  std::uint32_t x = a;
  std::uint32_t y = b;
  while (y != 0) {
    if (y & 1u) {
      acc ^= x;
    }
    y >>= 1;
    x <<= 1;
    if (x & order()) {
      x ^= poly_;
    }
  }
  return static_cast<element>(acc);
}

}  // namespace gic
