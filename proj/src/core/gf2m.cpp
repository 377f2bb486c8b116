#include "core/gf2m.hpp"

#include <string>

namespace polar {

std::uint32_t GF2m::primitive_polynomial(int m) {
  // x^m + ... + 1, one fixed primitive choice per degree.
  switch (m) {
    case 4:  return 0x13;     // x^4 + x + 1
    case 5:  return 0x25;     // x^5 + x^2 + 1
    case 6:  return 0x43;     // x^6 + x + 1
    case 7:  return 0x89;     // x^7 + x^3 + 1
    case 8:  return 0x11D;    // x^8 + x^4 + x^3 + x^2 + 1
    case 9:  return 0x211;    // x^9 + x^4 + 1
    case 10: return 0x409;    // x^10 + x^3 + 1
    case 11: return 0x805;    // x^11 + x^2 + 1
    case 12: return 0x1053;   // x^12 + x^6 + x^4 + x + 1
    case 13: return 0x201B;   // x^13 + x^4 + x^3 + x + 1
    case 14: return 0x4443;   // x^14 + x^10 + x^6 + x + 1
    case 15: return 0x8003;   // x^15 + x + 1
    case 16: return 0x1100B;  // x^16 + x^12 + x^3 + x + 1
    default:
      fail(errc::invalid_argument,
           "GF(2^m) supported for m in [4,16], got m=" + std::to_string(m));
  }
}

GF2m::GF2m(int m) : m_(m), size_(1u << m), poly_(primitive_polynomial(m)) {
  exp_.resize(order());
  log_.assign(size_, 0);
  std::uint32_t v = 1;
  for (std::uint32_t i = 0; i < order(); ++i) {
    exp_[i] = v;
    require(i == 0 || v != 1, errc::internal_error,
            "generator x has order below 2^m-1; polynomial is not primitive");
    log_[v] = i;
    v <<= 1;
    if (v & size_) v ^= poly_;
  }
  require(v == 1, errc::internal_error, "generator cycle did not close at 2^m-1");
}

std::uint32_t GF2m::pow(std::uint32_t a, std::uint32_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t s = (static_cast<std::uint64_t>(log_[a]) * e) % order();
  return exp_[s];
}

std::uint32_t GF2m::eval_poly(const std::vector<std::uint32_t>& coeffs,
                              std::uint32_t x) const {
  std::uint32_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = add(mul(acc, x), *it);
  return acc;
}

}  // namespace polar
