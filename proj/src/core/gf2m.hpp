#pragma once

#include <cstdint>
#include <vector>

#include "core/error.hpp"

namespace polar {

// GF(2^m) with log/antilog tables over a fixed, published primitive polynomial
// per m, so field elements — and everything built from them — are reproducible
// bit-for-bit across implementations. Supported m: 4..16.
class GF2m {
public:
  explicit GF2m(int m);

  int m() const { return m_; }
  std::uint32_t order() const { return size_ - 1; }  // multiplicative order
  std::uint32_t size() const { return size_; }       // 2^m elements
  std::uint32_t modulus() const { return poly_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    const std::uint32_t s = log_[a] + log_[b];
    return exp_[s >= order() ? s - order() : s];
  }

  std::uint32_t pow(std::uint32_t a, std::uint32_t e) const;

  // Horner evaluation of sum coeffs[k] x^k at x.
  std::uint32_t eval_poly(const std::vector<std::uint32_t>& coeffs, std::uint32_t x) const;

  static std::uint32_t primitive_polynomial(int m);

private:
  int m_;
  std::uint32_t size_;
  std::uint32_t poly_;
  std::vector<std::uint32_t> exp_;  // exp_[i] = x^i, i in [0, order)
  std::vector<std::uint32_t> log_;  // inverse of exp_ on nonzero elements
};

}  // namespace polar
