#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace polar {

enum class MetricKind { L0, Lp, Linf };

// L0 counts differing coordinates under exact scalar comparison; Lp (finite
// p >= 1) is the usual p-norm of the difference; Linf is the max norm.
struct Metric {
  MetricKind kind = MetricKind::Lp;
  double p = 2.0;  // meaningful only when kind == Lp

  static Metric l0() { return {MetricKind::L0, 0.0}; }
  static Metric lp(double p);
  static Metric l1() { return lp(1.0); }
  static Metric l2() { return lp(2.0); }
  static Metric linf() { return {MetricKind::Linf, 0.0}; }

  // True when kind == Lp and p is an integer: p-th powers of integer
  // coordinate differences are then exactly representable, so strict
  // comparisons can be made without tolerances.
  bool integral_p() const {
    return kind == MetricKind::Lp && p == std::floor(p) && p <= 64.0;
  }

  bool operator==(const Metric&) const = default;

  std::string describe() const;  // "l0" | "lp <p>" | "linf"
};

using Point = std::vector<double>;

// Ordered list of same-dimension points over one metric, stored row-major so
// the quadratic scans stay cache-friendly.
class PointSet {
public:
  PointSet() = default;
  PointSet(std::size_t dim, Metric metric) : dim_(dim), metric_(metric) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return n_; }

  std::span<const double> operator[](std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }

  Point point(std::size_t i) const {
    auto row = (*this)[i];
    return Point(row.begin(), row.end());
  }

  void add(std::span<const double> coords) {
    require(coords.size() == dim_, errc::invalid_argument,
            "point dimension " + std::to_string(coords.size()) +
                " does not match set dimension " + std::to_string(dim_));
    data_.insert(data_.end(), coords.begin(), coords.end());
    ++n_;
  }

  void reserve(std::size_t n) { data_.reserve(n * dim_); }

  const Metric& metric() const { return metric_; }
  const std::vector<double>& raw() const { return data_; }

  // True when every coordinate is an integer-valued double (the exactness
  // contract for integral-p comparisons).
  bool integral_coords() const;

  bool operator==(const PointSet&) const = default;

private:
  std::size_t dim_ = 0;
  std::size_t n_ = 0;
  Metric metric_;
  std::vector<double> data_;
};

// Process-wide default relative tolerance for non-exact comparisons (strict
// inequalities are certified only when the margin exceeds it).
double default_tolerance();
void set_default_tolerance(double tol);

// x^e by repeated squaring; exact for integer-valued x while the result stays
// below 2^53, which is what the integer-p comparison contract relies on
// (std::pow makes no exactness promise).
double ipow(double x, long e);

// Sum of |a_i - b_i|^p, no final root. Exact for integer p on integer
// coordinates.
double distance_pow_p(std::span<const double> a, std::span<const double> b, double p);

double distance(std::span<const double> a, std::span<const double> b, const Metric& m);

inline double distance(const PointSet& ps, std::size_t i, std::size_t j) {
  return distance(ps[i], ps[j], ps.metric());
}

}  // namespace polar
