#include "core/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>

namespace polar {

Metric Metric::lp(double p) {
  require(std::isfinite(p) && p >= 1.0, errc::invalid_argument,
          "Lp metric needs finite p >= 1");
  return {MetricKind::Lp, p};
}

std::string Metric::describe() const {
  switch (kind) {
    case MetricKind::L0:
      return "l0";
    case MetricKind::Linf:
      return "linf";
    case MetricKind::Lp: {
      char buf[40];
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p);
      (void)ec;
      return "lp " + std::string(buf, end);
    }
  }
  return "?";
}

bool PointSet::integral_coords() const {
  for (double v : data_) {
    if (v != std::floor(v)) return false;
  }
  return true;
}

namespace {
std::atomic<double> g_tolerance{1e-9};
}

double default_tolerance() { return g_tolerance.load(); }

void set_default_tolerance(double tol) {
  require(tol >= 0.0 && std::isfinite(tol), errc::invalid_argument,
          "tolerance must be finite and non-negative");
  g_tolerance.store(tol);
}

double ipow(double x, long e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

static void check_dims(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), errc::invalid_argument,
          "dimension mismatch: " + std::to_string(a.size()) + " vs " +
              std::to_string(b.size()));
}

double distance_pow_p(std::span<const double> a, std::span<const double> b, double p) {
  check_dims(a, b);
  require(p >= 1.0 && std::isfinite(p), errc::invalid_argument,
          "distance_pow_p needs finite p >= 1");
  double sum = 0.0;
  if (p == 1.0) {
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::fabs(a[i] - b[i]);
  } else if (p == 2.0) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      sum += d * d;
    }
  } else if (p == std::floor(p) && p <= 64.0) {
    const long e = static_cast<long>(p);
    for (std::size_t i = 0; i < a.size(); ++i) sum += ipow(std::fabs(a[i] - b[i]), e);
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = std::fabs(a[i] - b[i]);
      // |d| = 1 contributes exactly 1 for every p; skipping pow() here keeps
      // unit-difference sums exact (and fast) for non-integer p too.
      if (d == 1.0)
        sum += 1.0;
      else if (d != 0.0)
        sum += std::pow(d, p);
    }
  }
  return sum;
}

double distance(std::span<const double> a, std::span<const double> b, const Metric& m) {
  check_dims(a, b);
  switch (m.kind) {
    case MetricKind::L0: {
      std::size_t count = 0;
      for (std::size_t i = 0; i < a.size(); ++i) count += (a[i] != b[i]);
      return static_cast<double>(count);
    }
    case MetricKind::Linf: {
      double best = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i)
        best = std::max(best, std::fabs(a[i] - b[i]));
      return best;
    }
    case MetricKind::Lp: {
      const double s = distance_pow_p(a, b, m.p);
      if (m.p == 1.0) return s;
      if (m.p == 2.0) return std::sqrt(s);
      return std::pow(s, 1.0 / m.p);
    }
  }
  fail(errc::internal_error, "unknown metric kind");
}

}  // namespace polar
