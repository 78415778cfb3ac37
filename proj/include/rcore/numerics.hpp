#pragma once

// Combinatorial and floating-point primitives shared by the probability
// modules: exact binomial coefficients, binomial pmf/cdf, exact summation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace rcore {

using BigInt = boost::multiprecision::cpp_int;

/// Exact binomial coefficient. Zero when k < 0 or k > n.
inline BigInt choose(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::domain_error("choose: n must be non-negative");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: result is C(n - k + i, i) here
  }
  return result;
}

/// Lossy conversion; std::nullopt when the value does not fit in a double.
inline std::optional<double> checked_to_double(const BigInt& x) {
  if (x == 0) return 0.0;
  const BigInt mag = boost::multiprecision::abs(x);
  if (boost::multiprecision::msb(mag) >= 1024) return std::nullopt;
  const double d = x.convert_to<double>();
  if (!std::isfinite(d)) return std::nullopt;
  return d;
}

/// Like checked_to_double, but overflow maps to +inf.
inline double to_double_or_inf(const BigInt& x) {
  return checked_to_double(x).value_or(x.sign() < 0 ? -std::numeric_limits<double>::infinity()
                                                    : std::numeric_limits<double>::infinity());
}

/// Natural log of a positive integer of any width; -inf for zero.
inline double log_of(const BigInt& x) {
  if (x.sign() < 0) throw std::domain_error("log_of: negative argument");
  if (x == 0) return -std::numeric_limits<double>::infinity();
  const unsigned bits = boost::multiprecision::msb(x);
  if (bits < 960) return std::log(x.convert_to<double>());
  const unsigned shift = bits - 900;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + shift * std::numbers::ln2;
}

/// Pascal triangle cache holding C(n, j) as double and as natural log,
/// built from exact integer rows. Grows on demand.
class BinomialTable {
 public:
  explicit BinomialTable(int n_max = 0) { ensure(n_max); }

  void ensure(int n_max) {
    if (n_max < size()) return;
    if (exact_row_.empty()) exact_row_.push_back(1);
    while (size() <= n_max) {
      if (!values_.empty()) {
        std::vector<BigInt> next(exact_row_.size() + 1);
        next.front() = 1;
        next.back() = 1;
        for (std::size_t j = 1; j < exact_row_.size(); ++j)
          next[j] = exact_row_[j - 1] + exact_row_[j];
        exact_row_ = std::move(next);
      }
      std::vector<double> vals(exact_row_.size());
      std::vector<double> logs(exact_row_.size());
      for (std::size_t j = 0; j < exact_row_.size(); ++j) {
        vals[j] = to_double_or_inf(exact_row_[j]);
        logs[j] = log_of(exact_row_[j]);
      }
      values_.push_back(std::move(vals));
      logs_.push_back(std::move(logs));
    }
  }

  int size() const { return static_cast<int>(values_.size()); }

  double value(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    ensure(n);
    return values_[n][k];
  }

  double log(int n, int k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    ensure(n);
    return logs_[n][k];
  }

 private:
  std::vector<BigInt> exact_row_;
  std::vector<std::vector<double>> values_;
  std::vector<std::vector<double>> logs_;
};

/// Exact floating-point accumulator (Shewchuk's non-overlapping partials).
/// value() is the correctly rounded sum of everything added so far.
class ExactSum {
 public:
  void add(double x) {
    if (!std::isfinite(x)) {
      special_ += x;
      has_special_ = true;
      return;
    }
    std::size_t i = 0;
    for (double y : partials_) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials_[i++] = lo;
      x = hi;
    }
    partials_.resize(i);
    partials_.push_back(x);
  }

  ExactSum& operator+=(double x) {
    add(x);
    return *this;
  }

  double value() const {
    if (has_special_) return special_;
    std::size_t n = partials_.size();
    if (n == 0) return 0.0;
    double hi = partials_[--n];
    double lo = 0.0;
    while (n > 0) {
      const double x = hi;
      const double y = partials_[--n];
      hi = x + y;
      lo = y - (hi - x);
      if (lo != 0.0) break;
    }
    // Round-half-even fix-up when the remaining partials push past a tie.
    if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
      const double y = lo * 2.0;
      const double x = hi + y;
      if (y == x - hi) hi = x;
    }
    return hi;
  }

 private:
  std::vector<double> partials_;
  double special_ = 0.0;
  bool has_special_ = false;
};

/// Compensated sum of `terms`; exact up to the final rounding.
inline double stable_sum(std::span<const double> terms) {
  ExactSum acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

namespace detail {

inline void check_binomial_args(std::int64_t n, double p) {
  if (n < 0) throw std::domain_error("binomial: trial count must be non-negative");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("binomial: probability must lie in [0, 1], got " + std::to_string(p));
}

}  // namespace detail

/// Binomial(n, p) parameters.
struct BinomialDist {
  std::int64_t n = 0;
  double p = 0.0;

  BinomialDist(std::int64_t trials, double prob) : n(trials), p(prob) {
    detail::check_binomial_args(n, p);
  }

  double mean() const { return static_cast<double>(n) * p; }
  double stddev() const { return std::sqrt(static_cast<double>(n) * p * (1.0 - p)); }
};

/// b(x; n, p). Zero outside [0, n].
inline double binom_pmf(std::int64_t x, std::int64_t n, double p) {
  detail::check_binomial_args(n, p);
  if (x < 0 || x > n) return 0.0;
  const boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
  return boost::math::pdf(dist, static_cast<double>(x));
}

/// B(x; n, p) = sum of b(j; n, p) for j <= x.
inline double binom_cdf(std::int64_t x, std::int64_t n, double p) {
  detail::check_binomial_args(n, p);
  if (x < 0) return 0.0;
  if (x >= n) return 1.0;
  ExactSum acc;
  for (std::int64_t j = 0; j <= x; ++j) acc.add(binom_pmf(j, n, p));
  return std::min(1.0, acc.value());
}

/// Upper tail P(X > x) = 1 - B(x; n, p), summed directly from the tail when
/// the complement would cancel.
inline double binom_sf(std::int64_t x, std::int64_t n, double p) {
  detail::check_binomial_args(n, p);
  if (x < 0) return 1.0;
  if (x >= n) return 0.0;
  const double lower = binom_cdf(x, n, p);
  if (lower <= 0.5) return 1.0 - lower;
  ExactSum acc;
  const double mode = std::floor((static_cast<double>(n) + 1.0) * p);
  for (std::int64_t j = x + 1; j <= n; ++j) {
    const double term = binom_pmf(j, n, p);
    acc.add(term);
    if (static_cast<double>(j) > mode && term < 1e-20 * acc.value()) break;
  }
  return std::clamp(acc.value(), 0.0, 1.0);
}

}  // namespace rcore
