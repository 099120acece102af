#pragma once

#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "pointint/error.hpp"

/// Scalar-generic versions of the closed forms, for exact rational or
/// extended-precision evaluation. T is any field type (cpp_rational,
/// cpp_bin_float_100, double).
namespace pointint::exact {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Float100 = boost::multiprecision::cpp_bin_float_100;

/// Largest form-factor index accepted on the exact path.
inline constexpr int kExactMaxIndex = 20;

template <class T>
struct Params {
  T lambda{0};
  T mu{0};
  T nu{0};
};

inline Integer factorial(int n) {
  Integer f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

template <class T>
T power(T base, int e) {
  T r{1};
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

namespace detail {

// Integer -> T; complex multiprecision types go through the real type.
template <class T>
T from_integer(const Integer& n) {
  if constexpr (boost::multiprecision::number_category<T>::value ==
                boost::multiprecision::number_kind_complex) {
    return T(Float100(n));
  } else {
    return T(n);
  }
}

inline void check_exact_indices(int k, int l) {
  if (k < 0 || l < 0) fail(ErrorCode::InvalidArgument, "form-factor indices must be non-negative");
  if (k > kExactMaxIndex || l > kExactMaxIndex) {
    fail(ErrorCode::Overflow, "exact form factors limited to k, l <= 20");
  }
}
}  // namespace detail

/// Closed even/odd form factor F_{k,l}.
template <class T>
T form_factor(int k, int l, const Params<T>& p) {
  detail::check_exact_indices(k, l);
  if ((k + l) % 2 != 0) return T{0};
  const int r = k % 2;
  const int kk = k / 2;
  const int ll = l / 2;
  const T half_lambda = p.lambda / 2;
  const T one_mu = p.mu + 1;
  const T half_nu = p.nu / 2;
  T sum{0};
  for (int j = 0; j <= std::min(kk, ll); ++j) {
    const Integer num = factorial(k) * factorial(l);
    const Integer den = factorial(2 * j + r) * factorial(kk - j) * factorial(ll - j);
    const T coeff = detail::from_integer<T>(num / den);  // always an integer
    sum += coeff * power(half_lambda, kk - j) * power(one_mu, 2 * j + r) * power(half_nu, ll - j);
  }
  return sum;
}

/// F_{k,l} for k <= max_k, l <= max_l from the seeds F_{0,2n} = (2n)!/n! (nu/2)^n
/// and F_{k+1,l} = lambda/(1+mu) F_{k,l+1} + l (1+mu - lambda nu/(1+mu)) F_{k,l-1}.
template <class T>
std::vector<std::vector<T>> form_factor_table(int max_k, int max_l, const Params<T>& p) {
  if (max_k < 0 || max_l < 0) fail(ErrorCode::InvalidArgument, "table bounds must be non-negative");
  const T one_mu = p.mu + 1;
  if (one_mu == T{0}) fail(ErrorCode::DegenerateMu, "1 + mu vanishes");
  const T ratio = p.lambda / one_mu;
  const T delta = one_mu - p.lambda * p.nu / one_mu;
  const int width = max_k + max_l + 1;
  std::vector<std::vector<T>> t(static_cast<std::size_t>(max_k + 1),
                                std::vector<T>(static_cast<std::size_t>(width), T{0}));
  for (int l = 0; l < width; l += 2) {
    const int n = l / 2;
    t[0][static_cast<std::size_t>(l)] = detail::from_integer<T>(factorial(2 * n) / factorial(n)) * power(T(p.nu / 2), n);
  }
  for (int k = 0; k < max_k; ++k) {
    const auto& row = t[static_cast<std::size_t>(k)];
    auto& next = t[static_cast<std::size_t>(k + 1)];
    for (int l = 0; l < width - k - 1; ++l) {
      T v = ratio * row[static_cast<std::size_t>(l + 1)];
      if (l > 0) v += T(l) * delta * row[static_cast<std::size_t>(l - 1)];
      next[static_cast<std::size_t>(l)] = v;
    }
  }
  for (auto& row : t) row.resize(static_cast<std::size_t>(max_l + 1));
  return t;
}

/// <0|(a + a+)^{2n}|0> by applying the ladder operators to integer
/// coefficient vectors in the unnormalized basis (a+)^k|0>:
/// a+ e_k = e_{k+1}, a e_k = k e_{k-1}.
inline Integer wick_vacuum_moment(int n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "moment order must be non-negative");
  std::vector<Integer> v{1};
  for (int step = 0; step < 2 * n; ++step) {
    std::vector<Integer> w(v.size() + 1, 0);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] == 0) continue;
      w[k + 1] += v[k];
      if (k > 0) w[k - 1] += v[k] * static_cast<unsigned>(k);
    }
    v = std::move(w);
  }
  return v[0];
}

/// (2n - 1)!!.
inline Integer double_factorial_odd(int n) {
  Integer r = 1;
  for (int k = 2 * n - 1; k > 1; k -= 2) r *= k;
  return r;
}

/// n-th term of <0|exp(-V phi^2 / 2)|0> expanded in V, with x = V/(2m):
/// (-x/2)^n / n! <0|(a + a+)^{2n}|0>.
template <class T>
T one_point_series_term(T x, int n) {
  return power(T(-x / 2), n) * detail::from_integer<T>(wick_vacuum_moment(n)) / detail::from_integer<T>(factorial(n));
}

/// n-th Taylor coefficient term of (1 + x)^{-1/2}: binom(-1/2, n) x^n.
template <class T>
T one_point_taylor_term(T x, int n) {
  T c{1};
  for (int k = 0; k < n; ++k) c *= (T(-1) / 2 - T(k)) / T(k + 1);
  return c * power(x, n);
}

template <class T>
T one_point_partial_sum(T x, int terms) {
  T s{0};
  for (int n = 0; n < terms; ++n) s += one_point_series_term(x, n);
  return s;
}

/// Partial sum over intermediate states |2n>, n < terms, of
/// <0|O_1|2n> e^{-2n m D} <2n|O_2|0> = F_{0,2n}(p1) F_{2n,0}(p2) q^n / (2n)!,
/// q = e^{-2mD}. Uses the recursion-free seed values so terms may exceed
/// the exact index bound.
template <class T>
T two_point_partial_sum(const Params<T>& p1, const Params<T>& p2, T q, int terms) {
  T s{0};
  for (int n = 0; n < terms; ++n) {
    const T f1 = detail::from_integer<T>(factorial(2 * n) / factorial(n)) * power(T(p1.nu / 2), n);
    const T f2 = detail::from_integer<T>(factorial(2 * n) / factorial(n)) * power(T(p2.lambda / 2), n);
    s += f1 * f2 / detail::from_integer<T>(factorial(2 * n)) * power(q, n);
  }
  return s;
}

/// Determinant by fraction-exact Gaussian elimination (row pivoting on the
/// first nonzero entry).
template <class T>
T determinant(std::vector<std::vector<T>> a) {
  const std::size_t n = a.size();
  T det{1};
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == T{0}) ++piv;
    if (piv == n) return T{0};
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == T{0}) continue;
      const T f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// Collapsed tau determinant from reduced strengths x_j = V_j/(2m) and
/// neighbour factors w_j = e^{-m(a_{j+1} - a_j)} (w.size() == x.size() - 1).
template <class T>
T tau_collapsed(std::span<const T> x, std::span<const T> w) {
  if (x.empty() || w.size() + 1 != x.size()) {
    fail(ErrorCode::InvalidArgument, "need N reduced strengths and N - 1 neighbour factors");
  }
  for (const T& xi : x) {
    if (xi + 1 == T{0}) fail(ErrorCode::SingularExtension, "1 + V/2m vanishes");
  }
  const std::size_t dim = 2 * x.size();
  std::vector<std::vector<T>> t(dim, std::vector<T>(dim, T{0}));
  for (std::size_t i = 0; i < dim; ++i) t[i][i] = T{1};
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    const std::size_t r = 2 * j;
    const T q = w[j] / (x[j + 1] + 1);
    t[r][r + 2] = -q;
    t[r][r + 3] = q * x[j + 1];
    const T tt = w[j] / (x[j] + 1);
    t[r + 3][r] = tt * x[j];
    t[r + 3][r + 1] = -tt;
  }
  return determinant(std::move(t));
}

/// N = 2 closed form 1 - [x_1/(1+x_1)][x_2/(1+x_2)] w^2.
template <class T>
T tau_two_point(T x1, T x2, T w) {
  return T{1} - x1 / (x1 + 1) * (x2 / (x2 + 1)) * w * w;
}

}  // namespace pointint::exact
