#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace insc {

using Rat = mpq_class;

struct error : std::runtime_error {
  std::string code;
  error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

// Parses "p/q", "p", or a decimal-free integer string. Result is canonical.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw error("InvalidRational", "empty string");
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw error("InvalidRational", "cannot parse '" + s + "'");
  if (sgn(Rat(r.get_den())) == 0)
    throw error("InvalidRational", "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

// "p/q" with "/q" omitted for integers.
inline std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string double_to_string(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static Rat default_tol() { return Rat(0); }
  static double to_double(const Rat& x) { return x.get_d(); }
  static Rat from_rat(const Rat& x) { return x; }
  static std::string str(const Rat& x) { return rat_to_string(x); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double default_tol() { return 1e-9; }
  static double to_double(double x) { return x; }
  static double from_rat(const Rat& x) { return x.get_d(); }
  static std::string str(double x) { return double_to_string(x); }
};

template <class S>
inline S abs_val(const S& x) {
  return x < S(0) ? S(-x) : x;
}

// Zero test relative to the magnitude of the data it came from.
template <class S>
inline bool near_zero(const S& x, const S& tol, const S& scale = S(1)) {
  if constexpr (scalar_traits<S>::exact)
    return x == 0;
  else
    return abs_val(x) <= tol * (scale < S(1) ? S(1) : scale);
}

template <class S>
inline int sign_of(const S& x, const S& tol, const S& scale = S(1)) {
  if (near_zero(x, tol, scale)) return 0;
  return x < S(0) ? -1 : 1;
}

// True if q = (a/b)^2 for a rational; on success also yields a/b >= 0.
inline bool rational_sqrt(const Rat& q, Rat& root) {
  if (q < 0) return false;
  mpz_class num = q.get_num(), den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  root = Rat(rn) / Rat(rd);
  return true;
}

// sign(a - b*sqrt(s)) for rational a, b and s >= 0, without taking the root.
inline int cmp_vs_sqrt(const Rat& a, const Rat& b, const Rat& s) {
  if (s < 0) throw error("InvalidArgument", "negative radicand");
  if (b == 0 || s == 0) return sgn(a);
  if (sgn(a) != sgn(b)) {
    if (a == 0) return -sgn(b);
    return sgn(a);
  }
  Rat lhs = a * a, rhs = b * b * s;
  int c = cmp(lhs, rhs);
  return sgn(a) > 0 ? c : -c;
}

}  // namespace insc

namespace Eigen {
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};
}  // namespace Eigen
