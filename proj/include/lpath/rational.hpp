#pragma once

// Exact scalar and vector arithmetic shared by every module.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lpath {

using Rational = mpq_class;
using Integer = mpz_class;
using QVec = std::vector<Rational>;

/// Raised when textual input cannot be interpreted (bad rational literal, bad JSON shape, ...).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q" into a canonical rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const QVec& v);

Rational pow(const Rational& base, long exponent);
double to_double(const Rational& q);

QVec zeros(std::size_t n);
QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator*(const Rational& s, const QVec& v);
bool is_zero(const QVec& v);

/// Lexicographic ordering, used as a map key for exponent vectors.
struct QVecLess {
  bool operator()(const QVec& a, const QVec& b) const;
};

struct QVecHash {
  std::size_t operator()(const QVec& v) const;
};

std::size_t hash_rational(const Rational& q);

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace lpath
