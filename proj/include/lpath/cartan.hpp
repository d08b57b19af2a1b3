#pragma once

// Root data and Weyl groups of finite-type Cartan matrices.
//
// Convention: a_ij = alpha_i(h_j), so the fundamental-weight coordinates of the
// simple root alpha_i are the i-th row of the Cartan matrix and the simple
// reflection acts by s_i(x) = x - x(h_i) alpha_i. Weights are stored by their
// coordinates on the fundamental weights; h_i(x) is then simply the i-th
// coordinate.

#include "lpath/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lpath {

/// Input describes something other than a finite-type indecomposable Cartan matrix.
class CartanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation would exceed its configured size budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::size_t partial) : std::runtime_error(what), partial_(partial) {}
  std::size_t partial() const { return partial_; }

 private:
  std::size_t partial_;
};

/// Integral weight in fundamental-weight coordinates.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::size_t rank) : c_(rank, 0) {}
  explicit Weight(std::vector<std::int64_t> fw) : c_(std::move(fw)) {}
  Weight(std::initializer_list<std::int64_t> fw) : c_(fw) {}

  std::size_t rank() const { return c_.size(); }
  std::int64_t operator[](std::size_t i) const { return c_[i]; }
  std::int64_t& operator[](std::size_t i) { return c_[i]; }
  const std::vector<std::int64_t>& coords() const { return c_; }

  QVec to_qvec() const;
  bool is_zero() const;
  bool is_dominant() const;
  bool is_strictly_dominant() const;

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  Weight operator*(std::int64_t s) const;
  Weight& operator+=(const Weight& o);

  auto operator<=>(const Weight&) const = default;
  bool operator==(const Weight&) const = default;

  std::string str() const;

 private:
  std::vector<std::int64_t> c_;
};

struct WeightHash {
  std::size_t operator()(const Weight& w) const;
};

/// Converts an exact vector to a weight; throws if a coordinate is not an integer.
Weight to_weight(const QVec& fw);

enum class ChamberPosition { interior, boundary, outside };
std::string_view to_string(ChamberPosition p);

ChamberPosition chamber_position(const Weight& beta);
ChamberPosition chamber_position(const QVec& fw);
inline bool in_chamber(const QVec& fw) { return chamber_position(fw) != ChamberPosition::outside; }

class CartanDatum {
 public:
  /// Named type such as "C2", "A_3", "E6". Rank must not exceed max_rank.
  static CartanDatum from_type(std::string_view label, std::size_t max_rank = 8);
  static CartanDatum from_matrix(const std::vector<std::vector<std::int64_t>>& matrix);
  /// Accepts a type label or a JSON array of integer rows.
  static CartanDatum parse(std::string_view spec, std::size_t max_rank = 8);

  const std::string& label() const { return label_; }
  std::size_t rank() const { return n_; }
  std::int64_t entry(std::size_t i, std::size_t j) const { return a_[i][j]; }
  const std::vector<std::vector<std::int64_t>>& matrix() const { return a_; }
  std::int64_t det() const { return det_; }
  const std::vector<QVec>& inverse() const { return inv_; }

  Weight simple_root(std::size_t i) const;
  Weight fundamental_weight(std::size_t i) const;
  Weight rho() const;

  /// Coordinates on the simple roots; denominators divide det().
  QVec root_coords(const QVec& fw) const;
  QVec root_coords(const Weight& w) const { return root_coords(w.to_qvec()); }
  QVec fw_from_root_coords(const QVec& root) const;
  bool in_root_lattice(const Weight& w) const;

  QVec reflect(std::size_t i, const QVec& fw) const;
  Weight reflect(std::size_t i, const Weight& w) const;

  std::size_t ambient_dim() const { return ambient_roots_.empty() ? 0 : ambient_roots_.front().size(); }
  QVec to_ambient(const QVec& fw) const;
  QVec to_ambient(const Weight& w) const { return to_ambient(w.to_qvec()); }
  /// Inverse of to_ambient for vectors lying in the span of the roots.
  QVec from_ambient(const QVec& x) const;
  const std::vector<QVec>& ambient_simple_roots() const { return ambient_roots_; }

  /// Positive roots ordered by height, then lexicographically by root coordinates.
  const std::vector<Weight>& positive_roots() const { return positive_roots_; }

 private:
  CartanDatum() = default;
  void finish();

  std::string label_;
  std::size_t n_ = 0;
  std::vector<std::vector<std::int64_t>> a_;
  std::int64_t det_ = 0;
  std::vector<QVec> inv_;
  std::vector<QVec> ambient_roots_;
  std::vector<QVec> ambient_fw_;
  std::vector<Weight> positive_roots_;
};

struct WeylElement {
  std::vector<int> word;  ///< reduced word: w = s_{word[0]} ... s_{word.back()}
  std::vector<std::int64_t> matrix;  ///< row-major rank x rank, acting on fw columns
  int sign = 1;
  std::size_t length() const { return word.size(); }
};

class WeylGroup {
 public:
  explicit WeylGroup(const CartanDatum& datum, std::size_t max_order = 2'000'000);

  std::size_t size() const { return elements_.size(); }
  std::size_t rank() const { return n_; }
  const WeylElement& operator[](std::size_t k) const { return elements_[k]; }
  const std::vector<WeylElement>& elements() const { return elements_; }

  static constexpr std::size_t identity() { return 0; }
  std::size_t simple_reflection(std::size_t i) const { return simple_[i]; }
  std::size_t longest() const { return elements_.size() - 1; }
  std::size_t compose(std::size_t a, std::size_t b) const;  ///< a o b
  std::size_t inverse(std::size_t a) const;
  std::size_t find(const std::vector<std::int64_t>& matrix) const;

  Weight act(std::size_t w, const Weight& beta) const;
  QVec act(std::size_t w, const QVec& fw) const;

 private:
  std::size_t n_;
  std::vector<WeylElement> elements_;
  std::map<std::vector<std::int64_t>, std::size_t> index_;
  std::vector<std::size_t> simple_;
};

}  // namespace lpath
