#pragma once

// Piecewise-linear paths with rational turning points and the root operators
// e~_i / f~_i acting on them.
//
// A path is stored in canonical form: the ordered list of its nonzero segment
// displacements with no two consecutive displacements positively
// proportional, traversed at uniform speed (segment k occupies
// [k/K, (k+1)/K]). Two paths are equal iff they differ by a reparametrization.

#include "lpath/cartan.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lpath {

class PiecewisePath {
 public:
  PiecewisePath() = default;

  static PiecewisePath constant(std::size_t rank);
  static PiecewisePath line(const QVec& endpoint);
  static PiecewisePath line(const Weight& endpoint) { return line(endpoint.to_qvec()); }
  /// Builds the path traversing the given displacements in order.
  static PiecewisePath from_segments(const std::vector<QVec>& displacements, std::size_t rank);
  /// Raw breakpoint/point list: times strictly increasing from 0 to 1 and points[0] = 0.
  static PiecewisePath canonicalize(const std::vector<Rational>& times, const std::vector<QVec>& points);

  std::size_t rank() const { return rank_; }
  std::size_t segment_count() const { return points_.size() - 1; }
  bool is_constant() const { return points_.size() == 1; }

  /// K+1 turning points, points()[0] = 0.
  const std::vector<QVec>& points() const { return points_; }
  std::vector<Rational> breakpoints() const;
  std::vector<QVec> segments() const;
  const QVec& endpoint() const { return points_.back(); }
  QVec at(const Rational& t) const;

  /// True when shift + eta(t) lies in the closed dominant chamber for every t.
  /// Checked at turning points, which suffices by convexity of the chamber.
  bool stays_in_chamber(const QVec& shift) const;
  bool stays_in_chamber() const { return stays_in_chamber(zeros(rank_)); }

  /// Minimum over t of h_i(eta(t)) = i-th fundamental-weight coordinate.
  Rational min_height(std::size_t i) const;

  /// Pointwise action t -> w(eta(t)).
  PiecewisePath transformed(const WeylGroup& group, std::size_t w) const;
  /// t -> eta(1 - t) - eta(1).
  PiecewisePath reversed() const;

  bool operator==(const PiecewisePath& o) const { return points_ == o.points_; }
  std::size_t hash() const { return hash_; }

  std::string str() const;

 private:
  PiecewisePath(std::vector<QVec> points, std::size_t rank);

  std::size_t rank_ = 0;
  std::vector<QVec> points_;
  std::size_t hash_ = 0;
};

struct PathHash {
  std::size_t operator()(const PiecewisePath& p) const { return p.hash(); }
};

/// Path or the null symbol.
using MaybePath = std::optional<PiecewisePath>;

PiecewisePath concat(const PiecewisePath& a, const PiecewisePath& b);
PiecewisePath concat(const std::vector<const PiecewisePath*>& parts);

struct HeightExtrema {
  Rational minimum;               ///< m_eta <= 0
  std::vector<Rational> witnesses;  ///< breakpoints of h_eta where the minimum is reached
};
HeightExtrema height_function_extrema(const PiecewisePath& eta, std::size_t i);

/// Turning points of eta, refined at the threshold crossings, next to their
/// images under a root operator in the original time parametrization:
/// after = before - weights * alpha_i for f~ and before + weights * alpha_i for e~.
struct OperatorTrace {
  std::vector<Rational> times;
  std::vector<QVec> before;
  std::vector<Rational> weights;
  std::vector<QVec> after;
};
std::optional<OperatorTrace> trace_f(const CartanDatum& datum, const PiecewisePath& eta, std::size_t i);
std::optional<OperatorTrace> trace_e(const CartanDatum& datum, const PiecewisePath& eta, std::size_t i);

MaybePath apply_e(const CartanDatum& datum, const MaybePath& eta, std::size_t i);
MaybePath apply_f(const CartanDatum& datum, const MaybePath& eta, std::size_t i);

/// Number of successive e~_i (resp. f~_i) applications that stay non-null.
std::pair<int, int> eps_phi(const CartanDatum& datum, const PiecewisePath& eta, std::size_t i);

/// eta(1) as a weight; throws std::domain_error when it is not integral.
Weight path_weight(const PiecewisePath& eta);

/// Every h_i attains an integral minimum.
bool is_integral(const PiecewisePath& eta);

/// Path literal: JSON list of [time, [coords...]] pairs with rational strings
/// (numbers are accepted too). Coordinates are fundamental-weight coordinates
/// unless ambient is set, in which case they are converted through the datum.
PiecewisePath parse_path(std::string_view json, const CartanDatum& datum, bool ambient = false);
std::string path_to_json(const PiecewisePath& eta);

}  // namespace lpath
