#include "lpath/path.hpp"

#include <json.hpp>

#include <algorithm>

namespace lpath {

namespace {

bool positively_proportional(const QVec& u, const QVec& v) {
  std::size_t k = 0;
  while (k < u.size() && u[k] == 0) ++k;
  if (k == u.size() || v[k] == 0) return false;
  const Rational c = v[k] / u[k];
  if (c <= 0) return false;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (v[i] != c * u[i]) return false;
  return true;
}

std::vector<QVec> merged(const std::vector<QVec>& displacements) {
  std::vector<QVec> out;
  for (const auto& d : displacements) {
    if (is_zero(d)) continue;
    if (!out.empty() && positively_proportional(out.back(), d))
      out.back() = out.back() + d;
    else
      out.push_back(d);
  }
  return out;
}

// Value of a linear piece at local parameter s in [0,1].
QVec lerp(const QVec& a, const QVec& b, const Rational& s) { return a + s * (b - a); }

// Local parameters s in (0,1) where the linear function from ha to hb equals a level.
void add_crossing(std::vector<Rational>& cuts, const Rational& ha, const Rational& hb, const Rational& level) {
  if (ha == hb) return;
  Rational s = (level - ha) / (hb - ha);
  if (s > 0 && s < 1) cuts.push_back(s);
}

Rational clamp01(const Rational& x) {
  if (x < 0) return 0;
  if (x > 1) return 1;
  return x;
}

}  // namespace

PiecewisePath::PiecewisePath(std::vector<QVec> points, std::size_t rank) : rank_(rank), points_(std::move(points)) {
  hash_ = points_.size();
  for (const auto& p : points_) hash_combine(hash_, QVecHash{}(p));
}

PiecewisePath PiecewisePath::constant(std::size_t rank) { return PiecewisePath({zeros(rank)}, rank); }

PiecewisePath PiecewisePath::line(const QVec& endpoint) { return from_segments({endpoint}, endpoint.size()); }

PiecewisePath PiecewisePath::from_segments(const std::vector<QVec>& displacements, std::size_t rank) {
  auto segs = merged(displacements);
  std::vector<QVec> pts{zeros(rank)};
  for (const auto& d : segs) pts.push_back(pts.back() + d);
  return PiecewisePath(std::move(pts), rank);
}

PiecewisePath PiecewisePath::canonicalize(const std::vector<Rational>& times, const std::vector<QVec>& points) {
  if (times.size() != points.size() || points.empty())
    throw FormatError("path needs matching, nonempty time and point lists");
  if (times.front() != 0 || times.back() != 1) throw FormatError("path times must run from 0 to 1");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (times[k] <= times[k - 1]) throw FormatError("path times must be strictly increasing");
  if (!is_zero(points.front())) throw FormatError("path must start at the origin");
  const std::size_t rank = points.front().size();
  std::vector<QVec> disp;
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (points[k].size() != rank) throw FormatError("path points have inconsistent dimension");
    disp.push_back(points[k] - points[k - 1]);
  }
  return from_segments(disp, rank);
}

std::vector<Rational> PiecewisePath::breakpoints() const {
  const std::size_t k = segment_count();
  std::vector<Rational> t;
  if (k == 0) return {Rational(0), Rational(1)};
  for (std::size_t j = 0; j <= k; ++j) t.emplace_back(static_cast<long>(j), static_cast<long>(k));
  for (auto& x : t) x.canonicalize();
  return t;
}

std::vector<QVec> PiecewisePath::segments() const {
  std::vector<QVec> s;
  for (std::size_t k = 1; k < points_.size(); ++k) s.push_back(points_[k] - points_[k - 1]);
  return s;
}

QVec PiecewisePath::at(const Rational& t) const {
  if (t < 0 || t > 1) throw std::out_of_range("path parameter outside [0,1]");
  const std::size_t k = segment_count();
  if (k == 0) return points_.front();
  Rational x = t * static_cast<long>(k);
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  std::size_t seg = std::min<std::size_t>(fl.get_ui(), k - 1);
  Rational s = x - static_cast<long>(seg);
  return lerp(points_[seg], points_[seg + 1], s);
}

bool PiecewisePath::stays_in_chamber(const QVec& shift) const {
  for (const auto& p : points_)
    for (std::size_t i = 0; i < rank_; ++i)
      if (shift[i] + p[i] < 0) return false;
  return true;
}

Rational PiecewisePath::min_height(std::size_t i) const {
  Rational m = 0;
  for (const auto& p : points_) m = std::min(m, p[i]);
  return m;
}

PiecewisePath PiecewisePath::transformed(const WeylGroup& group, std::size_t w) const {
  std::vector<QVec> pts;
  pts.reserve(points_.size());
  for (const auto& p : points_) pts.push_back(group.act(w, p));
  return PiecewisePath(std::move(pts), rank_);
}

PiecewisePath PiecewisePath::reversed() const {
  std::vector<QVec> pts;
  const QVec& end = endpoint();
  for (auto it = points_.rbegin(); it != points_.rend(); ++it) pts.push_back(*it - end);
  return PiecewisePath(std::move(pts), rank_);
}

std::string PiecewisePath::str() const {
  std::string out = "[";
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (k) out += " -> ";
    out += to_string(points_[k]);
  }
  return out + "]";
}

PiecewisePath concat(const PiecewisePath& a, const PiecewisePath& b) {
  auto segs = a.segments();
  auto tail = b.segments();
  segs.insert(segs.end(), tail.begin(), tail.end());
  return PiecewisePath::from_segments(segs, a.rank());
}

PiecewisePath concat(const std::vector<const PiecewisePath*>& parts) {
  if (parts.empty()) throw std::invalid_argument("concat of an empty path list");
  std::vector<QVec> segs;
  for (const auto* p : parts) {
    auto s = p->segments();
    segs.insert(segs.end(), s.begin(), s.end());
  }
  return PiecewisePath::from_segments(segs, parts.front()->rank());
}

HeightExtrema height_function_extrema(const PiecewisePath& eta, std::size_t i) {
  HeightExtrema out{eta.min_height(i), {}};
  const auto times = eta.breakpoints();
  const auto& pts = eta.points();
  if (eta.is_constant()) {
    out.witnesses = times;
    return out;
  }
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (pts[k][i] == out.minimum) out.witnesses.push_back(times[k]);
  return out;
}

// f~_i(eta)(t) = eta(t) - c(t) alpha_i with c(t) = clamp(min_{s>=t} h(s) - m, 0, 1).
std::optional<OperatorTrace> trace_f(const CartanDatum& datum, const PiecewisePath& eta, std::size_t i) {
  const auto& pts = eta.points();
  const std::size_t k = pts.size() - 1;
  const Rational m = eta.min_height(i);
  if (pts.back()[i] < m + 1) return std::nullopt;

  std::vector<Rational> future(k + 1);
  future[k] = pts[k][i];
  for (std::size_t j = k; j-- > 0;) future[j] = std::min(pts[j][i], future[j + 1]);

  const QVec alpha = datum.simple_root(i).to_qvec();
  const Rational top = m + 1;
  auto correction = [&](const QVec& p, const Rational& fut_after) -> Rational {
    return clamp01(std::min(p[i], fut_after) - m);
  };
  OperatorTrace tr;
  auto push = [&](const Rational& t, const QVec& p, const Rational& g) {
    tr.times.push_back(t);
    tr.before.push_back(p);
    tr.weights.push_back(g);
    tr.after.push_back(p - g * alpha);
  };
  push(0, pts[0], correction(pts[0], future[0]));
  for (std::size_t j = 0; j < k; ++j) {
    const Rational &ha = pts[j][i], &hb = pts[j + 1][i];
    std::vector<Rational> cuts;
    add_crossing(cuts, ha, hb, future[j + 1]);
    add_crossing(cuts, ha, hb, top);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(1);
    for (const auto& s : cuts) {
      QVec p = lerp(pts[j], pts[j + 1], s);
      push((j + s) / Rational(static_cast<long>(k)), p, correction(p, future[j + 1]));
    }
  }
  return tr;
}

// e~_i(eta)(t) = eta(t) + (1 - clamp(min_{s<=t} h(s) - m, 0, 1)) alpha_i.
std::optional<OperatorTrace> trace_e(const CartanDatum& datum, const PiecewisePath& eta, std::size_t i) {
  const auto& pts = eta.points();
  const std::size_t k = pts.size() - 1;
  const Rational m = eta.min_height(i);
  if (m > -1) return std::nullopt;

  const QVec alpha = datum.simple_root(i).to_qvec();
  const Rational top = m + 1;
  auto shift = [&](const QVec& p, const Rational& past_before) -> Rational {
    return 1 - clamp01(std::min(p[i], past_before) - m);
  };
  OperatorTrace tr;
  auto push = [&](const Rational& t, const QVec& p, const Rational& g) {
    tr.times.push_back(t);
    tr.before.push_back(p);
    tr.weights.push_back(g);
    tr.after.push_back(p + g * alpha);
  };
  Rational past = pts[0][i];
  push(0, pts[0], shift(pts[0], past));
  for (std::size_t j = 0; j < k; ++j) {
    const Rational &ha = pts[j][i], &hb = pts[j + 1][i];
    std::vector<Rational> cuts;
    add_crossing(cuts, ha, hb, past);
    add_crossing(cuts, ha, hb, top);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.push_back(1);
    for (const auto& s : cuts) {
      QVec p = lerp(pts[j], pts[j + 1], s);
      push((j + s) / Rational(static_cast<long>(k)), p, shift(p, past));
    }
    past = std::min(past, hb);
  }
  return tr;
}

namespace {

PiecewisePath assemble(const OperatorTrace& tr, std::size_t rank) {
  std::vector<QVec> disp;
  for (std::size_t j = 1; j < tr.after.size(); ++j) disp.push_back(tr.after[j] - tr.after[j - 1]);
  return PiecewisePath::from_segments(disp, rank);
}

}  // namespace

MaybePath apply_f(const CartanDatum& datum, const MaybePath& eta, std::size_t i) {
  if (!eta || eta->is_constant()) return std::nullopt;
  auto tr = trace_f(datum, *eta, i);
  if (!tr) return std::nullopt;
  return assemble(*tr, eta->rank());
}

MaybePath apply_e(const CartanDatum& datum, const MaybePath& eta, std::size_t i) {
  if (!eta || eta->is_constant()) return std::nullopt;
  auto tr = trace_e(datum, *eta, i);
  if (!tr) return std::nullopt;
  return assemble(*tr, eta->rank());
}

std::pair<int, int> eps_phi(const CartanDatum& datum, const PiecewisePath& eta, std::size_t i) {
  int eps = 0, phi = 0;
  for (MaybePath p = apply_e(datum, eta, i); p; p = apply_e(datum, p, i)) ++eps;
  for (MaybePath p = apply_f(datum, eta, i); p; p = apply_f(datum, p, i)) ++phi;
  return {eps, phi};
}

Weight path_weight(const PiecewisePath& eta) { return to_weight(eta.endpoint()); }

bool is_integral(const PiecewisePath& eta) {
  for (std::size_t i = 0; i < eta.rank(); ++i)
    if (eta.min_height(i).get_den() != 1) return false;
  return true;
}

PiecewisePath parse_path(std::string_view json, const CartanDatum& datum, bool ambient) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("path literal is not valid JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw FormatError("path literal must be a nonempty list of [time, [coords]]");
  auto rational_of = [](const nlohmann::json& x) {
    if (x.is_string()) return parse_rational(x.get<std::string>());
    if (x.is_number_integer()) return Rational(x.get<long>());
    throw FormatError("path coordinates must be rational strings or integers");
  };
  std::vector<Rational> times;
  std::vector<QVec> points;
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 2 || !entry[1].is_array())
      throw FormatError("path literal entries must be [time, [coords]]");
    times.push_back(rational_of(entry[0]));
    QVec p;
    for (const auto& c : entry[1]) p.push_back(rational_of(c));
    if (ambient) {
      if (p.size() != datum.ambient_dim()) throw FormatError("path point has the wrong ambient dimension");
      p = datum.from_ambient(p);
    } else if (p.size() != datum.rank()) {
      throw FormatError("path point has the wrong rank");
    }
    points.push_back(std::move(p));
  }
  return PiecewisePath::canonicalize(times, points);
}

std::string path_to_json(const PiecewisePath& eta) {
  nlohmann::json j = nlohmann::json::array();
  const auto times = eta.breakpoints();
  const auto& pts = eta.points();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& x : pts[k]) coords.push_back(x.get_str());
    j.push_back({times[k].get_str(), coords});
  }
  if (eta.is_constant()) {
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& x : pts[0]) coords.push_back(x.get_str());
    j.push_back({"1", coords});
  }
  return j.dump();
}

}  // namespace lpath
