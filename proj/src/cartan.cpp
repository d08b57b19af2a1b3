#include "lpath/cartan.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace lpath {

// ---------------------------------------------------------------- Weight

QVec Weight::to_qvec() const {
  QVec v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = Rational(static_cast<long>(c_[i]));
  return v;
}

bool Weight::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x == 0; });
}
bool Weight::is_dominant() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x >= 0; });
}
bool Weight::is_strictly_dominant() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t x) { return x > 0; });
}

Weight Weight::operator+(const Weight& o) const {
  Weight r(*this);
  r += o;
  return r;
}
Weight& Weight::operator+=(const Weight& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}
Weight Weight::operator-(const Weight& o) const {
  Weight r(*this);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}
Weight Weight::operator-() const {
  Weight r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}
Weight Weight::operator*(std::int64_t s) const {
  Weight r(*this);
  for (auto& x : r.c_) x *= s;
  return r;
}

std::string Weight::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c_[i]);
  }
  return out + ")";
}

std::size_t WeightHash::operator()(const Weight& w) const {
  std::size_t seed = w.rank();
  for (auto x : w.coords()) hash_combine(seed, std::hash<std::int64_t>{}(x));
  return seed;
}

Weight to_weight(const QVec& fw) {
  std::vector<std::int64_t> c(fw.size());
  for (std::size_t i = 0; i < fw.size(); ++i) {
    if (fw[i].get_den() != 1 || !fw[i].get_num().fits_slong_p())
      throw std::domain_error("vector " + to_string(fw) + " is not an integral weight");
    c[i] = fw[i].get_num().get_si();
  }
  return Weight(std::move(c));
}

std::string_view to_string(ChamberPosition p) {
  switch (p) {
    case ChamberPosition::interior: return "interior";
    case ChamberPosition::boundary: return "boundary";
    case ChamberPosition::outside: return "outside";
  }
  return "?";
}

ChamberPosition chamber_position(const Weight& beta) {
  bool on_wall = false;
  for (auto x : beta.coords()) {
    if (x < 0) return ChamberPosition::outside;
    if (x == 0) on_wall = true;
  }
  return on_wall ? ChamberPosition::boundary : ChamberPosition::interior;
}

ChamberPosition chamber_position(const QVec& fw) {
  bool on_wall = false;
  for (const auto& x : fw) {
    if (x < 0) return ChamberPosition::outside;
    if (x == 0) on_wall = true;
  }
  return on_wall ? ChamberPosition::boundary : ChamberPosition::interior;
}

// ---------------------------------------------------------------- helpers

namespace {

Integer determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det.get_num();
}

std::vector<QVec> invert(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  std::vector<QVec> m(n, QVec(2 * n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = Rational(static_cast<long>(a[i][j]));
      m[i][n + j] = i == j ? 1 : 0;
    }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (m[pivot][col] == 0) ++pivot;
    std::swap(m[pivot], m[col]);
    Rational p = m[col][col];
    for (auto& x : m[col]) x /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<QVec> inv(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

Rational dot(const QVec& x, const QVec& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

QVec unit(std::size_t dim, std::size_t k, long scale = 1) {
  QVec v = zeros(dim);
  v[k] = scale;
  return v;
}

std::vector<QVec> classical_roots(char family, std::size_t n) {
  std::vector<QVec> roots;
  auto diff = [](std::size_t dim, std::size_t i, std::size_t j) {
    QVec v = zeros(dim);
    v[i] = 1;
    v[j] = -1;
    return v;
  };
  switch (family) {
    case 'A':
      for (std::size_t i = 0; i < n; ++i) roots.push_back(diff(n + 1, i, i + 1));
      break;
    case 'B':
      for (std::size_t i = 0; i + 1 < n; ++i) roots.push_back(diff(n, i, i + 1));
      roots.push_back(unit(n, n - 1));
      break;
    case 'C':
      for (std::size_t i = 0; i + 1 < n; ++i) roots.push_back(diff(n, i, i + 1));
      roots.push_back(unit(n, n - 1, 2));
      break;
    case 'D': {
      for (std::size_t i = 0; i + 1 < n; ++i) roots.push_back(diff(n, i, i + 1));
      QVec last = zeros(n);
      last[n - 2] = 1;
      last[n - 1] = 1;
      roots.push_back(last);
      break;
    }
    case 'G':
      roots.push_back(QVec{1, -1, 0});
      roots.push_back(QVec{-2, 1, 1});
      break;
    case 'F': {
      Rational h(1, 2);
      roots.push_back(QVec{0, 1, -1, 0});
      roots.push_back(QVec{0, 0, 1, -1});
      roots.push_back(QVec{0, 0, 0, 1});
      roots.push_back(QVec{h, -h, -h, -h});
      break;
    }
    case 'E': {
      Rational h(1, 2);
      roots.push_back(QVec{h, -h, -h, -h, -h, -h, -h, h});
      roots.push_back(QVec{1, 1, 0, 0, 0, 0, 0, 0});
      for (std::size_t i = 0; i < 6; ++i) roots.push_back(diff(8, i + 1, i));
      roots.resize(n);
      break;
    }
    default:
      break;
  }
  return roots;
}

}  // namespace

// ---------------------------------------------------------------- CartanDatum

CartanDatum CartanDatum::from_type(std::string_view label, std::size_t max_rank) {
  std::string s;
  for (char c : label)
    if (c != '_' && !std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 2 || !std::isalpha(static_cast<unsigned char>(s[0])))
    throw FormatError("unrecognized Cartan type '" + std::string(label) + "'");
  const char family = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  const std::string digits = s.substr(1);
  if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw FormatError("unrecognized Cartan type '" + std::string(label) + "'");
  const std::size_t n = std::stoul(digits);
  bool ok = false;
  switch (family) {
    case 'A': ok = n >= 1; break;
    case 'B': ok = n >= 2; break;
    case 'C': ok = n >= 2; break;
    case 'D': ok = n >= 4; break;
    case 'E': ok = n >= 6 && n <= 8; break;
    case 'F': ok = n == 4; break;
    case 'G': ok = n == 2; break;
    default: break;
  }
  if (!ok) throw FormatError("unsupported Cartan type '" + std::string(label) + "'");
  if (n > max_rank)
    throw FormatError("rank " + std::to_string(n) + " exceeds the configured limit " + std::to_string(max_rank));

  auto roots = classical_roots(family, n);
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational e = 2 * dot(roots[i], roots[j]) / dot(roots[j], roots[j]);
      a[i][j] = e.get_num().get_si();
    }
  CartanDatum d = from_matrix(a);
  d.label_ = std::string(1, family) + std::to_string(n);
  d.ambient_roots_ = std::move(roots);
  d.ambient_fw_.assign(n, QVec{});
  for (std::size_t i = 0; i < n; ++i) {
    QVec w = zeros(d.ambient_roots_[0].size());
    for (std::size_t j = 0; j < n; ++j) w = w + d.inv_[i][j] * d.ambient_roots_[j];
    d.ambient_fw_[i] = w;
  }
  return d;
}

CartanDatum CartanDatum::from_matrix(const std::vector<std::vector<std::int64_t>>& matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) throw FormatError("empty Cartan matrix");
  for (const auto& row : matrix)
    if (row.size() != n) throw FormatError("Cartan matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j && matrix[i][j] != 2)
        throw CartanError("diagonal entry a_" + std::to_string(i + 1) + std::to_string(i + 1) + " is not 2");
      if (i != j && matrix[i][j] > 0)
        throw CartanError("off-diagonal entry a_" + std::to_string(i + 1) + std::to_string(j + 1) + " is positive");
      if (i != j && (matrix[i][j] == 0) != (matrix[j][i] == 0))
        throw CartanError("a_" + std::to_string(i + 1) + std::to_string(j + 1) + " and a_" + std::to_string(j + 1) +
                          std::to_string(i + 1) + " are not simultaneously zero");
    }
  // Connectivity of the Dynkin graph.
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    auto i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < n; ++j)
      if (!seen[j] && matrix[i][j] != 0) {
        seen[j] = true;
        queue.push_back(j);
      }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw CartanError("Cartan matrix is decomposable");

  // Finite type: every principal minor is positive.
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    std::vector<std::vector<Rational>> sub(idx.size(), std::vector<Rational>(idx.size()));
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) sub[r][c] = Rational(static_cast<long>(matrix[idx[r]][idx[c]]));
    Integer det = determinant(std::move(sub));
    if (det <= 0) {
      std::string rows;
      for (auto i : idx) rows += (rows.empty() ? "" : ",") + std::to_string(i + 1);
      throw CartanError("not of finite type: principal minor on rows {" + rows + "} has determinant " +
                        det.get_str());
    }
  }

  CartanDatum d;
  d.n_ = n;
  d.a_ = matrix;
  d.label_ = "custom";
  {
    std::vector<std::vector<Rational>> full(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) full[i][j] = Rational(static_cast<long>(matrix[i][j]));
    d.det_ = determinant(std::move(full)).get_si();
  }
  d.inv_ = invert(matrix);
  for (std::size_t i = 0; i < n; ++i) d.ambient_roots_.push_back(unit(n, i));
  d.finish();
  return d;
}

CartanDatum CartanDatum::parse(std::string_view spec, std::size_t max_rank) {
  auto first = spec.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && spec[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(spec);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("Cartan matrix is not valid JSON: ") + e.what());
    }
    std::vector<std::vector<std::int64_t>> m;
    if (!j.is_array()) throw FormatError("Cartan matrix must be an array of arrays");
    for (const auto& row : j) {
      if (!row.is_array()) throw FormatError("Cartan matrix must be an array of arrays");
      std::vector<std::int64_t> r;
      for (const auto& x : row) {
        if (!x.is_number_integer()) throw FormatError("Cartan matrix entries must be integers");
        r.push_back(x.get<std::int64_t>());
      }
      m.push_back(std::move(r));
    }
    if (m.size() > max_rank)
      throw FormatError("rank " + std::to_string(m.size()) + " exceeds the configured limit " +
                        std::to_string(max_rank));
    return from_matrix(m);
  }
  return from_type(spec, max_rank);
}

void CartanDatum::finish() {
  // Positive roots: closure of the simple roots under simple reflections,
  // keeping the reflected root only while it stays positive.
  std::set<Weight> seen;
  std::deque<Weight> queue;
  for (std::size_t i = 0; i < n_; ++i) {
    seen.insert(simple_root(i));
    queue.push_back(simple_root(i));
  }
  while (!queue.empty()) {
    Weight beta = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < n_; ++i) {
      Weight r = reflect(i, beta);
      QVec rc = root_coords(r);
      if (std::all_of(rc.begin(), rc.end(), [](const Rational& x) { return x >= 0; }) && seen.insert(r).second)
        queue.push_back(r);
    }
  }
  positive_roots_.assign(seen.begin(), seen.end());
  auto height = [this](const Weight& w) {
    Rational h = 0;
    for (const auto& x : root_coords(w)) h += x;
    return h;
  };
  std::sort(positive_roots_.begin(), positive_roots_.end(), [&](const Weight& x, const Weight& y) {
    Rational hx = height(x), hy = height(y);
    if (hx != hy) return hx < hy;
    return QVecLess{}(root_coords(x), root_coords(y));
  });
}

Weight CartanDatum::simple_root(std::size_t i) const { return Weight(a_[i]); }

Weight CartanDatum::fundamental_weight(std::size_t i) const {
  Weight w(n_);
  w[i] = 1;
  return w;
}

Weight CartanDatum::rho() const { return Weight(std::vector<std::int64_t>(n_, 1)); }

QVec CartanDatum::root_coords(const QVec& fw) const {
  QVec r = zeros(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (fw[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) r[j] += fw[i] * inv_[i][j];
  }
  return r;
}

QVec CartanDatum::fw_from_root_coords(const QVec& root) const {
  QVec f = zeros(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    if (root[j] == 0) continue;
    for (std::size_t k = 0; k < n_; ++k) f[k] += root[j] * static_cast<long>(a_[j][k]);
  }
  return f;
}

bool CartanDatum::in_root_lattice(const Weight& w) const {
  auto r = root_coords(w);
  return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x.get_den() == 1; });
}

QVec CartanDatum::reflect(std::size_t i, const QVec& fw) const {
  QVec r(fw);
  const Rational hi = fw[i];
  if (hi == 0) return r;
  for (std::size_t j = 0; j < n_; ++j) r[j] -= hi * static_cast<long>(a_[i][j]);
  return r;
}

Weight CartanDatum::reflect(std::size_t i, const Weight& w) const {
  Weight r(w);
  const auto hi = w[i];
  for (std::size_t j = 0; j < n_; ++j) r[j] -= hi * a_[i][j];
  return r;
}

QVec CartanDatum::to_ambient(const QVec& fw) const {
  if (ambient_fw_.empty()) return root_coords(fw);
  QVec x = zeros(ambient_dim());
  for (std::size_t i = 0; i < n_; ++i)
    if (fw[i] != 0) x = x + fw[i] * ambient_fw_[i];
  return x;
}

QVec CartanDatum::from_ambient(const QVec& x) const {
  if (ambient_fw_.empty()) return fw_from_root_coords(x);
  QVec f(n_);
  for (std::size_t k = 0; k < n_; ++k)
    f[k] = 2 * dot(x, ambient_roots_[k]) / dot(ambient_roots_[k], ambient_roots_[k]);
  return f;
}

// ---------------------------------------------------------------- WeylGroup

namespace {

std::vector<std::int64_t> matmul(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y,
                                 std::size_t n) {
  std::vector<std::int64_t> z(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const auto xik = x[i * n + k];
      if (xik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) z[i * n + j] += xik * y[k * n + j];
    }
  return z;
}

}  // namespace

WeylGroup::WeylGroup(const CartanDatum& datum, std::size_t max_order) : n_(datum.rank()) {
  const std::size_t n = n_;
  std::vector<std::vector<std::int64_t>> gens(n, std::vector<std::int64_t>(n * n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        gens[i][j * n + k] = (j == k ? 1 : 0) - (k == i ? datum.entry(i, j) : 0);

  WeylElement id;
  id.matrix.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) id.matrix[i * n + i] = 1;
  elements_.push_back(id);
  index_.emplace(id.matrix, 0);
  // BFS by length; the first word reaching a matrix is reduced.
  for (std::size_t head = 0; head < elements_.size(); ++head) {
    for (std::size_t i = 0; i < n; ++i) {
      auto m = matmul(gens[i], elements_[head].matrix, n);
      if (index_.count(m)) continue;
      if (elements_.size() >= max_order)
        throw BudgetError("Weyl group order exceeds the budget of " + std::to_string(max_order), elements_.size());
      WeylElement e;
      e.word.push_back(static_cast<int>(i));
      e.word.insert(e.word.end(), elements_[head].word.begin(), elements_[head].word.end());
      e.matrix = std::move(m);
      e.sign = -elements_[head].sign;
      index_.emplace(e.matrix, elements_.size());
      elements_.push_back(std::move(e));
    }
  }
  simple_.resize(n);
  for (std::size_t i = 0; i < n; ++i) simple_[i] = index_.at(gens[i]);
}

std::size_t WeylGroup::find(const std::vector<std::int64_t>& matrix) const {
  auto it = index_.find(matrix);
  if (it == index_.end()) throw std::out_of_range("matrix is not a Weyl group element");
  return it->second;
}

std::size_t WeylGroup::compose(std::size_t a, std::size_t b) const {
  return find(matmul(elements_[a].matrix, elements_[b].matrix, n_));
}

std::size_t WeylGroup::inverse(std::size_t a) const {
  // Reverse the reduced word.
  std::size_t w = identity();
  for (int i : elements_[a].word) w = compose(simple_[static_cast<std::size_t>(i)], w);
  return w;
}

Weight WeylGroup::act(std::size_t w, const Weight& beta) const {
  const auto& m = elements_[w].matrix;
  Weight r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < n_; ++j) s += m[i * n_ + j] * beta[j];
    r[i] = s;
  }
  return r;
}

QVec WeylGroup::act(std::size_t w, const QVec& fw) const {
  const auto& m = elements_[w].matrix;
  QVec r = zeros(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (m[i * n_ + j] != 0) r[i] += fw[j] * static_cast<long>(m[i * n_ + j]);
  return r;
}

}  // namespace lpath
