#include "lpath/charalg.hpp"

#include <algorithm>
#include <sstream>

namespace lpath {

// ---------------------------------------------------------------- TauPoint

TauPoint TauPoint::from_roots(QVec roots, long degree) {
  if (degree < 1) throw std::invalid_argument("root degree must be positive");
  TauPoint t;
  for (const auto& u : roots) t.values_.push_back(pow(u, degree));
  t.roots_ = std::move(roots);
  t.degree_ = degree;
  return t;
}

TauPoint::TauPoint(QVec values, QVec roots, long degree)
    : values_(std::move(values)), roots_(std::move(roots)), degree_(degree) {
  if (degree < 1) throw std::invalid_argument("root degree must be positive");
  if (roots_.size() != values_.size()) throw std::invalid_argument("tau and its roots differ in length");
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (roots_[i] != 0 && (roots_[i] < 0 || pow(roots_[i], degree) != values_[i]))
      throw std::invalid_argument("root " + roots_[i].get_str() + " does not satisfy u^" + std::to_string(degree) +
                                  " = " + values_[i].get_str());
}

bool TauPoint::in_domain() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& x) { return x > 0 && x < 1; });
}

void TauPoint::require_domain() const {
  if (!in_domain()) throw DomainError("tau = " + str() + " is outside the open unit cube");
}

Rational TauPoint::monomial(const QVec& exponent) const {
  if (exponent.size() != values_.size()) throw std::invalid_argument("exponent has the wrong length");
  Rational out = 1;
  for (std::size_t i = 0; i < exponent.size(); ++i) {
    const Rational& e = exponent[i];
    if (e == 0) continue;
    if (e.get_den() == 1) {
      out *= pow(values_[i], e.get_num().get_si());
      continue;
    }
    Rational scaled = e * degree_;
    if (roots_.empty() || roots_[i] == 0 || scaled.get_den() != 1)
      throw DomainError("evaluating tau^" + to_string(exponent) + " exactly needs roots of tau of order " +
                        e.get_den().get_str());
    out *= pow(roots_[i], scaled.get_num().get_si());
  }
  return out;
}

std::string TauPoint::str() const {
  std::string out = to_string(values_);
  if (has_roots()) out += " (roots " + to_string(roots_) + ", degree " + std::to_string(degree_) + ")";
  return out;
}

// ---------------------------------------------------------------- ExponentPolynomial

ExponentPolynomial ExponentPolynomial::constant(std::size_t nvars, const Rational& c) {
  ExponentPolynomial p(nvars);
  p.add_term(zeros(nvars), c);
  return p;
}

ExponentPolynomial ExponentPolynomial::monomial(const QVec& exponent, const Rational& coefficient) {
  ExponentPolynomial p(exponent.size());
  p.add_term(exponent, coefficient);
  return p;
}

Rational ExponentPolynomial::coefficient(const QVec& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

void ExponentPolynomial::add_term(const QVec& exponent, const Rational& coefficient) {
  if (exponent.size() != n_) throw std::invalid_argument("exponent has the wrong number of variables");
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(exponent, coefficient);
  if (inserted) return;
  it->second += coefficient;
  if (it->second == 0) terms_.erase(it);
}

ExponentPolynomial ExponentPolynomial::shifted(const QVec& exponent) const {
  ExponentPolynomial out(n_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e + exponent, c);
  return out;
}

ExponentPolynomial& ExponentPolynomial::operator+=(const ExponentPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

ExponentPolynomial& ExponentPolynomial::operator-=(const ExponentPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

ExponentPolynomial ExponentPolynomial::operator+(const ExponentPolynomial& o) const {
  ExponentPolynomial out = *this;
  return out += o;
}

ExponentPolynomial ExponentPolynomial::operator-(const ExponentPolynomial& o) const {
  ExponentPolynomial out = *this;
  return out -= o;
}

ExponentPolynomial ExponentPolynomial::operator*(const ExponentPolynomial& o) const {
  ExponentPolynomial out(n_);
  for (const auto& [a, x] : terms_)
    for (const auto& [b, y] : o.terms_) out.add_term(a + b, x * y);
  return out;
}

ExponentPolynomial ExponentPolynomial::operator*(const Rational& c) const {
  ExponentPolynomial out(n_);
  if (c == 0) return out;
  for (const auto& [e, x] : terms_) out.terms_.emplace(e, x * c);
  return out;
}

bool ExponentPolynomial::in_positive_cone() const {
  for (const auto& [e, c] : terms_)
    for (const auto& x : e)
      if (x < 0 || x.get_den() != 1) return false;
  return true;
}

Rational ExponentPolynomial::evaluate(const TauPoint& tau) const {
  Rational out = 0;
  for (const auto& [e, c] : terms_) out += c * tau.monomial(e);
  return out;
}

std::string ExponentPolynomial::str(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<QVec, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    Rational da = 0, db = 0;
    for (const auto& x : a.first) da += x;
    for (const auto& x : b.first) db += x;
    return da < db;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : sorted) {
    Rational mag = abs(c);
    if (first)
      out << (c < 0 ? "-" : "");
    else
      out << (c < 0 ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var + std::to_string(i + 1);
      if (e[i] == 1) continue;
      if (e[i].get_den() == 1 && e[i] > 0)
        mono += "^" + e[i].get_str();
      else
        mono += "^(" + e[i].get_str() + ")";
    }
    if (mono.empty())
      out << mag.get_str();
    else if (mag == 1)
      out << mono;
    else
      out << mag.get_str() << "*" << mono;
  }
  return out.str();
}

// ---------------------------------------------------------------- characters

ExponentPolynomial character_poly(const CrystalGraph& crystal) {
  const auto& datum = crystal.datum();
  const Weight ref = crystal.components().front().highest_weight;
  ExponentPolynomial s(crystal.rank());
  for (std::size_t k = 0; k < crystal.size(); ++k)
    s.add_term(datum.root_coords(ref - crystal.node(k).weight), Rational(crystal.multiplicity_of(k)));
  return s;
}

ExponentPolynomial module_character(const CrystalGraph& crystal) {
  const auto& datum = crystal.datum();
  ExponentPolynomial s(crystal.rank());
  for (std::size_t k = 0; k < crystal.size(); ++k)
    s.add_term(datum.root_coords(-crystal.node(k).weight), Rational(crystal.multiplicity_of(k)));
  return s;
}

ExponentPolynomial formal_character(const CrystalGraph& crystal) {
  ExponentPolynomial s(crystal.rank());
  for (std::size_t k = 0; k < crystal.size(); ++k)
    s.add_term(crystal.node(k).weight.to_qvec(), Rational(crystal.multiplicity_of(k)));
  return s;
}

ExponentPolynomial positive_root_product(const CartanDatum& datum) {
  const std::size_t n = datum.rank();
  ExponentPolynomial out = ExponentPolynomial::constant(n, 1);
  for (const auto& alpha : datum.positive_roots()) {
    ExponentPolynomial factor = ExponentPolynomial::constant(n, 1);
    factor.add_term(datum.root_coords(alpha), -1);
    out = out * factor;
  }
  return out;
}

ExponentPolynomial weyl_numerator(const Weight& mu, const CartanDatum& datum, const WeylGroup& group) {
  const Weight shifted = mu + datum.rho();
  ExponentPolynomial out(datum.rank());
  for (std::size_t w = 0; w < group.size(); ++w)
    out.add_term(datum.root_coords(shifted - group.act(w, shifted)), Rational(group[w].sign));
  return out;
}

CharacterCache::CharacterCache(const CartanDatum& datum, std::size_t budget)
    : datum_(datum), budget_(budget), product_(positive_root_product(datum)) {}

const ExponentPolynomial& CharacterCache::character(const Weight& mu) {
  if (!mu.is_dominant()) throw std::invalid_argument("character of non-dominant weight " + mu.str());
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(mu);
  if (it != cache_.end()) return *it->second;
  const auto path = mu.is_zero() ? PiecewisePath::constant(mu.rank()) : PiecewisePath::line(mu);
  auto poly = std::make_unique<ExponentPolynomial>(character_poly(generate_crystal(datum_, path, budget_)));
  return *cache_.emplace(mu, std::move(poly)).first->second;
}

ExponentPolynomial CharacterCache::psi_poly(const Weight& mu) { return product_ * character(mu); }

CharacterEvaluator::CharacterEvaluator(CharacterCache& cache, TauPoint tau) : cache_(cache), tau_(std::move(tau)) {
  if (tau_.size() != cache.datum().rank()) throw std::invalid_argument("tau has the wrong number of coordinates");
  tau_.require_domain();
  product_ = cache.root_product().evaluate(tau_);
}

const Rational& CharacterEvaluator::S(const Weight& mu) {
  auto it = values_.find(mu);
  if (it != values_.end()) return it->second;
  return values_.emplace(mu, cache_.character(mu).evaluate(tau_)).first->second;
}

Rational CharacterEvaluator::psi(const Weight& mu) { return product_ * S(mu); }

Rational psi(CharacterCache& cache, const Weight& mu, const TauPoint& tau) {
  CharacterEvaluator eval(cache, tau);
  return eval.psi(mu);
}

Rational sigma_M(const CrystalGraph& module, const TauPoint& tau) {
  tau.require_domain();
  return module_character(module).evaluate(tau);
}

// ---------------------------------------------------------------- finite-ell sums

namespace {

// Normalizer tau^{kappa_ref} Sigma_M and the exponent offset ell * kappa_ref.
struct StepNormalizer {
  Rational power;  ///< (tau^{kappa_ref} Sigma_M)^ell
  QVec offset;     ///< root coordinates of ell * kappa_ref
};

StepNormalizer normalizer(const CrystalGraph& steps, const TauPoint& tau, std::size_t ell) {
  tau.require_domain();
  const auto& datum = steps.datum();
  const Weight ref = steps.components().front().highest_weight;
  Rational s = character_poly(steps).evaluate(tau);
  return {pow(s, static_cast<long>(ell)), datum.root_coords(ref * static_cast<std::int64_t>(ell))};
}

}  // namespace

Rational psi_ell_twisted(const CrystalGraph& steps, const WeylGroup& group, std::size_t w, const Weight& mu,
                         const TauPoint& tau, std::size_t ell, const Multiplicities& f) {
  const auto& datum = steps.datum();
  auto norm = normalizer(steps, tau, ell);
  Rational sum = 0;
  for (const auto& [lambda, count] : f)
    sum += Rational(count) * tau.monomial(norm.offset + datum.root_coords(group.act(w, mu - lambda)));
  return sum / norm.power;
}

Rational psi_ell(const CrystalGraph& steps, const Weight& mu, const TauPoint& tau, std::size_t ell,
                 const Multiplicities& f) {
  const auto& datum = steps.datum();
  auto norm = normalizer(steps, tau, ell);
  Rational sum = 0;
  for (const auto& [lambda, count] : f) sum += Rational(count) * tau.monomial(norm.offset + datum.root_coords(mu - lambda));
  return sum / norm.power;
}

Rational psi_ell(const CrystalGraph& steps, const Weight& mu, const TauPoint& tau, std::size_t ell) {
  return psi_ell(steps, mu, tau, ell, count_f_multiplicity(steps, mu, ell)[ell]);
}

Rational Pi_ell(const CrystalGraph& steps, const WeylGroup& group, std::size_t w, const Weight& mu,
                const TauPoint& tau, std::size_t ell, const Multiplicities& f) {
  const auto& datum = steps.datum();
  auto norm = normalizer(steps, tau, ell);
  const Weight rho = datum.rho();
  Rational sum = 0;
  for (const auto& [lambda, count] : f)
    sum += Rational(count) *
           tau.monomial(norm.offset + datum.root_coords(rho + mu - group.act(w, lambda + rho)));
  return sum / norm.power;
}

Rational alternating_Pi_ell(const CrystalGraph& steps, const WeylGroup& group, const Weight& mu,
                            const TauPoint& tau, std::size_t ell, const Multiplicities& f) {
  Rational sum = 0;
  for (std::size_t w = 0; w < group.size(); ++w) sum += group[w].sign * Pi_ell(steps, group, w, mu, tau, ell, f);
  return sum;
}

}  // namespace lpath
