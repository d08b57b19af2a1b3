#pragma once

// Sparse Laurent polynomials in tau_1..tau_n with rational exponents, exact
// evaluation points, characters S_lambda, the Weyl numerator and psi.

#include "lpath/crystal.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

namespace lpath {

/// tau outside the admissible region, or a fractional power requested without roots.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation point. Optionally carries u with u_i^degree = tau_i so that
/// monomials with exponents in (1/degree)Z evaluate exactly.
class TauPoint {
 public:
  TauPoint() = default;
  explicit TauPoint(QVec values) : values_(std::move(values)) {}
  /// roots[i] = 0 marks a coordinate without a known root; the others must satisfy roots[i]^degree = values[i].
  TauPoint(QVec values, QVec roots, long degree);
  static TauPoint from_roots(QVec roots, long degree);

  std::size_t size() const { return values_.size(); }
  const QVec& values() const { return values_; }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  bool has_roots() const { return !roots_.empty(); }
  const QVec& roots() const { return roots_; }
  long degree() const { return degree_; }

  /// Every tau_i in the open interval (0,1).
  bool in_domain() const;
  void require_domain() const;

  /// tau^x for an exponent vector x; throws DomainError if x is fractional and no roots are known.
  Rational monomial(const QVec& exponent) const;

  std::string str() const;

 private:
  QVec values_;
  QVec roots_;
  long degree_ = 1;
};

class ExponentPolynomial {
 public:
  using Terms = std::map<QVec, Rational, QVecLess>;

  explicit ExponentPolynomial(std::size_t nvars = 0) : n_(nvars) {}
  static ExponentPolynomial constant(std::size_t nvars, const Rational& c);
  static ExponentPolynomial monomial(const QVec& exponent, const Rational& coefficient = 1);

  std::size_t nvars() const { return n_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const QVec& exponent) const;

  void add_term(const QVec& exponent, const Rational& coefficient);
  ExponentPolynomial shifted(const QVec& exponent) const;  ///< multiplied by tau^exponent

  ExponentPolynomial& operator+=(const ExponentPolynomial& o);
  ExponentPolynomial& operator-=(const ExponentPolynomial& o);
  ExponentPolynomial operator+(const ExponentPolynomial& o) const;
  ExponentPolynomial operator-(const ExponentPolynomial& o) const;
  ExponentPolynomial operator*(const ExponentPolynomial& o) const;
  ExponentPolynomial operator*(const Rational& c) const;
  bool operator==(const ExponentPolynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  /// True when all exponents are nonnegative integers.
  bool in_positive_cone() const;
  Rational evaluate(const TauPoint& tau) const;

  /// Canonical text: terms ordered by total degree then lexicographically, e.g. "1 - t1 + t1^2*t2^(1/2)".
  std::string str(const std::string& var = "t") const;

 private:
  std::size_t n_;
  Terms terms_;
};

/// S = sum over nodes of a_kappa tau^{kappa_ref - wt}, kappa_ref the first
/// component's highest weight (S_kappa for an irreducible crystal).
ExponentPolynomial character_poly(const CrystalGraph& crystal);
/// Sigma_M = sum over nodes of a_kappa tau^{-wt}; exponents may be fractional.
ExponentPolynomial module_character(const CrystalGraph& crystal);
/// sum of a_kappa x^{wt} with exponents in fundamental-weight coordinates.
ExponentPolynomial formal_character(const CrystalGraph& crystal);

/// prod over positive roots of (1 - tau^alpha).
ExponentPolynomial positive_root_product(const CartanDatum& datum);
/// sum_w sign(w) tau^{mu + rho - w(mu + rho)}.
ExponentPolynomial weyl_numerator(const Weight& mu, const CartanDatum& datum, const WeylGroup& group);

/// Characters S_mu generated on demand from straight-line crystals. Thread safe.
class CharacterCache {
 public:
  explicit CharacterCache(const CartanDatum& datum, std::size_t budget = 200000);

  const CartanDatum& datum() const { return datum_; }
  const ExponentPolynomial& character(const Weight& mu);
  const ExponentPolynomial& root_product() const { return product_; }
  /// prod(1 - tau^alpha) * S_mu as a polynomial.
  ExponentPolynomial psi_poly(const Weight& mu);

 private:
  CartanDatum datum_;
  std::size_t budget_;
  ExponentPolynomial product_;
  std::mutex mu_;
  std::map<Weight, std::unique_ptr<ExponentPolynomial>> cache_;
};

/// Memoized evaluation of S_mu(tau) and psi(mu) at one point.
class CharacterEvaluator {
 public:
  /// Throws DomainError unless tau lies in the admissible region.
  CharacterEvaluator(CharacterCache& cache, TauPoint tau);

  const TauPoint& tau() const { return tau_; }
  const Rational& S(const Weight& mu);
  Rational psi(const Weight& mu);
  const Rational& root_product() const { return product_; }

 private:
  CharacterCache& cache_;
  TauPoint tau_;
  Rational product_;
  std::map<Weight, Rational> values_;
};

Rational psi(CharacterCache& cache, const Weight& mu, const TauPoint& tau);
Rational sigma_M(const CrystalGraph& module, const TauPoint& tau);

/// sum_lambda f^ell_{lambda/mu} tau^{ell kappa + w(mu) - w(lambda)} / S^ell, with the
/// module normalization when the step crystal has several components.
Rational psi_ell_twisted(const CrystalGraph& steps, const WeylGroup& group, std::size_t w, const Weight& mu,
                         const TauPoint& tau, std::size_t ell, const Multiplicities& f);
Rational psi_ell(const CrystalGraph& steps, const Weight& mu, const TauPoint& tau, std::size_t ell,
                 const Multiplicities& f);
Rational psi_ell(const CrystalGraph& steps, const Weight& mu, const TauPoint& tau, std::size_t ell);

/// sum_lambda f^ell_{lambda/mu} tau^{ell kappa + rho + mu - w(lambda + rho)} / S^ell.
Rational Pi_ell(const CrystalGraph& steps, const WeylGroup& group, std::size_t w, const Weight& mu,
                const TauPoint& tau, std::size_t ell, const Multiplicities& f);
/// sum_w sign(w) Pi_ell^w(mu).
Rational alternating_Pi_ell(const CrystalGraph& steps, const WeylGroup& group, const Weight& mu,
                            const TauPoint& tau, std::size_t ell, const Multiplicities& f);

}  // namespace lpath
