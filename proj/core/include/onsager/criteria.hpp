#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace onsager {

using Rational = boost::rational<std::int64_t>;

/// Parses "3", "-2", "5/2" or an exact decimal such as "0.35".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Integrability exponent r in [1, inf], stored as its reciprocal 1/r so that
/// inf is the ordinary value 0 and every comparison is exact.
class Exponent {
 public:
  Exponent() = default;
  static Exponent infinity() { return Exponent(Rational(0)); }
  static Exponent of(const Rational& value);
  static Exponent of(std::int64_t value) { return of(Rational(value)); }
  /// "inf" (or "infinity") and anything parse_rational accepts.
  static Exponent parse(std::string_view text);

  bool is_infinite() const noexcept { return reciprocal_ == Rational(0); }
  const Rational& reciprocal() const noexcept { return reciprocal_; }
  /// Finite exponents only.
  Rational value() const;
  std::string str() const;

  /// Ordered by exponent value, inf largest.
  friend bool operator==(const Exponent& a, const Exponent& b) { return a.reciprocal_ == b.reciprocal_; }
  friend bool operator<(const Exponent& a, const Exponent& b) { return a.reciprocal_ > b.reciprocal_; }
  friend bool operator<=(const Exponent& a, const Exponent& b) { return a.reciprocal_ >= b.reciprocal_; }

 private:
  explicit Exponent(Rational reciprocal) : reciprocal_(reciprocal) {}
  Rational reciprocal_{1};
};

/// Exponents of a space-time Lebesgue space L^time(0, T; L^space).
struct MixedExponent {
  Exponent time;
  Exponent space;
};

struct CriterionParams {
  Rational gamma{2};
  int d = 3;
  /// Velocity integrability in time and space.
  Exponent p = Exponent::of(4);
  Exponent q = Exponent::of(4);
  Rational alpha{2, 5};
  /// Temporal Besov exponent, used by the vacuum check.
  std::optional<Rational> beta;
  /// Density integrability in time and space.
  Exponent k = Exponent::infinity();
  Exponent l = Exponent::infinity();
  /// Lower bound c of the density.
  Rational rho_floor{1, 2};
  /// Integrability of grad rho and d_t rho (local check).
  std::optional<MixedExponent> grad_rho;
  std::optional<MixedExponent> dt_rho;
  /// Integrability of grad sqrt(rho) and d_t sqrt(rho) (global and vacuum checks).
  std::optional<MixedExponent> grad_sqrt_rho;
  std::optional<MixedExponent> dt_sqrt_rho;
  std::optional<Exponent> v0;
  /// Admit the endpoint p = 3, q = 3.
  bool allow_endpoint = false;

  /// gamma > 1, d >= 1, p, q >= 3, 0 < alpha < 1, 0 < beta < 1, rho_floor >= 0.
  void validate() const;
};

struct Inequality {
  std::string name;
  /// e.g. ">=", ">", "<=".
  std::string relation;
  std::string supplied;
  std::string threshold;
  bool pass = false;
  /// Reported but not part of the overall verdict.
  bool informational = false;
};

struct Verdict {
  std::string check;
  bool pass = false;
  std::vector<Inequality> items;

  const Inequality* find(std::string_view name) const;
  nlohmann::json to_json() const;
};

/// Energy locally conserved, density bounded below.
Verdict check_local(const CriterionParams& params);
/// Energy globally conserved, density bounded below.
Verdict check_global(const CriterionParams& params);
/// Energy globally conserved with vacuum allowed, v in B^beta_p(B^alpha_q).
Verdict check_vacuum(const CriterionParams& params);

}  // namespace onsager
