#include "onsager/criteria.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "onsager/error.hpp"

namespace onsager {

namespace {

std::int64_t parse_integer(std::string_view digits, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw InvalidArgument("cannot parse number '" + std::string(whole) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto den = parse_integer(s.substr(slash + 1), s);
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(s) + "'");
    return Rational(parse_integer(s.substr(0, slash), s), den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = s.substr(dot + 1);
    if (frac.size() > 15) throw InvalidArgument("too many decimals in '" + std::string(s) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const bool negative = !s.empty() && s.front() == '-';
    std::string_view int_part = s.substr(0, dot);
    if (negative || (!int_part.empty() && int_part.front() == '+')) int_part.remove_prefix(1);
    const std::int64_t whole = int_part.empty() ? 0 : parse_integer(int_part, s);
    const std::int64_t part = frac.empty() ? 0 : parse_integer(frac, s);
    const Rational r = Rational(whole) + Rational(part, scale);
    return negative ? -r : r;
  }
  return Rational(parse_integer(s.front() == '+' ? s.substr(1) : s, s));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Exponent Exponent::of(const Rational& value) {
  require(value >= Rational(1), "integrability exponents must be >= 1");
  return Exponent(1 / value);
}

Exponent Exponent::parse(std::string_view text) {
  std::string s(trim(text));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "inf" || s == "infinity" || s == "+inf") return infinity();
  return of(parse_rational(s));
}

Rational Exponent::value() const {
  require(!is_infinite(), "infinite exponent has no finite value");
  return 1 / reciprocal_;
}

std::string Exponent::str() const { return is_infinite() ? "inf" : to_string(value()); }

void CriterionParams::validate() const {
  require(gamma > Rational(1), "gamma must exceed 1");
  require(d >= 1, "dimension must be >= 1");
  require(Exponent::of(3) <= p, "p must be >= 3");
  require(Exponent::of(3) <= q, "q must be >= 3");
  require(alpha > Rational(0) && alpha < Rational(1), "alpha must lie in (0, 1)");
  if (beta) require(*beta > Rational(0) && *beta < Rational(1), "beta must lie in (0, 1)");
  require(rho_floor >= Rational(0), "the density floor must be >= 0");
}

const Inequality* Verdict::find(std::string_view name) const {
  for (const auto& item : items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

nlohmann::json Verdict::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& i : items) {
    list.push_back({{"name", i.name},
                    {"relation", i.relation},
                    {"supplied", i.supplied},
                    {"threshold", i.threshold},
                    {"pass", i.pass},
                    {"informational", i.informational}});
  }
  return {{"check", check}, {"pass", pass}, {"inequalities", list}};
}

namespace {

// Threshold on an exponent expressed as the largest admissible reciprocal.
// A negative bound means no exponent satisfies the requirement.
std::string threshold_text(const Rational& bound) {
  if (bound < Rational(0)) return "unattainable";
  if (bound == Rational(0)) return "inf";
  return to_string(1 / bound);
}

Inequality at_least(std::string name, const Exponent& supplied, const Rational& bound) {
  return {std::move(name), ">=", supplied.str(), threshold_text(bound), bound >= Rational(0) && supplied.reciprocal() <= bound,
          false};
}

Inequality at_least(std::string name, const std::optional<Exponent>& supplied, const Rational& bound) {
  if (!supplied) return {std::move(name), ">=", "missing", threshold_text(bound), false, false};
  return at_least(std::move(name), *supplied, bound);
}

Inequality above_three(std::string name, const Exponent& e, bool endpoint_allowed) {
  const Rational third(1, 3);
  const bool pass = endpoint_allowed ? e.reciprocal() <= third : e.reciprocal() < third;
  return {std::move(name), endpoint_allowed ? ">=" : ">", e.str(), "3", pass, false};
}

Rational min_of(std::initializer_list<Rational> values) { return std::min(values); }

struct Common {
  Rational ip, iq, g1;
};

Common common(const CriterionParams& c) { return {c.p.reciprocal(), c.q.reciprocal(), c.gamma - 1}; }

void add_velocity_items(Verdict& v, const CriterionParams& c) {
  v.items.push_back(above_three("p", c.p, c.allow_endpoint));
  v.items.push_back(above_three("q", c.q, c.allow_endpoint));
  v.items.push_back({"alpha", ">", to_string(c.alpha), "1/3", c.alpha > Rational(1, 3), false});
}

void add_floor_item(Verdict& v, const CriterionParams& c, bool vacuum) {
  v.items.push_back({"rho_floor", vacuum ? ">=" : ">", to_string(c.rho_floor), "0",
                     vacuum ? c.rho_floor >= Rational(0) : c.rho_floor > Rational(0), false});
}

void add_mixed(Verdict& v, const std::string& name, const std::optional<MixedExponent>& e, const Rational& time_bound,
               const Rational& space_bound) {
  v.items.push_back(at_least(name + ".time", e ? std::optional(e->time) : std::nullopt, time_bound));
  v.items.push_back(at_least(name + ".space", e ? std::optional(e->space) : std::nullopt, space_bound));
}

void finish(Verdict& v) {
  v.pass = std::all_of(v.items.begin(), v.items.end(), [](const Inequality& i) { return i.informational || i.pass; });
}

// Shared by the global and vacuum checks.
void add_global_items(Verdict& v, const CriterionParams& c) {
  const auto [ip, iq, g1] = common(c);
  const Rational d(c.d);
  // q > d(p-3)/2, multiplied through by 2/(p q) > 0.
  const Rational margin = 2 * ip - d * iq + 3 * d * ip * iq;
  const std::string q_threshold = c.p.is_infinite() ? "inf" : to_string(d * (c.p.value() - 3) / 2);
  v.items.push_back({"q_vs_p", ">", c.q.str(), q_threshold, margin > Rational(0), false});

  // Third k threshold (gamma-1)(d+q)p / (2q - d(p-3)), as a reciprocal.
  const Rational third = margin > Rational(0) ? margin / (g1 * (d * iq + 1)) : Rational(-1);
  v.items.push_back(at_least("k", c.k, min_of({1 - 3 * ip, 2 * ip / g1, third})));
  v.items.push_back(at_least("l", c.l, min_of({1 - 3 * iq, 2 * iq / g1})));

  const Rational ik = c.k.reciprocal(), il = c.l.reciprocal();
  const Rational sqrt_time = 1 - 3 * ip - ik / 2;
  const Rational sqrt_space = 1 - 3 * iq - il / 2;
  add_mixed(v, "grad_sqrt_rho", c.grad_sqrt_rho, sqrt_time, sqrt_space);
  add_mixed(v, "dt_sqrt_rho", c.dt_sqrt_rho, sqrt_time, sqrt_space);
  v.items.push_back(at_least("v0", c.v0, min_of({g1 / (2 * c.gamma), 2 * iq})));
}

}  // namespace

Verdict check_local(const CriterionParams& c) {
  c.validate();
  Verdict v{"local", false, {}};
  const auto [ip, iq, g1] = common(c);
  add_velocity_items(v, c);
  add_floor_item(v, c, false);
  v.items.push_back(at_least("k", c.k, min_of({1 - 3 * ip, 2 * ip / g1})));
  v.items.push_back(at_least("l", c.l, min_of({1 - 3 * iq, 2 * iq / g1})));
  add_mixed(v, "grad_rho", c.grad_rho, 1 - 3 * ip, 1 - 3 * iq);
  add_mixed(v, "dt_rho", c.dt_rho, 1 - 3 * ip, 1 - 3 * iq);
  // The energy estimate itself only uses p/(p-2), q/(q-2) for these
  // quantities; shown for reference.
  const std::size_t first_info = v.items.size();
  add_mixed(v, "grad_rho.estimate", c.grad_rho, 1 - 2 * ip, 1 - 2 * iq);
  add_mixed(v, "dt_rho.estimate", c.dt_rho, 1 - 2 * ip, 1 - 2 * iq);
  for (std::size_t i = first_info; i < v.items.size(); ++i) v.items[i].informational = true;
  finish(v);
  return v;
}

Verdict check_global(const CriterionParams& c) {
  c.validate();
  Verdict v{"global", false, {}};
  add_velocity_items(v, c);
  add_floor_item(v, c, false);
  add_global_items(v, c);
  finish(v);
  return v;
}

Verdict check_vacuum(const CriterionParams& c) {
  c.validate();
  Verdict v{"vacuum", false, {}};
  add_velocity_items(v, c);
  add_floor_item(v, c, true);
  if (c.beta) {
    v.items.push_back({"beta", ">=", to_string(*c.beta), to_string(c.alpha), *c.beta >= c.alpha, false});
  } else {
    v.items.push_back({"beta", ">=", "missing", to_string(c.alpha), false, false});
  }
  add_global_items(v, c);
  finish(v);
  return v;
}

}  // namespace onsager
