#include "adelic/adele.hpp"

#include <set>

namespace adelic {

Adele::Adele(RatFn generic, Overrides overrides) : generic_(std::move(generic)), overrides_(std::move(overrides)) {
  for (const auto& [x, v] : overrides_)
    if (&x.field() != &generic_.field() || &v.field() != &generic_.field())
      throw FieldMismatch("adele override over a different field");
  normalize();
}

void Adele::normalize() {
  for (auto it = overrides_.begin(); it != overrides_.end();) {
    if (it->second.is_exact() && it->second.exact() == germ(generic_, it->first))
      it = overrides_.erase(it);
    else
      ++it;
  }
}

LocalElem Adele::component(const Place& x) const {
  auto it = overrides_.find(x);
  if (it != overrides_.end()) return it->second;
  return LocalElem(germ(generic_, x));
}

std::vector<Place> Adele::override_places() const {
  std::vector<Place> out;
  for (const auto& [x, v] : overrides_) out.push_back(x);
  return out;
}

Adele Adele::inverse() const {
  if (!is_idele(*this)) throw NotAUnit("adele is not an idele: " + to_string());
  Overrides o;
  for (const auto& [x, v] : overrides_) o.emplace(x, v.inverse());
  return Adele(generic_.inverse(), std::move(o));
}

Adele Adele::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  Adele r = one_like(), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Adele Adele::operator-() const {
  Overrides o;
  for (const auto& [x, v] : overrides_) o.emplace(x, -v);
  return Adele(-generic_, std::move(o));
}

namespace {

template <class Op>
Adele combine(const Adele& a, const Adele& b, Op op) {
  if (&a.field() != &b.field()) throw FieldMismatch("adeles over different fields");
  std::set<Place> places;
  for (const auto& [x, v] : a.overrides()) places.insert(x);
  for (const auto& [x, v] : b.overrides()) places.insert(x);
  Adele::Overrides o;
  for (const Place& x : places) o.emplace(x, op(a.component(x), b.component(x)));
  return Adele(op(a.generic(), b.generic()), std::move(o));
}

}  // namespace

Adele operator+(const Adele& a, const Adele& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
}

Adele operator*(const Adele& a, const Adele& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
}

std::string Adele::to_string() const {
  if (overrides_.empty()) return generic_.to_string("u");
  std::string s = "generic: " + generic_.to_string("u");
  for (const auto& [x, v] : overrides_) s += "; at " + x.to_string() + ": " + v.to_string();
  return s;
}

std::vector<Place> adele_support(const Adele& a) {
  std::set<Place> s;
  for (const auto& [x, v] : a.overrides()) s.insert(x);
  if (!a.generic().is_zero()) {
    const Divisor div = ratfn_divisor(a.generic());
    for (const auto& [x, k] : div.support()) s.insert(x);
  }
  return {s.begin(), s.end()};
}

std::int64_t adele_valuation(const Adele& a, const Place& x) {
  auto it = a.overrides().find(x);
  if (it != a.overrides().end()) {
    if (it->second.is_zero()) throw ZeroInput("zero component at " + x.to_string());
    return it->second.valuation();
  }
  if (a.generic().is_zero()) throw ZeroInput("zero component at " + x.to_string());
  return ratfn_valuation(a.generic(), x);
}

bool is_idele(const Adele& a) {
  if (a.generic().is_zero()) return false;
  for (const auto& [x, v] : a.overrides())
    if (v.known_zero()) return false;
  return true;
}

std::int64_t content_idele(const Adele& a) {
  if (!is_idele(a)) throw NotAUnit("content of a non-idele");
  std::int64_t total = 0;
  for (const auto& [x, v] : a.overrides()) total += v.valuation();
  const Divisor div = ratfn_divisor(a.generic());
  for (const auto& [x, k] : div.support())
    if (!a.has_override(x)) total += k;
  return total;
}

namespace {

bool integral_off(const Adele& a, const Divisor& d) {
  for (const auto& [x, v] : a.overrides())
    if (d.support().count(x) == 0 && !v.known_zero() && v.valuation() < 0) return false;
  if (a.generic().is_zero()) return true;
  for (const Place& x : ratfn_poles(a.generic()))
    if (!a.has_override(x) && d.support().count(x) == 0) return false;
  return true;
}

}  // namespace

bool is_integral(const Adele& a) { return integral_off(a, Divisor()); }

bool in_UD(const Adele& a, const Divisor& d) {
  if (!d.is_effective()) throw PreconditionViolation("in_UD needs an effective divisor");
  for (const auto& [x, k] : d.support()) {
    const LocalElem c = a.component(x);
    if (c.is_zero()) continue;
    if (c.valuation_bound() < k) return false;
  }
  return integral_off(a, d);
}

bool sigma_discreteness_probe(const RatFn& f) {
  if (f.is_zero()) return true;
  return ratfn_poles(f).empty();
}

}  // namespace adelic
