#include "adelic/local_elem.hpp"

namespace adelic {

namespace {

RatFn laurent_to_ratfn(const TruncSeries& s) {
  const Field& k = s.field();
  if (s.known_zero()) return RatFn(k);
  const std::int64_t v = s.first_exp();
  Poly body(k.zero(), s.raw());
  if (v >= 0) return RatFn(body.shifted(static_cast<std::size_t>(v)));
  return RatFn(body, poly_x(k).pow(static_cast<unsigned>(-v)));
}

bool is_laurent(const RatFn& f) { return f.den().degree() == f.den().order(); }

}  // namespace

LocalElem::LocalElem(const TruncSeries& s) {
  if (s.is_exact())
    v_ = laurent_to_ratfn(s);
  else
    v_ = s;
}

const Field& LocalElem::field() const {
  return is_exact() ? exact().field() : approx().field();
}

TruncSeries LocalElem::series(std::int64_t precision) const {
  if (is_exact()) return TruncSeries::expand(exact(), precision);
  return approx().truncated(precision);
}

TruncSeries LocalElem::series_rel(std::int64_t rel) const {
  if (is_exact()) {
    if (exact().is_zero()) return TruncSeries::zero(field());
    return TruncSeries::expand(exact(), prec_add(exact().order_at_zero(), rel));
  }
  return approx();
}

std::int64_t LocalElem::precision() const { return is_exact() ? kExact : approx().precision(); }

bool LocalElem::is_zero() const { return is_exact() ? exact().is_zero() : approx().is_zero(); }

bool LocalElem::known_zero() const { return is_exact() ? exact().is_zero() : approx().known_zero(); }

std::int64_t LocalElem::valuation() const {
  if (is_exact()) return exact().order_at_zero();
  return approx().valuation();
}

std::int64_t LocalElem::valuation_bound() const {
  if (is_exact()) return exact().is_zero() ? kExact : exact().order_at_zero();
  return approx().valuation_bound();
}

FieldElem LocalElem::leading() const {
  if (is_exact()) return exact().leading_at_zero();
  return approx().leading();
}

LocalElem LocalElem::inverse() const {
  if (is_exact()) return LocalElem(exact().inverse());
  return LocalElem(approx().inverse());
}

LocalElem LocalElem::pow(std::int64_t e) const {
  if (is_exact()) return LocalElem(exact().pow(e));
  return LocalElem(approx().pow(e));
}

LocalElem LocalElem::operator-() const {
  if (is_exact()) return LocalElem(-exact());
  return LocalElem(-approx());
}

LocalElem operator+(const LocalElem& a, const LocalElem& b) {
  if (a.is_exact() && b.is_exact()) return LocalElem(a.exact() + b.exact());
  const std::int64_t p = std::min(a.precision(), b.precision());
  return LocalElem(a.series(p) + b.series(p));
}

LocalElem operator*(const LocalElem& a, const LocalElem& b) {
  if (a.is_exact() && b.is_exact()) return LocalElem(a.exact() * b.exact());
  if (a.is_zero() || b.is_zero()) return a.zero_like();
  // Expand the exact side so both precision bounds of the product coincide.
  auto approx_times = [](const LocalElem& ex, const LocalElem& ap) {
    const TruncSeries& s = ap.approx();
    const std::int64_t need = s.precision() - s.valuation_bound() + ex.valuation_bound();
    return LocalElem(ex.series(need) * s);
  };
  if (a.is_exact()) return approx_times(a, b);
  if (b.is_exact()) return approx_times(b, a);
  return LocalElem(a.approx() * b.approx());
}

bool LocalElem::operator==(const LocalElem& o) const {
  if (is_exact() != o.is_exact()) return false;
  if (is_exact()) return exact() == o.exact();
  return approx() == o.approx();
}

std::string LocalElem::to_string() const {
  if (!is_exact()) return approx().to_string("t");
  if (is_laurent(exact())) return TruncSeries::expand(exact(), kExact).to_string("t");
  return exact().to_string("t");
}

TruncSeries to_ramified(const LocalElem& a, std::int64_t e, std::int64_t rel) {
  return a.series_rel(rel).inflated(e);
}

}  // namespace adelic
