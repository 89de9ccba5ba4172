#include "adelic/series.hpp"

#include <algorithm>

namespace adelic {

TruncSeries TruncSeries::zero(const Field& k, std::int64_t precision) {
  TruncSeries s;
  s.field_ = &k;
  s.prec_ = precision;
  return s;
}

TruncSeries TruncSeries::from_coeffs(const Field& k, std::int64_t first_exp, std::vector<FieldElem> c,
                                     std::int64_t precision) {
  TruncSeries s;
  s.field_ = &k;
  s.val_ = first_exp;
  s.c_ = std::move(c);
  s.prec_ = precision;
  s.normalize();
  return s;
}

TruncSeries TruncSeries::monomial(const FieldElem& c, std::int64_t exp) {
  return from_coeffs(c.field(), exp, {c});
}

void TruncSeries::normalize() {
  if (!is_exact()) {
    const std::int64_t keep = prec_ - val_;
    if (keep <= 0)
      c_.clear();
    else if (static_cast<std::int64_t>(c_.size()) > keep)
      c_.resize(static_cast<std::size_t>(keep));
  }
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    val_ = 0;
    return;
  }
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<std::int64_t>(lead);
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

TruncSeries TruncSeries::expand(const RatFn& f, std::int64_t precision) {
  const Field& k = f.field();
  if (f.is_zero()) return zero(k);
  const std::int64_t on = f.num().order(), od = f.den().order();
  const std::int64_t v = on - od;
  std::vector<FieldElem> n(f.num().coeffs().begin() + on, f.num().coeffs().end());
  std::vector<FieldElem> d(f.den().coeffs().begin() + od, f.den().coeffs().end());
  if (d.size() == 1) {
    const FieldElem inv = d[0].inverse();
    for (auto& c : n) c *= inv;
    return from_coeffs(k, v, std::move(n));
  }
  if (precision >= kExact) precision = v + kDefaultRelativePrecision;
  const std::int64_t r = precision - v;
  if (r <= 0) return zero(k, precision);
  std::vector<FieldElem> out(static_cast<std::size_t>(r), k.zero());
  const FieldElem inv0 = d[0].inverse();
  for (std::int64_t i = 0; i < r; ++i) {
    FieldElem acc = static_cast<std::size_t>(i) < n.size() ? n[static_cast<std::size_t>(i)] : k.zero();
    for (std::int64_t j = 1; j <= i && static_cast<std::size_t>(j) < d.size(); ++j)
      acc -= d[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(i - j)];
    out[static_cast<std::size_t>(i)] = acc * inv0;
  }
  return from_coeffs(k, v, std::move(out), precision);
}

std::int64_t TruncSeries::valuation() const {
  if (c_.empty()) {
    if (is_exact()) throw ZeroInput("valuation of zero");
    throw PrecisionExhausted("valuation undetermined: series is zero modulo t^" + std::to_string(prec_));
  }
  return val_;
}

std::int64_t TruncSeries::relative_precision() const {
  if (is_exact()) return kExact;
  return prec_ - valuation_bound();
}

FieldElem TruncSeries::coeff(std::int64_t exp) const {
  if (exp >= prec_) throw PrecisionExhausted("coefficient of t^" + std::to_string(exp) + " beyond precision");
  const std::int64_t i = exp - val_;
  if (c_.empty() || i < 0 || i >= static_cast<std::int64_t>(c_.size())) return field_->zero();
  return c_[static_cast<std::size_t>(i)];
}

FieldElem TruncSeries::leading() const {
  valuation();
  return c_.front();
}

TruncSeries TruncSeries::truncated(std::int64_t precision) const {
  TruncSeries s = *this;
  s.prec_ = std::min(prec_, precision);
  s.normalize();
  return s;
}

TruncSeries TruncSeries::shifted(std::int64_t k) const {
  TruncSeries s = *this;
  if (!s.c_.empty()) s.val_ += k;
  s.prec_ = prec_add(prec_, k);
  return s;
}

TruncSeries TruncSeries::inflated(std::int64_t e) const {
  if (e < 1) throw PreconditionViolation("inflation factor must be positive");
  if (e == 1) return *this;
  TruncSeries s;
  s.field_ = field_;
  s.prec_ = is_exact() ? kExact : prec_ * e;
  if (c_.empty()) return s;
  s.val_ = val_ * e;
  s.c_.assign((c_.size() - 1) * static_cast<std::size_t>(e) + 1, field_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) s.c_[i * static_cast<std::size_t>(e)] = c_[i];
  s.normalize();
  return s;
}

TruncSeries TruncSeries::scaled_variable(const FieldElem& w) const {
  TruncSeries s = *this;
  if (c_.empty()) return s;
  FieldElem pw = w.pow(val_);
  for (auto& c : s.c_) {
    c *= pw;
    pw *= w;
  }
  s.normalize();
  return s;
}

TruncSeries TruncSeries::inverse(std::int64_t rel_prec_if_exact) const {
  if (is_zero()) throw ZeroInput("inverse of zero series");
  const std::int64_t v = valuation();
  if (is_exact() && c_.size() == 1) return monomial(c_[0].inverse(), -v);
  const std::int64_t r = is_exact() ? rel_prec_if_exact : prec_ - v;
  std::vector<FieldElem> out(static_cast<std::size_t>(r), field_->zero());
  const FieldElem inv0 = c_[0].inverse();
  for (std::int64_t i = 0; i < r; ++i) {
    FieldElem acc = i == 0 ? field_->one() : field_->zero();
    for (std::int64_t j = 1; j <= i && static_cast<std::size_t>(j) < c_.size(); ++j)
      acc -= c_[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(i - j)];
    out[static_cast<std::size_t>(i)] = acc * inv0;
  }
  return from_coeffs(*field_, -v, std::move(out), r - v);
}

TruncSeries TruncSeries::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  TruncSeries r = one_like();
  TruncSeries b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries s = *this;
  for (auto& c : s.c_) c = -c;
  return s;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  if (a.field_ != b.field_) throw FieldMismatch("series over different fields");
  const std::int64_t prec = std::min(a.prec_, b.prec_);
  if (a.c_.empty()) return b.truncated(prec);
  if (b.c_.empty()) return a.truncated(prec);
  const std::int64_t lo = std::min(a.val_, b.val_);
  std::int64_t hi = std::max(a.val_ + static_cast<std::int64_t>(a.c_.size()), b.val_ + static_cast<std::int64_t>(b.c_.size()));
  hi = std::min(hi, prec);
  if (hi <= lo) return TruncSeries::zero(*a.field_, prec);
  std::vector<FieldElem> c(static_cast<std::size_t>(hi - lo), a.field_->zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    const std::int64_t e = a.val_ + static_cast<std::int64_t>(i);
    if (e < hi) c[static_cast<std::size_t>(e - lo)] += a.c_[i];
  }
  for (std::size_t i = 0; i < b.c_.size(); ++i) {
    const std::int64_t e = b.val_ + static_cast<std::int64_t>(i);
    if (e < hi) c[static_cast<std::size_t>(e - lo)] += b.c_[i];
  }
  return TruncSeries::from_coeffs(*a.field_, lo, std::move(c), prec);
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  if (a.field_ != b.field_) throw FieldMismatch("series over different fields");
  if (a.is_zero() || b.is_zero()) return TruncSeries::zero(*a.field_);
  const std::int64_t va = a.valuation_bound(), vb = b.valuation_bound();
  const std::int64_t prec = std::min(prec_add(a.prec_, vb), prec_add(b.prec_, va));
  if (a.c_.empty() || b.c_.empty()) return TruncSeries::zero(*a.field_, prec);
  const std::int64_t lo = a.val_ + b.val_;
  std::int64_t n = static_cast<std::int64_t>(a.c_.size() + b.c_.size() - 1);
  if (prec < kExact) n = std::min(n, prec - lo);
  if (n <= 0) return TruncSeries::zero(*a.field_, prec);
  std::vector<FieldElem> c(static_cast<std::size_t>(n), a.field_->zero());
  for (std::size_t i = 0; i < a.c_.size() && static_cast<std::int64_t>(i) < n; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size() && static_cast<std::int64_t>(i + j) < n; ++j)
      c[i + j] += a.c_[i] * b.c_[j];
  }
  return TruncSeries::from_coeffs(*a.field_, lo, std::move(c), prec);
}

TruncSeries TruncSeries::scaled(const FieldElem& c) const {
  if (c.is_zero()) return zero(*field_, is_exact() ? kExact : prec_);
  TruncSeries s = *this;
  for (auto& x : s.c_) x *= c;
  return s;
}

bool TruncSeries::operator==(const TruncSeries& o) const {
  return field_ == o.field_ && prec_ == o.prec_ && c_ == o.c_ && (c_.empty() || val_ == o.val_);
}

bool TruncSeries::agrees_with(const TruncSeries& o) const {
  const std::int64_t p = std::min(prec_, o.prec_);
  TruncSeries d = truncated(p) - o.truncated(p);
  return d.known_zero();
}

std::string TruncSeries::to_string(const std::string& var) const {
  if (c_.empty()) return is_exact() ? "0" : "O(" + var + "^" + std::to_string(prec_) + ")";
  std::vector<std::string> terms;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    std::string coef = c_[i].to_string();
    if (coef.find_first_of("+-/ ") != std::string::npos) coef = "(" + coef + ")";
    if (i == 0)
      terms.push_back(coef);
    else if (i == 1)
      terms.push_back((coef == "1" ? "" : coef + "*") + var);
    else
      terms.push_back((coef == "1" ? "" : coef + "*") + var + "^" + std::to_string(i));
  }
  if (!is_exact()) terms.push_back("O(" + var + "^" + std::to_string(prec_ - val_) + ")");
  std::string body;
  for (std::size_t i = 0; i < terms.size(); ++i) body += (i ? " + " : "") + terms[i];
  return var + "^" + std::to_string(val_) + "*(" + body + ")";
}

}  // namespace adelic
