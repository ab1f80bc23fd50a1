#include "turrittin/jet.hpp"

#include <algorithm>

namespace turrittin {

Jet::Jet(long val, std::vector<Scalar> coeffs, long order)
    : val_(val), c_(std::move(coeffs)), order_(clamp_order(order)) {
  normalize();
}

void Jet::normalize() {
  if (!c_.empty() && last_degree() > order_) {
    long keep = order_ - val_ + 1;
    c_.resize(keep > 0 ? static_cast<size_t>(keep) : 0);
  }
  size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    val_ += static_cast<long>(lead);
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  if (c_.empty()) val_ = 0;
}

Scalar Jet::coeff(long deg) const {
  if (deg > order_)
    throw PrecisionError("coefficient of degree " + std::to_string(deg) + " requested, order is " +
                         std::to_string(order_));
  if (c_.empty() || deg < val_ || deg > last_degree()) return Scalar();
  return c_[static_cast<size_t>(deg - val_)];
}

FieldDescriptor Jet::field() const {
  FieldDescriptor f;
  for (const auto& s : c_) f = join(f, s.field());
  return f;
}

Jet Jet::truncated(long abs_order) const {
  if (abs_order > order_)
    throw PrecisionError("truncation at " + std::to_string(abs_order) + " exceeds order " + std::to_string(order_));
  return Jet(val_, c_, abs_order);
}

Jet Jet::shifted(long k) const {
  return Jet(val_ + k, c_, order_ >= kExact ? kExact : order_ + k);
}

Jet Jet::scaled(const Scalar& s) const {
  if (s.is_zero()) return Jet::zero();
  std::vector<Scalar> v = c_;
  for (auto& x : v) x *= s;
  return Jet(val_, std::move(v), order_);
}

Jet Jet::derivative() const {
  std::vector<Scalar> v;
  v.reserve(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) v.push_back(c_[i] * Scalar(val_ + static_cast<long>(i)));
  return Jet(val_ - 1, std::move(v), order_ >= kExact ? kExact : order_ - 1);
}

Jet Jet::power_substitute(long r) const {
  if (r < 1) throw Error(ErrorCode::PreconditionViolated, "ramification index must be positive");
  if (r == 1) return *this;
  std::vector<Scalar> v;
  if (!c_.empty()) v.resize((c_.size() - 1) * static_cast<size_t>(r) + 1);
  for (size_t i = 0; i < c_.size(); ++i) v[i * static_cast<size_t>(r)] = c_[i];
  return Jet(val_ * r, std::move(v), order_ >= kExact ? kExact : order_ * r);
}

Jet Jet::invert_unit(long max_rel_order) const {
  if (is_zero()) throw Error(ErrorCode::ZeroJet, "inverse of a zero jet");
  long rel = is_exact() ? (c_.size() == 1 ? kExact : max_rel_order) : order_ - val_;
  Scalar inv0 = c_[0].inverse();
  if (rel >= kExact) return Jet(-val_, {inv0}, kExact);
  std::vector<Scalar> out(static_cast<size_t>(rel) + 1);
  out[0] = inv0;
  for (long j = 1; j <= rel; ++j) {
    Scalar acc;
    long top = std::min<long>(j, static_cast<long>(c_.size()) - 1);
    for (long i = 1; i <= top; ++i) acc += c_[static_cast<size_t>(i)] * out[static_cast<size_t>(j - i)];
    out[static_cast<size_t>(j)] = -(acc * inv0);
  }
  return Jet(-val_, std::move(out), -val_ + rel);
}

Jet Jet::apply_automorphism(int s1, int s2) const {
  std::vector<Scalar> v = c_;
  for (auto& x : v) x = x.apply_automorphism(s1, s2);
  return Jet(val_, std::move(v), order_);
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Jet operator+(const Jet& a, const Jet& b) {
  long order = std::min(a.order_, b.order_);
  if (a.is_zero()) return Jet(b.val_, b.c_, order);
  if (b.is_zero()) return Jet(a.val_, a.c_, order);
  long lo = std::min(a.val_, b.val_);
  long hi = std::min(std::max(a.last_degree(), b.last_degree()), order);
  if (hi < lo) return Jet::zero(order);
  std::vector<Scalar> v(static_cast<size_t>(hi - lo + 1));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    long d = a.val_ + static_cast<long>(i);
    if (d > hi) break;
    v[static_cast<size_t>(d - lo)] += a.c_[i];
  }
  for (size_t i = 0; i < b.c_.size(); ++i) {
    long d = b.val_ + static_cast<long>(i);
    if (d > hi) break;
    v[static_cast<size_t>(d - lo)] += b.c_[i];
  }
  return Jet(lo, std::move(v), order);
}

Jet operator*(const Jet& a, const Jet& b) {
  long order;
  if (a.is_zero() && b.is_zero()) {
    order = (a.is_exact() || b.is_exact()) ? kExact : a.order_ + b.order_ + 1;
    return Jet::zero(order);
  }
  long oa = a.is_exact() ? kExact : a.order_;
  long ob = b.is_exact() ? kExact : b.order_;
  long t1 = (a.is_zero() || ob >= kExact) ? kExact : a.val_ + ob;
  long t2 = (b.is_zero() || oa >= kExact) ? kExact : b.val_ + oa;
  order = clamp_order(std::min(t1, t2));
  if (a.is_zero() || b.is_zero()) return Jet::zero(order);
  long lo = a.val_ + b.val_;
  long hi = std::min(a.last_degree() + b.last_degree(), order);
  if (hi < lo) return Jet::zero(order);
  std::vector<Scalar> v(static_cast<size_t>(hi - lo + 1));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    long di = static_cast<long>(i);
    for (size_t j = 0; j < b.c_.size(); ++j) {
      long d = di + static_cast<long>(j);
      if (lo + d > hi) break;
      v[static_cast<size_t>(d)] += a.c_[i] * b.c_[j];
    }
  }
  return Jet(lo, std::move(v), order);
}

bool operator==(const Jet& a, const Jet& b) {
  return a.order_ == b.order_ && a.c_ == b.c_ && (a.c_.empty() || a.val_ == b.val_);
}

std::string Jet::str() const {
  std::string body;
  if (c_.empty()) {
    body = "0";
  } else {
    std::string inner;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      std::string cs = c_[i].str();
      bool compound = cs.find_first_of("+-", 1) != std::string::npos;
      std::string term;
      if (i == 0) {
        term = cs;
      } else {
        std::string mono = i == 1 ? "x" : "x^" + std::to_string(i);
        if (c_[i].is_one())
          term = mono;
        else if ((-c_[i]).is_one())
          term = "-" + mono;
        else
          term = (compound ? "(" + cs + ")" : cs) + "*" + mono;
      }
      if (!inner.empty()) inner += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
      else inner = term;
    }
    body = val_ == 0 ? "(" + inner + ")" : "x^" + std::to_string(val_) + "*(" + inner + ")";
  }
  if (!is_exact()) body += " @order " + std::to_string(order_);
  return body;
}

}  // namespace turrittin
