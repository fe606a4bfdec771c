#include "crossratio/real.hpp"

#include "crossratio/errors.hpp"

namespace crossratio {

Real::Real(const Enclosure& e) {
  if (e.is_point()) {
    value_ = QuadExt(e.lo());
  } else {
    value_ = e;
  }
}

Enclosure Real::enclosure() const {
  if (const auto* q = exact()) return q->to_enclosure();
  return std::get<Enclosure>(value_);
}

double Real::to_double() const { return enclosure().to_bits(60).midpoint().get_d(); }

std::string Real::to_decimal(int digits) const { return crossratio::to_decimal(enclosure(), digits); }

namespace {

bool compatible(const QuadExt& x, const QuadExt& y) {
  return x.is_rational() || y.is_rational() || x.d() == y.d();
}

template <class ExactOp, class EnclosureOp>
Real combine(const Real& x, const Real& y, ExactOp exact_op, EnclosureOp enclosure_op) {
  const QuadExt* a = x.exact();
  const QuadExt* b = y.exact();
  if (a && b && compatible(*a, *b)) return Real(exact_op(*a, *b));
  return Real(enclosure_op(x.enclosure(), y.enclosure()));
}

}  // namespace

Real operator+(const Real& x, const Real& y) {
  return combine(x, y, [](const QuadExt& a, const QuadExt& b) { return a + b; },
                 [](const Enclosure& a, const Enclosure& b) { return a + b; });
}

Real operator-(const Real& x, const Real& y) {
  return combine(x, y, [](const QuadExt& a, const QuadExt& b) { return a - b; },
                 [](const Enclosure& a, const Enclosure& b) { return a - b; });
}

Real operator*(const Real& x, const Real& y) {
  return combine(x, y, [](const QuadExt& a, const QuadExt& b) { return a * b; },
                 [](const Enclosure& a, const Enclosure& b) { return a * b; });
}

Real operator/(const Real& x, const Real& y) {
  return combine(x, y, [](const QuadExt& a, const QuadExt& b) { return a / b; },
                 [](const Enclosure& a, const Enclosure& b) { return a / b; });
}

Real Real::operator-() const {
  if (const auto* q = exact()) return Real(-*q);
  return Real(-std::get<Enclosure>(value_));
}

Real abs(const Real& x) {
  if (const auto* q = x.exact()) return Real(abs(*q));
  return Real(abs(x.enclosure()));
}

int sign(const Real& x) {
  if (const auto* q = x.exact()) return q->sign();
  return certified_sign(x.enclosure());
}

}  // namespace crossratio
