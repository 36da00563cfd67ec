#include "h3surf/jet.hpp"

#include <cmath>

namespace h3surf {

namespace {

constexpr int kI[3] = {0, 0, 1};
constexpr int kJ[3] = {0, 1, 1};

}  // namespace

bool Jet2::all_finite() const {
  return std::isfinite(value) && std::isfinite(grad[0]) && std::isfinite(grad[1]) &&
         std::isfinite(hess[0]) && std::isfinite(hess[1]) && std::isfinite(hess[2]);
}

Jet2& Jet2::operator+=(const Jet2& r) {
  value += r.value;
  for (int i = 0; i < 2; ++i) grad[i] += r.grad[i];
  for (int k = 0; k < 3; ++k) hess[k] += r.hess[k];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& r) {
  value -= r.value;
  for (int i = 0; i < 2; ++i) grad[i] -= r.grad[i];
  for (int k = 0; k < 3; ++k) hess[k] -= r.hess[k];
  return *this;
}

Jet2& Jet2::operator*=(const Jet2& r) {
  Jet2 out;
  out.value = value * r.value;
  for (int i = 0; i < 2; ++i) out.grad[i] = grad[i] * r.value + value * r.grad[i];
  for (int k = 0; k < 3; ++k) {
    const int i = kI[k];
    const int j = kJ[k];
    out.hess[k] = hess[k] * r.value + grad[i] * r.grad[j] + grad[j] * r.grad[i] +
                  value * r.hess[k];
  }
  *this = out;
  return *this;
}

Jet2& Jet2::operator/=(const Jet2& r) {
  const double inv = 1.0 / r.value;
  *this *= chain(r, inv, -inv * inv, 2.0 * inv * inv * inv);
  return *this;
}

Jet2 operator+(Jet2 l, const Jet2& r) { return l += r; }
Jet2 operator-(Jet2 l, const Jet2& r) { return l -= r; }
Jet2 operator*(Jet2 l, const Jet2& r) { return l *= r; }
Jet2 operator/(Jet2 l, const Jet2& r) { return l /= r; }

Jet2 operator-(const Jet2& j) {
  return Jet2{-j.value, {-j.grad[0], -j.grad[1]}, {-j.hess[0], -j.hess[1], -j.hess[2]}};
}

Jet2 operator+(Jet2 l, double r) {
  l.value += r;
  return l;
}
Jet2 operator+(double l, Jet2 r) { return r + l; }
Jet2 operator-(Jet2 l, double r) {
  l.value -= r;
  return l;
}
Jet2 operator-(double l, const Jet2& r) { return -r + l; }

Jet2 operator*(Jet2 l, double r) {
  l.value *= r;
  for (auto& g : l.grad) g *= r;
  for (auto& h : l.hess) h *= r;
  return l;
}
Jet2 operator*(double l, Jet2 r) { return r * l; }
Jet2 operator/(Jet2 l, double r) { return l * (1.0 / r); }
Jet2 operator/(double l, const Jet2& r) { return Jet2::constant(l) / r; }

Jet2 chain(const Jet2& j, double f0, double f1, double f2) {
  Jet2 out;
  out.value = f0;
  for (int i = 0; i < 2; ++i) out.grad[i] = f1 * j.grad[i];
  for (int k = 0; k < 3; ++k) {
    out.hess[k] = f2 * j.grad[kI[k]] * j.grad[kJ[k]] + f1 * j.hess[k];
  }
  return out;
}

Jet2 sqrt(const Jet2& j) {
  const double r = std::sqrt(j.value);
  return chain(j, r, 0.5 / r, -0.25 / (r * j.value));
}

Jet2 sin(const Jet2& j) {
  const double s = std::sin(j.value);
  return chain(j, s, std::cos(j.value), -s);
}

Jet2 cos(const Jet2& j) {
  const double c = std::cos(j.value);
  return chain(j, c, -std::sin(j.value), -c);
}

Jet2 tan(const Jet2& j) {
  const double t = std::tan(j.value);
  const double sec2 = 1.0 + t * t;
  return chain(j, t, sec2, 2.0 * t * sec2);
}

Jet2 exp(const Jet2& j) {
  const double e = std::exp(j.value);
  return chain(j, e, e, e);
}

Jet2 log(const Jet2& j) {
  const double inv = 1.0 / j.value;
  return chain(j, std::log(j.value), inv, -inv * inv);
}

Jet2 atan(const Jet2& j) {
  const double q = 1.0 / (1.0 + j.value * j.value);
  return chain(j, std::atan(j.value), q, -2.0 * j.value * q * q);
}

Jet2 abs(const Jet2& j) {
  const double sign = j.value > 0.0 ? 1.0 : (j.value < 0.0 ? -1.0 : 0.0);
  return chain(j, std::abs(j.value), sign, 0.0);
}

Jet2 pow_int(const Jet2& j, long n) {
  if (n < 0) return 1.0 / pow_int(j, -n);
  Jet2 result = Jet2::constant(1.0);
  Jet2 base = j;
  // Binary exponentiation keeps the multiplication count logarithmic.
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Jet2 pow(const Jet2& base, const Jet2& expo) { return exp(expo * log(base)); }

}  // namespace h3surf
