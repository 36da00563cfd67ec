#pragma once

#include <array>

namespace h3surf {

/// Second-order jet in two parameters: a value together with its gradient and
/// Hessian. Only the upper triangle (00, 01, 11) of the Hessian is stored.
struct Jet2 {
  double value = 0.0;
  std::array<double, 2> grad{0.0, 0.0};
  std::array<double, 3> hess{0.0, 0.0, 0.0};

  static Jet2 constant(double v) { return Jet2{v, {0.0, 0.0}, {0.0, 0.0, 0.0}}; }

  /// Independent variable number `index` (0 or 1) at value v.
  static Jet2 variable(double v, int index) {
    Jet2 j = constant(v);
    j.grad[static_cast<std::size_t>(index)] = 1.0;
    return j;
  }

  double d(int i) const { return grad[static_cast<std::size_t>(i)]; }
  double d2(int i, int j) const { return hess[static_cast<std::size_t>(i + j)]; }

  bool is_constant() const {
    return grad[0] == 0.0 && grad[1] == 0.0 && hess[0] == 0.0 && hess[1] == 0.0 &&
           hess[2] == 0.0;
  }
  bool all_finite() const;

  Jet2& operator+=(const Jet2& r);
  Jet2& operator-=(const Jet2& r);
  Jet2& operator*=(const Jet2& r);
  Jet2& operator/=(const Jet2& r);
};

Jet2 operator+(Jet2 l, const Jet2& r);
Jet2 operator-(Jet2 l, const Jet2& r);
Jet2 operator*(Jet2 l, const Jet2& r);
Jet2 operator/(Jet2 l, const Jet2& r);
Jet2 operator-(const Jet2& j);
Jet2 operator+(Jet2 l, double r);
Jet2 operator+(double l, Jet2 r);
Jet2 operator-(Jet2 l, double r);
Jet2 operator-(double l, const Jet2& r);
Jet2 operator*(Jet2 l, double r);
Jet2 operator*(double l, Jet2 r);
Jet2 operator/(Jet2 l, double r);
Jet2 operator/(double l, const Jet2& r);

/// Applies a scalar function with first and second derivative f1, f2 at the
/// jet's value: value f0, gradient f1 g, Hessian f2 g g^T + f1 H.
Jet2 chain(const Jet2& j, double f0, double f1, double f2);

Jet2 sqrt(const Jet2& j);
Jet2 sin(const Jet2& j);
Jet2 cos(const Jet2& j);
Jet2 tan(const Jet2& j);
Jet2 exp(const Jet2& j);
Jet2 log(const Jet2& j);
Jet2 atan(const Jet2& j);
Jet2 abs(const Jet2& j);
/// Integer power by repeated multiplication; negative n via reciprocal.
Jet2 pow_int(const Jet2& j, long n);
/// General power base^expo = exp(expo log base); the caller ensures base > 0.
Jet2 pow(const Jet2& base, const Jet2& expo);

}  // namespace h3surf
