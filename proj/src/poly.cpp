#include "fdopt/poly.hpp"

namespace fdopt {

RealPoly poly_add(const RealPoly& a, const RealPoly& b) {
  RealPoly out(std::max(a.size(), b.size()), Real(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

RealPoly poly_mul(const RealPoly& a, const RealPoly& b) {
  if (a.empty() || b.empty()) return {};
  RealPoly out(a.size() + b.size() - 1, Real(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

RealPoly poly_scale(const RealPoly& a, const Real& s) {
  RealPoly out(a);
  for (auto& c : out) c *= s;
  return out;
}

RealPoly poly_pow(const RealPoly& a, int n) {
  RealPoly out{Real(1)};
  for (int i = 0; i < n; ++i) out = poly_mul(out, a);
  return out;
}

RealPoly poly_derivative(const RealPoly& a) {
  if (a.size() <= 1) return {Real(0)};
  RealPoly out(a.size() - 1, Real(0));
  for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = a[i] * static_cast<int>(i);
  return out;
}

Real poly_eval(const RealPoly& a, const Real& x) {
  Real acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace fdopt
