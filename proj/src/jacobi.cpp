#include "hua/analytic.hpp"

namespace hua::analytic {

double jacobi_eval(int n, double a, double b, double x) {
  if (n == 0)
    return 1.0;
  double p_prev = 1.0;
  double p = 0.5 * (2.0 * (a + 1.0) + (a + b + 2.0) * (x - 1.0));
  for (int m = 1; m < n; ++m) {
    // 2(m+1)(m+a+b+1)(2m+a+b) P_{m+1}
    //   = (2m+a+b+1)[(2m+a+b+2)(2m+a+b) x + a^2 - b^2] P_m
    //     - 2(m+a)(m+b)(2m+a+b+2) P_{m-1}
    const double s = 2.0 * m + a + b;
    const double c1 = 2.0 * (m + 1.0) * (m + a + b + 1.0) * s;
    const double c2 = (s + 1.0) * ((s + 2.0) * s * x + a * a - b * b);
    const double c3 = 2.0 * (m + a) * (m + b) * (s + 2.0);
    const double next = (c2 * p - c3 * p_prev) / c1;
    p_prev = p;
    p = next;
  }
  return p;
}

} // namespace hua::analytic
