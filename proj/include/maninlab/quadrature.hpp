#pragma once

#include <functional>
#include <vector>

namespace maninlab {

// Adaptive Simpson with absolute tolerance. The integrands here are
// piecewise smooth with isolated kinks, which plain recursion handles.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 50);

// All real roots of c[0] + c[1] t + ... + c[n] t^n, ascending, via the
// derivative recursion: roots of p' split the line into monotone pieces,
// each bisected to ~1e-13 relative accuracy.
std::vector<double> poly_real_roots(const std::vector<double>& coeffs);

// Lebesgue measure of {t : |t^r + A t^{r-1}| <= Y} by root isolation of
// t^r + A t^{r-1} -+ Y and interval bookkeeping.
double elementary_measure(double A, double Y, int r);

}  // namespace maninlab
