#include "maninlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maninlab {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (a == b) return 0.0;
    if (a > b) return -adaptive_simpson(f, b, a, tol, max_depth);
    double fa = f(a), fb = f(b);
    double m = 0.5 * (a + b), fm = f(m);
    double whole = simpson(a, fa, b, fb, fm);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

namespace {

double poly_eval(const std::vector<double>& c, double t) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
    return v;
}

// bisection on a monotone bracket with a sign change
double bisect(const std::vector<double>& c, double lo, double hi) {
    double flo = poly_eval(c, lo);
    for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (lo + hi);
        if (m == lo || m == hi) break;
        double fm = poly_eval(c, m);
        if ((fm < 0) == (flo < 0)) {
            lo = m;
            flo = fm;
        } else {
            hi = m;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> poly_real_roots(const std::vector<double>& coeffs) {
    std::vector<double> c = coeffs;
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    if (c.size() <= 1) return {};  // constant: no isolated roots
    if (c.size() == 2) return {-c[0] / c[1]};

    std::vector<double> dc(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) dc[i - 1] = c[i] * (double)i;
    std::vector<double> crit = poly_real_roots(dc);

    // Cauchy bound on root magnitudes
    double bound = 0.0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        bound = std::max(bound, std::fabs(c[i] / c.back()));
    bound += 1.0;

    std::vector<double> pts{-bound};
    for (double t : crit)
        if (t > -bound && t < bound) pts.push_back(t);
    pts.push_back(bound);
    std::sort(pts.begin(), pts.end());

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double a = pts[i], b = pts[i + 1];
        double fa = poly_eval(c, a), fb = poly_eval(c, b);
        if (fa == 0.0) roots.push_back(a);
        if (fa * fb < 0.0) roots.push_back(bisect(c, a, b));
    }
    double fend = poly_eval(c, pts.back());
    if (fend == 0.0) roots.push_back(pts.back());
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double x, double y) { return std::fabs(x - y) < 1e-12 * (1.0 + std::fabs(x)); }),
                roots.end());
    return roots;
}

double elementary_measure(double A, double Y, int r) {
    if (r < 1) throw std::domain_error("elementary_measure: r must be >= 1");
    if (Y < 1.0) throw std::domain_error("elementary_measure: Y must be >= 1");
    // g(t) = t^r + A t^{r-1}; the set {|g| <= Y} is a finite union of
    // intervals with endpoints among the roots of g -+ Y
    std::vector<double> g(r + 1, 0.0);
    g[r] = 1.0;
    g[r - 1] += A;

    std::vector<double> pts;
    for (double s : {-Y, Y}) {
        std::vector<double> h = g;
        h[0] -= s;
        for (double t : poly_real_roots(h)) pts.push_back(t);
    }
    std::sort(pts.begin(), pts.end());
    if (pts.empty()) return 0.0;  // cannot happen for r >= 1: g is unbounded

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double m = 0.5 * (pts[i] + pts[i + 1]);
        if (std::fabs(poly_eval(g, m)) <= Y) total += pts[i + 1] - pts[i];
    }
    return total;
}

}  // namespace maninlab
