#include "dce/quadrature.hpp"
#include "dce/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace dce {

namespace {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    using K = boost::math::quadrature::gauss_kronrod<double, 15>;
    using G = boost::math::quadrature::gauss<double, 7>;
    const auto& x = K::abscissa();
    const auto& wk = K::weights();
    const auto& wg = G::weights();
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double k = wk[0] * fc, g = 0.0;
    // Kronrod abscissae interleave the Gauss ones; even positions are Gauss nodes.
    for (std::size_t i = 1; i < x.size(); ++i) {
        double s = f(c - h * x[i]) + f(c + h * x[i]);
        k += wk[i] * s;
        if (i % 2 == 0) g += wg[i / 2] * s;
    }
    g += wg[0] * fc;
    return {a, b, k * h, std::abs((k - g) * h)};
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, unsigned max_depth) {
    if (a == b) return 0.0;
    std::priority_queue<Panel> queue;
    Panel whole = gk15(f, a, b);
    queue.push(whole);
    double value = whole.value, error = whole.error, scale = std::abs(whole.value);
    const std::size_t max_panels = std::size_t(1) << std::min(max_depth, 16u);
    while (error > abs_tol && error > 1e-14 * scale && queue.size() < max_panels) {
        Panel worst = queue.top();
        queue.pop();
        double m = 0.5 * (worst.a + worst.b);
        Panel l = gk15(f, worst.a, m), r = gk15(f, m, worst.b);
        value += l.value + r.value - worst.value;
        error += l.error + r.error - worst.error;
        scale = std::max(scale, std::abs(value));
        queue.push(l);
        queue.push(r);
    }
    if (!std::isfinite(value) || (error > abs_tol && error > 1e-14 * scale)) {
        std::ostringstream os;
        os << "quadrature did not converge on [" << a << ", " << b << "]: error estimate " << error;
        throw NumericalError(os.str());
    }
    return value;
}

} // namespace dce
