#include "dce/spectrum.hpp"
#include "dce/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>
#include <tuple>

namespace dce {

using std::numbers::pi;

std::string to_string(Polarization p) {
    switch (p) {
    case Polarization::TE: return "TE";
    case Polarization::TM: return "TM";
    case Polarization::TEM: return "TEM";
    }
    return "?";
}

Polarization parse_polarization(const std::string& s) {
    if (s == "TE") return Polarization::TE;
    if (s == "TM") return Polarization::TM;
    if (s == "TEM") return Polarization::TEM;
    throw DomainError("unknown polarization '" + s + "'");
}

std::string to_string(const ModeIndex& m) {
    std::ostringstream os;
    os << to_string(m.pol) << "(" << m.t1 << "," << m.t2 << "," << m.nz << ")";
    return os.str();
}

void CavityGeometry::validate() const {
    require(L0 > 0 && std::isfinite(L0), "L0 must be positive");
    std::visit([](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Rectangular>) {
            require(s.Lx > 0 && s.Ly > 0, "rectangular section needs Lx > 0 and Ly > 0");
        } else if constexpr (std::is_same_v<S, Circular>) {
            require(s.R > 0, "circular section needs R > 0");
        } else {
            require(s.a > 0 && s.a < s.b, "coaxial section needs 0 < a < b");
        }
    }, section);
}

// ---------------------------------------------------------------- Bessel roots

namespace {

double jn(int n, double x) { return std::cyl_bessel_j(static_cast<double>(n), x); }

double jn_prime(int n, double x) {
    if (n == 0) return -jn(1, x);
    return 0.5 * (jn(n - 1, x) - jn(n + 1, x));
}

// J_n'' from Bessel's equation.
double jn_second(int n, double x) {
    return -jn_prime(n, x) / x - (1.0 - double(n) * n / (x * x)) * jn(n, x);
}

double root_uncached(BesselRootKind kind, int n, int m) {
    auto f = [&](double x) { return kind == BesselRootKind::function_zero ? jn(n, x) : jn_prime(n, x); };
    auto df = [&](double x) { return kind == BesselRootKind::function_zero ? jn_prime(n, x) : jn_second(n, x); };

    // No zero of J_n or J_n' lies below n (n >= 1), and J_0' has its trivial
    // zero at the origin, so counting sign changes from here gives the m-th root.
    const double h = 0.05;
    double a = n > 0 ? double(n) : 1e-3;
    double fa = f(a);
    int found = 0;
    const double x_limit = n + 10.0 * (m + 2) * pi;
    while (a < x_limit) {
        double b = a + h;
        double fb = f(b);
        if (fa == 0.0) {
            if (++found == m) return a;
        } else if (fa * fb < 0.0) {
            if (++found == m) {
                for (int i = 0; i < 30; ++i) {
                    double c = 0.5 * (a + b);
                    double fc = f(c);
                    if (fa * fc <= 0.0) {
                        b = c;
                    } else {
                        a = c;
                        fa = fc;
                    }
                }
                double x = 0.5 * (a + b);
                for (int i = 0; i < 8; ++i) {
                    double step = f(x) / df(x);
                    double xn = x - step;
                    if (!(xn >= a && xn <= b)) break;
                    x = xn;
                    if (std::abs(step) < 1e-15 * x) break;
                }
                if (std::abs(f(x)) > 1e-10) {
                    throw NumericalError("Bessel root refinement failed for n=" + std::to_string(n) +
                                         ", m=" + std::to_string(m));
                }
                return x;
            }
        }
        a = b;
        fa = fb;
    }
    throw NumericalError("Bessel root bracketing failed for n=" + std::to_string(n) + ", m=" + std::to_string(m));
}

std::shared_mutex root_mutex;
std::map<std::tuple<int, int, int>, double> root_cache;

} // namespace

double bessel_root(BesselRootKind kind, int n, int m) {
    require(n >= 0, "Bessel order must be non-negative");
    require(m >= 1, "Bessel root index must be >= 1");
    auto key = std::make_tuple(static_cast<int>(kind), n, m);
    {
        std::shared_lock lock(root_mutex);
        auto it = root_cache.find(key);
        if (it != root_cache.end()) return it->second;
    }
    double x = root_uncached(kind, n, m);
    std::unique_lock lock(root_mutex);
    root_cache.emplace(key, x);
    return x;
}

// ---------------------------------------------------------------- spectrum

void validate_mode(const CavityGeometry& geom, const ModeIndex& mode) {
    geom.validate();
    if (mode.pol == Polarization::TEM) {
        require(!geom.simply_connected(), "TEM modes do not exist in hollow cylinders");
        require(mode.t1 == 0 && mode.t2 == 0, "TEM modes carry no transverse indices");
        require(mode.nz >= 1, "TEM modes need nz >= 1");
        return;
    }
    require(geom.simply_connected(), "only TEM modes are supported for the coaxial section");
    bool rect = std::holds_alternative<Rectangular>(geom.section);
    if (rect) {
        require(mode.t1 >= 0 && mode.t2 >= 0, "rectangular indices must be non-negative");
        if (mode.pol == Polarization::TE) {
            require(mode.t1 + mode.t2 > 0, "TE rectangular: n_x and n_y cannot both be zero");
            require(mode.nz >= 1, "TE modes need nz >= 1");
        } else {
            require(mode.t1 >= 1 && mode.t2 >= 1, "TM rectangular: m_x, m_y >= 1");
            require(mode.nz >= 0, "TM modes need nz >= 0");
        }
    } else {
        require(mode.t1 >= 0, "circular azimuthal index is taken as |n| >= 0");
        require(mode.t2 >= 1, "circular radial index m must be >= 1");
        require(mode.nz >= (mode.pol == Polarization::TE ? 1 : 0), "nz out of range for this polarization");
    }
}

double transverse_eigenvalue(const CavityGeometry& geom, const ModeIndex& mode) {
    validate_mode(geom, mode);
    if (mode.pol == Polarization::TEM) return 0.0;
    if (auto r = std::get_if<Rectangular>(&geom.section)) {
        double kx = mode.t1 * pi / r->Lx;
        double ky = mode.t2 * pi / r->Ly;
        return kx * kx + ky * ky;
    }
    const auto& c = std::get<Circular>(geom.section);
    auto kind = mode.pol == Polarization::TE ? BesselRootKind::derivative_zero : BesselRootKind::function_zero;
    double k = bessel_root(kind, mode.t1, mode.t2) / c.R;
    return k * k;
}

double eigenfrequency(const CavityGeometry& geom, const ModeIndex& mode, double Lz) {
    require(Lz > 0, "Lz must be positive");
    double kz = mode.nz * pi / Lz;
    return std::sqrt(transverse_eigenvalue(geom, mode) + kz * kz);
}

int azimuthal_multiplicity(const CavityGeometry& geom, const ModeIndex& mode) {
    return (std::holds_alternative<Circular>(geom.section) && mode.t1 >= 1) ? 2 : 1;
}

std::vector<ModeFrequency> enumerate_modes(const CavityGeometry& geom, Polarization pol, double omega_max) {
    geom.validate();
    require(omega_max > 0, "omega_max must be positive");
    std::vector<ModeFrequency> out;
    const int nz_max = static_cast<int>(std::floor(omega_max * geom.L0 / pi));
    const int nz_min = pol == Polarization::TM ? 0 : 1;
    auto push = [&](const ModeIndex& m) {
        double w = eigenfrequency(geom, m, geom.L0);
        if (w <= omega_max) out.push_back({m, w});
    };

    if (pol == Polarization::TEM) {
        if (geom.simply_connected()) return out;
        for (int nz = 1; nz <= nz_max; ++nz) push({pol, 0, 0, nz});
    } else if (auto r = std::get_if<Rectangular>(&geom.section)) {
        const int a_max = static_cast<int>(std::floor(omega_max * r->Lx / pi));
        const int b_max = static_cast<int>(std::floor(omega_max * r->Ly / pi));
        const int lo = pol == Polarization::TM ? 1 : 0;
        for (int a = lo; a <= a_max; ++a)
            for (int b = lo; b <= b_max; ++b) {
                if (a == 0 && b == 0) continue;
                for (int nz = nz_min; nz <= nz_max; ++nz) push({pol, a, b, nz});
            }
    } else if (auto c = std::get_if<Circular>(&geom.section)) {
        auto kind = pol == Polarization::TE ? BesselRootKind::derivative_zero : BesselRootKind::function_zero;
        // Roots grow with both n and m, so each loop stops at the first root above the cutoff.
        for (int n = 0; bessel_root(kind, n, 1) / c->R <= omega_max; ++n)
            for (int m = 1; bessel_root(kind, n, m) / c->R <= omega_max; ++m)
                for (int nz = nz_min; nz <= nz_max; ++nz) push({pol, n, m, nz});
    } else {
        throw DomainError("only TEM modes are supported for the coaxial section");
    }

    std::sort(out.begin(), out.end(), [](const ModeFrequency& x, const ModeFrequency& y) {
        double tol = 1e-12 * std::max(x.omega, y.omega);
        if (std::abs(x.omega - y.omega) > tol) return x.omega < y.omega;
        return x.mode < y.mode;
    });
    return out;
}

std::complex<double> transverse_mode_value(const CavityGeometry& geom, const ModeIndex& mode,
                                           const TransversePoint& p) {
    validate_mode(geom, mode);
    const double slack = 1e-12;
    if (auto r = std::get_if<Rectangular>(&geom.section)) {
        require(p.x >= -slack * r->Lx && p.x <= r->Lx * (1 + slack) && p.y >= -slack * r->Ly &&
                    p.y <= r->Ly * (1 + slack),
                "point outside the rectangular section");
        double ax = mode.t1 * pi * p.x / r->Lx;
        double ay = mode.t2 * pi * p.y / r->Ly;
        double norm = 2.0 / std::sqrt(r->Lx * r->Ly);
        if (mode.pol == Polarization::TE) {
            if (mode.t1 == 0) norm /= std::sqrt(2.0);
            if (mode.t2 == 0) norm /= std::sqrt(2.0);
            return norm * std::cos(ax) * std::cos(ay);
        }
        return norm * std::sin(ax) * std::sin(ay);
    }
    double rho = std::hypot(p.x, p.y);
    double phi = std::atan2(p.y, p.x);
    if (auto c = std::get_if<Coaxial>(&geom.section)) {
        require(rho >= c->a * (1 - slack) && rho <= c->b * (1 + slack), "point outside the coaxial section");
        return 1.0 / rho;
    }
    const auto& c = std::get<Circular>(geom.section);
    require(rho <= c.R * (1 + slack), "point outside the circular section");
    const int n = mode.t1;
    const std::complex<double> phase = std::polar(1.0, n * phi);
    if (mode.pol == Polarization::TE) {
        double y = bessel_root(BesselRootKind::derivative_zero, n, mode.t2);
        double norm = std::sqrt(pi) * c.R * jn(n, y) * std::sqrt(1.0 - double(n) * n / (y * y));
        return phase * jn(n, y * rho / c.R) / norm;
    }
    double x = bessel_root(BesselRootKind::function_zero, n, mode.t2);
    double norm = std::sqrt(pi) * c.R * jn(n + 1, x);
    return phase * jn(n, x * rho / c.R) / norm;
}

} // namespace dce
