#include "dce/coupling.hpp"
#include "dce/errors.hpp"
#include "dce/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace dce {

using std::numbers::pi;

namespace {

double sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

struct BasisValue {
    double f, df;
};

BasisValue basis(LongitudinalBasis b, int n, double z) {
    const double r2 = std::sqrt(2.0);
    double k = n * pi;
    if (b == LongitudinalBasis::dirichlet) return {r2 * std::sin(k * z), r2 * k * std::cos(k * z)};
    return {r2 * std::cos(k * z), -r2 * k * std::sin(k * z)};
}

} // namespace

double g_coeff(int pz, int jz) {
    require(pz >= 1 && jz >= 1, "g_coeff needs indices >= 1");
    if (pz == jz) return 0.0;
    return sign(pz + jz) * 2.0 * pz * jz / (double(jz) * jz - double(pz) * pz);
}

double h_coeff(int jz, int pz) {
    require(pz >= 0 && jz >= 0, "h_coeff needs indices >= 0");
    if (pz == jz) return -1.0;
    return sign(pz + jz) * 2.0 * jz * jz / (double(pz) * pz - double(jz) * jz);
}

double s_coeff(int jz, int pz, Gauge g, LongitudinalBasis b) {
    require(jz >= 0 && pz >= 0, "s_coeff needs non-negative indices");
    return integrate([&](double z) { return xi(z, g) * basis(b, jz, z).f * basis(b, pz, z).f; }, 0.0, 1.0);
}

double eta_coeff(int jz, int pz, Gauge g, LongitudinalBasis b) {
    require(jz >= 0 && pz >= 0, "eta_coeff needs non-negative indices");
    const double wj2 = (jz * pi) * (jz * pi);
    return integrate(
        [&](double z) {
            XiDerivatives x = xi_derivatives(z, g);
            BasisValue cj = basis(b, jz, z), cp = basis(b, pz, z);
            return (x.d2 - wj2 * x.xi) * cj.f * cp.f + 2.0 * x.d1 * cj.df * cp.f;
        },
        0.0, 1.0);
}

std::vector<int> family_indices(Polarization pol, int N_z) {
    require(N_z >= 1, "N_z must be >= 1");
    std::vector<int> nz(N_z);
    int first = pol == Polarization::TM ? 0 : 1;
    for (int i = 0; i < N_z; ++i) nz[i] = first + i;
    return nz;
}

CouplingTable build_table(Polarization pol, int N_z, Gauge g, ZeroMode zero_mode) {
    CouplingTable t;
    t.pol = pol;
    t.nz = family_indices(pol, N_z);
    const int N = N_z;
    if (pol != Polarization::TM) {
        t.g.resize(N, N);
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) t.g(a, b) = g_coeff(t.nz[a], t.nz[b]);
        return t;
    }
    t.h.resize(N, N);
    t.s.resize(N, N);
    t.eta.resize(N, N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            int j = t.nz[a], p = t.nz[b];
            t.h(a, b) = h_coeff(j, p);
            t.s(a, b) = b < a ? t.s(b, a) : s_coeff(j, p, g, LongitudinalBasis::neumann);
            t.eta(a, b) = eta_coeff(j, p, g, LongitudinalBasis::neumann);
        }
    if (zero_mode == ZeroMode::orthonormal && t.nz.front() == 0) {
        const double r = 1.0 / std::sqrt(2.0);
        for (Eigen::MatrixXd* m : {&t.h, &t.s, &t.eta}) {
            m->row(0) *= r;
            m->col(0) *= r;
        }
    }
    return t;
}

} // namespace dce
