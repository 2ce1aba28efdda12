#pragma once

#include "dce/spectrum.hpp"
#include "dce/trajectory.hpp"

#include <Eigen/Dense>

#include <vector>

namespace dce {

// Longitudinal basis on [0, 1]: sqrt(2) sin(n pi z) (Dirichlet) or
// sqrt(2) cos(n pi z) (Neumann). The TM amplitudes live in the Neumann basis.
enum class LongitudinalBasis { dirichlet, neumann };

// Weight of the n = 0 Neumann function. `printed` keeps sqrt(2) like every other
// member of the family; `orthonormal` uses 1 so that it is unit-normalized.
enum class ZeroMode { printed, orthonormal };

double g_coeff(int pz, int jz);
double h_coeff(int jz, int pz);

// Dimensionless, t-independent after the z -> z / Lz(t) rescaling.
double s_coeff(int jz, int pz, Gauge xi = Gauge::primary,
               LongitudinalBasis basis = LongitudinalBasis::dirichlet);

// eta with omega_j^2 L^2 replaced by (jz pi)^2. The dynamics adds the
// remaining -k_perp^2 L^2 s_jp piece.
double eta_coeff(int jz, int pz, Gauge xi = Gauge::primary,
                 LongitudinalBasis basis = LongitudinalBasis::dirichlet);

// Matrices are indexed (j, p) in the order of `nz`; for TE the h, s, eta
// blocks are empty.
struct CouplingTable {
    Polarization pol = Polarization::TE;
    std::vector<int> nz;
    Eigen::MatrixXd g;
    Eigen::MatrixXd h;
    Eigen::MatrixXd s;
    Eigen::MatrixXd eta;

    int size() const { return static_cast<int>(nz.size()); }
};

// Longitudinal indices of a truncated family: 1..N for TE/TEM, 0..N-1 for TM.
std::vector<int> family_indices(Polarization pol, int N_z);

CouplingTable build_table(Polarization pol, int N_z, Gauge xi = Gauge::primary,
                          ZeroMode zero_mode = ZeroMode::printed);

} // namespace dce
