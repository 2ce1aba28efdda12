#pragma once

#include <compare>
#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace dce {

enum class Polarization { TE, TM, TEM };

std::string to_string(Polarization p);
Polarization parse_polarization(const std::string& s);

struct Rectangular {
    double Lx = 1.0;
    double Ly = 1.0;
};

struct Circular {
    double R = 1.0;
};

// Two concentric cylinders, inner radius a and outer radius b.
struct Coaxial {
    double a = 0.5;
    double b = 1.0;
};

using Section = std::variant<Rectangular, Circular, Coaxial>;

struct CavityGeometry {
    Section section;
    double L0 = 1.0;

    void validate() const;
    bool simply_connected() const { return !std::holds_alternative<Coaxial>(section); }
};

// t1, t2 are (n_x, n_y) for rectangular sections and (n, m) for circular ones.
struct ModeIndex {
    Polarization pol = Polarization::TE;
    int t1 = 0;
    int t2 = 0;
    int nz = 1;

    auto operator<=>(const ModeIndex&) const = default;
};

std::string to_string(const ModeIndex& m);

enum class BesselRootKind { function_zero, derivative_zero };

// m-th positive zero of J_n (function_zero) or of J_n' (derivative_zero).
double bessel_root(BesselRootKind kind, int n, int m);

// Checks the per-geometry index rules; throws DomainError.
void validate_mode(const CavityGeometry& geom, const ModeIndex& mode);

// Squared transverse wavenumber k_perp^2.
double transverse_eigenvalue(const CavityGeometry& geom, const ModeIndex& mode);

double eigenfrequency(const CavityGeometry& geom, const ModeIndex& mode, double Lz);

struct ModeFrequency {
    ModeIndex mode;
    double omega = 0.0;
};

// All modes with omega <= omega_max at Lz = L0, ascending in omega, ties broken by index.
std::vector<ModeFrequency> enumerate_modes(const CavityGeometry& geom, Polarization pol, double omega_max);

// Circular modes carry e^{i n phi}; n and -n are degenerate.
int azimuthal_multiplicity(const CavityGeometry& geom, const ModeIndex& mode);

// Cartesian point in the cross-section. Rectangular: 0<=x<=Lx, 0<=y<=Ly.
// Circular and coaxial: origin on the axis.
struct TransversePoint {
    double x = 0.0;
    double y = 0.0;
};

// Normalized transverse eigenfunction: v (Neumann) for TE, r (Dirichlet) for TM.
// For TEM it returns |A_perp| = 1/rho.
std::complex<double> transverse_mode_value(const CavityGeometry& geom, const ModeIndex& mode,
                                           const TransversePoint& p);

} // namespace dce
