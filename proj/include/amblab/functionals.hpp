#pragma once

#include <vector>

#include "amblab/domains.hpp"
#include "amblab/grid.hpp"

namespace amblab {

/// L^p(dx dw) norm of the array restricted to the mask, p >= 1.
double lp_on_domain(const TFArray& a, const DomainMask& mask, double p);

/// Essential sup of |a| over the mask.
double linf_on_domain(const TFArray& a, const DomainMask& mask);

/**
 * Concentration objective ||A(f)||_{L^p(mask)} / ||f||^2. Invariant under
 * scaling and under on-grid time-frequency shifts of the signal; bounded by
 * measure(mask)^{1/p}.
 */
double objective_ambiguity(const Signal& f, const DomainMask& mask, double p);

/**
 * Ascent direction of objective_ambiguity at f: the unique w with
 * d/dh J(f + h v)|_0 = 2 Re<v, w> for every direction v. For p < 2 the
 * singular weight |A|^{p-2} is smoothed to (|A|^2 + eps^2)^{(p-2)/2} inside
 * the gradient only; reported objectives are never smoothed. When objective
 * is non-null it receives J(f).
 */
Signal gradient_ambiguity(const Signal& f, const DomainMask& mask, double p,
                          double* objective = nullptr, double eps = 1e-9);

/// sup-norm objective: max |A(f)| over the mask / ||f||^2.
double objective_linf(const Signal& f, const DomainMask& mask);

/**
 * Time-correlation objective
 * (sum_{x in mask} |<f, T_x f>|^p dx)^{1/p} / ||f||^2, p >= 1; bounded by
 * measure_1d(mask)^{1/p}.
 */
double objective_timecorr(const Signal& f, const Mask1D& mask, double p);

/// Fixed-window objective ||A(f, g)||_{L^p(mask)} / ||f|| with g held fixed.
double objective_fixed_window(const Signal& f, const Signal& g, const DomainMask& mask, double p);

/**
 * Continuous modulation norm ||V_g f||_{L^q(dx dw)} over the whole grid box;
 * q in (0, inf], q = inf gives sup |V_g f|.
 */
double mq_norm_continuous(const Signal& f, const Signal& g, double q);

/// Rectangular time-frequency lattice {(i a, j b) : |i|, |j| <= radius}.
struct GaborLattice {
    double a = 0.0;
    double b = 0.0;
    int radius = 0;
};

/// Lattice commensurate with the grid whose constants round 1/sqrt(2) and
/// whose radius is the largest fitting the covered box.
GaborLattice default_gabor_lattice(const TimeGrid& grid);

/**
 * Coefficients <f, pi(i a, j b) g> in row-major order over
 * i, j = -radius..radius. Lattice constants must be integer multiples of the
 * grid steps (LatticeIncommensurate) and the lattice must fit the box.
 */
std::vector<cplx> gabor_coefficients(const Signal& f, const Signal& g, const GaborLattice& lat);

/**
 * Lattice quasi-norm (sum |c|^q)^{1/q}, q in (0, inf]; the sum is taken first
 * and exponentiated once, so q < 1 stays stable. With enforce_leakage the
 * outermost lattice ring must carry at most leak_tol of the coefficient mass
 * (TruncationLeakage).
 */
double gabor_norm(const Signal& f, const Signal& g, const GaborLattice& lat, double q,
                  bool enforce_leakage = true, double leak_tol = 1e-8);

/**
 * Modulation-normalized objective ||A(f)||_{L^p(mask)} / ||f||_{M^q}^2 with
 * the window g. q >= 1 uses the continuous norm; q < 1 uses the lattice
 * quasi-norm on the default lattice.
 */
double objective_mq(const Signal& f, const DomainMask& mask, double p, double q, const Signal& g);

/**
 * Amalgam norm of a time-frequency array: sup over box centers on the grid
 * of the L^2(dx dw) mass inside the square window of the given half-width
 * (plane units). Windows are clipped at the box edges.
 */
double amalgam_norm(const TFArray& a, double window_radius);

} // namespace amblab
