#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amblab/domains.hpp"
#include "amblab/functionals.hpp"
#include "amblab/grid.hpp"

namespace amblab {

struct Measurement {
    std::string label;
    double value = 0.0;
};

/// Outcome of one numerical consistency check. Reports carry the measured
/// quantities so a failing run can be diagnosed from the artifact alone.
struct CheckReport {
    std::string name;
    bool passed = false;
    double tolerance = 0.0;
    std::vector<Measurement> measured;
    std::string details;
};

/**
 * The self-transform of a unit-norm signal peaks at the origin: value 1 there
 * and strictly smaller modulus everywhere else. Verified over `trials`
 * independent random signals.
 */
CheckReport check_radar_correlation(const TimeGrid& grid, std::size_t trials,
                                    std::uint64_t seed);

/**
 * Separating two components in time decouples their joint concentration.
 * For p = 2 the masked energy of A(pi(z1)f1) + A(pi(z2)f2) tends to the sum
 * of the individual masked energies as the separation D grows, with the
 * interference term decaying like exp(-pi D^2) for Gaussian inputs. For
 * general p the limit is controlled by the l^{p*} combination of the
 * individual norms, p* = min(p, p/(p-1)); the bound is asserted at the
 * largest separation with 5% slack. Separations must be even multiples of
 * the grid step.
 */
CheckReport check_decoupling(const Signal& f1, const Signal& f2, const DomainMask& mask,
                             double p, const std::vector<double>& separations);

/**
 * Escaping mass is not lost by the masked energy: as g is translated far
 * away, || A(f + pi(z)g) ||^2 over the mask approaches the SUM of the two
 * individual masked energies, strictly exceeding the value at the weak limit
 * f alone. This is the obstruction to weak upper semicontinuity.
 */
CheckReport check_weak_usc_failure(const Signal& f, const Signal& g, const DomainMask& mask,
                                   const std::vector<double>& shifts);

/**
 * The time-correlation objective stays strictly below measure(domain)^{1/p}
 * while flat stretched indicators approach it: values must increase strictly
 * in lambda and the gap to the bound must shrink. No maximizer exists.
 */
CheckReport check_nonattainment_timecorr(const TimeGrid& grid, const Domain1D& omega1,
                                         double p, const std::vector<double>& lambdas);

/**
 * Sup-norm dichotomy. If the domain has positive density at the origin the
 * objective equals 1 for every signal (checked for a Gaussian and two random
 * signals, tolerance 1e-12). Otherwise every dilated Gaussian stays strictly
 * below 1 while the family supremum approaches it.
 */
CheckReport check_linf_attainment(const TimeGrid& grid, const DomainSpec& spec,
                                  const std::vector<double>& lambdas, std::uint64_t seed);

/**
 * |A| transforms covariantly under the metaplectic generators: Fourier
 * transform rotates the plane by 90 degrees, dilation by lambda maps
 * (x, w) to (x/lambda, lambda w), a chirp shears w by c x. Checked on a
 * probe set in the central bulk against a trigonometric interpolant of the
 * unshifted transform; requires a square grid (dx = dw).
 */
CheckReport check_symplectic_covariance(const Signal& f, const std::string& variant);

/**
 * Empirical frame inequality for the Gaussian Gabor system on the given
 * lattice: energy ratios of lattice coefficient sums against ||f||^2 over
 * random signals. Density a b < 1 must give ratios bounded away from zero;
 * a b >= 1 is reported without a pass requirement since no frame exists.
 */
CheckReport check_frame_bounds(const Signal& g, const GaborLattice& lat,
                               std::size_t trials, std::uint64_t seed);

/**
 * Report-only diagnostic: empirical constant in the local-L2 amalgam bound
 * for cross transforms, max over random pairs of
 * amalgam_norm(A(f, g)) / (||f|| sup |V g|). Always passes when finite.
 */
CheckReport check_amalgam_ratio(const TimeGrid& grid, std::size_t trials,
                                std::uint64_t seed);

/// Names accepted by run_verify, in canonical execution order.
std::vector<std::string> verify_check_names();

/**
 * Run the named checks (empty or {"all"} = every check) on their canonical
 * instances. Deterministic for a fixed seed; reports carry no timing so the
 * serialized output is reproducible byte for byte.
 */
std::vector<CheckReport> run_verify(const std::vector<std::string>& names,
                                    std::uint64_t seed);

/// Fixed-width text table, one line per report.
std::string format_reports(const std::vector<CheckReport>& reports);

} // namespace amblab
