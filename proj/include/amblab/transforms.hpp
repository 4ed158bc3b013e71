#pragma once

#include <vector>

#include "amblab/grid.hpp"

namespace amblab {

/**
 * Centered unitary Fourier transform: fhat(w_l) = dx sum_k f(t_k)
 * exp(-2 pi i t_k w_l). Maps the time lattice onto the matching frequency
 * lattice; unitary from L2(dx) to L2(dw).
 */
Signal fourier(const Signal& f);

/// Inverse of fourier(); f(t_k) = dw sum_l fhat(w_l) exp(+2 pi i t_k w_l).
Signal fourier_inverse(const Signal& f);

/// True when z lands on the sample lattice within |idx - round(idx)| <= tol.
bool is_on_grid(const TimeGrid& grid, const PhasePoint& z, double tol = 1e-9);

/// Nearest lattice point to z.
PhasePoint snap_to_grid(const TimeGrid& grid, const PhasePoint& z);

/**
 * Time-frequency shift pi(z) f(t) = exp(2 pi i t w) f(t - x) for an on-grid
 * z = (x, w): circular translation followed by modulation. Off-grid shifts
 * throw OffGridShift.
 */
Signal timefreq_shift(const Signal& f, const PhasePoint& z, double tol = 1e-9);

/**
 * Short-time Fourier transform V_g f(x_k, w_l) = <f, pi(x_k, w_l) g> with the
 * grid inner product <a, b> = dx sum a conj(b). Row k is computed as one
 * centered Fourier transform of f . conj(T_{x_k} g).
 */
TFArray stft(const Signal& f, const Signal& g);

/// Row k of stft(f, g): the frequency slice at time shift x_k. Values match
/// the full transform exactly; useful when only a few rows are needed.
std::vector<cplx> stft_row(const Signal& f, const Signal& g, std::size_t k);

/**
 * Adjoint of stft against the L2(dx dw) pairing:
 * (V_g^* F)(t) = dx dw sum_{k,l} F[k,l] (pi(x_k, w_l) g)(t).
 */
Signal stft_adjoint(const TFArray& F, const Signal& g);

/// A(f, g)(x, w) = exp(pi i x w) V_g f(x, w).
TFArray cross_ambiguity(const Signal& f, const Signal& g);

/// A(f) = A(f, f).
TFArray ambiguity(const Signal& f);

/// Symplectic generator applied on the signal side.
struct MetaplecticOp {
    enum class Kind { RotationJ, Dilation, Chirp };
    Kind kind;
    double param = 0.0;

    static MetaplecticOp rotation() { return {Kind::RotationJ, 0.0}; }
    static MetaplecticOp dilation(double lambda) { return {Kind::Dilation, lambda}; }
    static MetaplecticOp chirp(double c) { return {Kind::Chirp, c}; }
};

/**
 * Apply a metaplectic generator: RotationJ is the Fourier transform,
 * Dilation(lambda) resamples f(t / lambda) / sqrt(lambda) by band-limited
 * interpolation and rescales to preserve the L2 norm, Chirp(c) multiplies by
 * exp(pi i c t^2). The induced map on |A(f)| is the matching linear map of
 * the time-frequency plane.
 */
Signal metaplectic_apply(const Signal& f, const MetaplecticOp& op);

/// First moments of |V_g f|^2 over the time-frequency lattice.
PhasePoint center_of_mass(const Signal& f, const Signal& g);

/**
 * Circular autocorrelation c[k] = <f, T_{x_k} f> on the centered shift grid
 * x_k = (k - n/2) dx, computed through the Fourier domain.
 */
std::vector<cplx> autocorrelation(const Signal& f);

/// Band-limited (trigonometric) evaluation of f at an arbitrary time.
cplx trig_eval(const Signal& f, double t);

/**
 * Band-limited evaluation of a time-frequency array at arbitrary points.
 * Sensible only for arrays whose implied spectrum is well inside the dual
 * box, e.g. STFTs of concentrated signals probed in the central region.
 */
class TFInterpolator {
  public:
    explicit TFInterpolator(const TFArray& a);
    cplx operator()(double x, double w) const;

  private:
    TimeGrid grid_;
    std::vector<cplx> coef_; // row-major, dual-lattice coefficients
};

} // namespace amblab
