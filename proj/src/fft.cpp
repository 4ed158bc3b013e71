#include "amblab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace amblab::fft {

namespace {

// FFTW planning is not thread-safe; executing a cached plan on fresh buffers
// is. Plans are created once per size with FFTW_ESTIMATE so that planning is
// repeatable and never touches the data.
struct PlanCache {
    std::mutex mtx;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans;

    fftw_plan get(std::size_t n, int sign) {
        std::scoped_lock lock(mtx);
        auto key = std::make_pair(n, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        fftw_complex* scratch_in = fftw_alloc_complex(n);
        fftw_complex* scratch_out = fftw_alloc_complex(n);
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), scratch_in, scratch_out, sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch_in);
        fftw_free(scratch_out);
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void run(const cplx* in, cplx* out, std::size_t n, int sign) {
    fftw_plan p = cache().get(n, sign);
    // FFTW's new-array execute requires non-const input; the transform does
    // not modify it for out-of-place c2c plans.
    auto* in_raw = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in));
    auto* out_raw = reinterpret_cast<fftw_complex*>(out);
    if (in == out) {
        // Plans are out-of-place; bounce through a scratch buffer.
        std::vector<cplx> tmp(in, in + n);
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()), out_raw);
        return;
    }
    fftw_execute_dft(p, in_raw, out_raw);
}

} // namespace

void dft(const cplx* in, cplx* out, std::size_t n) { run(in, out, n, FFTW_FORWARD); }

void idft(const cplx* in, cplx* out, std::size_t n) { run(in, out, n, FFTW_BACKWARD); }

namespace {

int parity_sign(std::size_t k) { return (k & 1u) ? -1 : 1; }

template <typename Kernel>
void centered_run(const cplx* in, cplx* out, std::size_t n, Kernel&& kernel) {
    std::vector<cplx> tmp(n);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = parity_sign(k) == 1 ? in[k] : -in[k];
    kernel(tmp.data(), out, n);
    const int s = parity_sign(n / 2);
    for (std::size_t l = 0; l < n; ++l) {
        if (s * parity_sign(l) == -1) out[l] = -out[l];
    }
}

} // namespace

void centered_dft(const cplx* in, cplx* out, std::size_t n) {
    centered_run(in, out, n, [](const cplx* a, cplx* b, std::size_t m) { dft(a, b, m); });
}

void centered_idft(const cplx* in, cplx* out, std::size_t n) {
    centered_run(in, out, n, [](const cplx* a, cplx* b, std::size_t m) { idft(a, b, m); });
}

} // namespace amblab::fft
