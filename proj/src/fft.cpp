#include "fft.hpp"

namespace ibs2::detail {

Fft2D::Fft2D(int P) : P_(P) {
    if (P < 2) throw InvalidArgument("Fft2D: size must be >= 2");
    CBuf scratch(static_cast<std::size_t>(P) * P);
    auto* raw = reinterpret_cast<fftw_complex*>(scratch.data());
    // FFTW_ESTIMATE keeps planning deterministic and leaves the array intact.
    fwd_ = fftw_plan_dft_2d(P, P, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_2d(P, P, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw NumericFailure("Fft2D: planning failed");
}

const Fft2D& Fft2D::get(int P) {
    static std::mutex mu;
    static std::unordered_map<int, std::unique_ptr<Fft2D>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(P);
    if (it == cache.end())
        it = cache.emplace(P, std::unique_ptr<Fft2D>(new Fft2D(P))).first;
    return *it->second;
}

}  // namespace ibs2::detail
