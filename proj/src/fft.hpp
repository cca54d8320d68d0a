#pragma once

// Internal FFTW wrapper: cached deterministic plans (FFTW_ESTIMATE) for 2-D
// complex transforms, with aligned buffers so new-array execution is valid.

#include <fftw3.h>

#include <complex>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "ibs2/errors.hpp"

namespace ibs2::detail {

// Aligned buffer for complex doubles backed by fftw_malloc.
class CBuf {
public:
    CBuf() = default;
    explicit CBuf(std::size_t n) : n_(n) {
        if (n) {
            ptr_ = static_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
            if (!ptr_) throw NumericFailure("fftw_malloc failed");
            std::fill(ptr_, ptr_ + n, std::complex<double>{});
        }
    }
    CBuf(CBuf&& o) noexcept : ptr_(o.ptr_), n_(o.n_) { o.ptr_ = nullptr; o.n_ = 0; }
    CBuf& operator=(CBuf&& o) noexcept {
        if (this != &o) {
            reset();
            ptr_ = o.ptr_;
            n_ = o.n_;
            o.ptr_ = nullptr;
            o.n_ = 0;
        }
        return *this;
    }
    CBuf(const CBuf&) = delete;
    CBuf& operator=(const CBuf&) = delete;
    ~CBuf() { reset(); }

    std::complex<double>* data() { return ptr_; }
    const std::complex<double>* data() const { return ptr_; }
    std::complex<double>& operator[](std::size_t i) { return ptr_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return ptr_[i]; }
    std::size_t size() const { return n_; }
    void zero() { std::fill(ptr_, ptr_ + n_, std::complex<double>{}); }

private:
    void reset() {
        if (ptr_) fftw_free(ptr_);
        ptr_ = nullptr;
    }
    std::complex<double>* ptr_ = nullptr;
    std::size_t n_ = 0;
};

// Shared plan pair for P x P in-place transforms. Plans are created once per
// size under a lock; execution uses the new-array interface and is safe to
// call concurrently on distinct buffers.
class Fft2D {
public:
    static const Fft2D& get(int P);

    // In-place unnormalized transforms on a P*P buffer.
    void forward(std::complex<double>* a) const {
        fftw_execute_dft(fwd_, reinterpret_cast<fftw_complex*>(a),
                         reinterpret_cast<fftw_complex*>(a));
    }
    // Inverse carries the 1/P^2 normalization.
    void inverse(std::complex<double>* a) const {
        fftw_execute_dft(bwd_, reinterpret_cast<fftw_complex*>(a),
                         reinterpret_cast<fftw_complex*>(a));
        const double s = 1.0 / (static_cast<double>(P_) * P_);
        const std::size_t total = static_cast<std::size_t>(P_) * P_;
        for (std::size_t i = 0; i < total; ++i) a[i] *= s;
    }

    int size() const { return P_; }

private:
    explicit Fft2D(int P);
    int P_ = 0;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

}  // namespace ibs2::detail
