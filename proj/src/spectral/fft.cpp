#include "hfscatter/spectral/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace hfscatter::spectral {

namespace {

// Plans are cached per (dim, M, sign).  Created in-place with
// FFTW_ESTIMATE | FFTW_UNALIGNED so they can be executed on any buffer via
// fftw_execute_dft.  Planning is serialized; execution is thread-safe.
class PlanCache {
 public:
  fftw_plan get(int dim, int M, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_tuple(dim, M, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    std::size_t n = 1;
    for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(M);
    fftw_complex* buf = fftw_alloc_complex(n);
    int dims[3] = {M, M, M};
    fftw_plan p = fftw_plan_dft(dim, dims, buf, buf,
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_[key] = p;
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void raw_dft(std::complex<double>* data, int dim, int points_per_axis, int sign) {
  fftw_plan p = cache().get(dim, points_per_axis, sign);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, d, d);
}

}  // namespace hfscatter::spectral
