#include "landau/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace landau::fft {

namespace {

// Plans are created once under a lock and afterwards only executed through the
// new-array interface, which FFTW documents as thread-safe.
class PlanCache {
 public:
  using Key = std::tuple<int, int, int, int, int>;  // n, howmany, stride, dist, sign

  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int howmany, int stride, int dist, int sign) {
    const Key key{n, howmany, stride, dist, sign};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = static_cast<std::size_t>(stride == 1 ? howmany * dist : n * stride);
    auto* scratch = fftw_alloc_complex(total);
    int dims[1] = {n};
    fftw_plan plan = fftw_plan_many_dft(1, dims, howmany, scratch, nullptr, stride, dist, scratch,
                                        nullptr, stride, dist, sign,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) throw std::runtime_error("FFTW plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

int sign_of(Direction dir) { return dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD; }

fftw_complex* raw(std::span<cplx> data) { return reinterpret_cast<fftw_complex*>(data.data()); }

}  // namespace

void transform(std::span<cplx> data, Direction dir) {
  const int n = static_cast<int>(data.size());
  if (n == 0) return;
  fftw_plan plan = PlanCache::instance().get(n, 1, 1, n, sign_of(dir));
  fftw_execute_dft(plan, raw(data), raw(data));
}

void transform_axis(std::span<cplx> data, int n_x, int n_y, int axis, Direction dir) {
  if (data.size() != static_cast<std::size_t>(n_x) * static_cast<std::size_t>(n_y)) {
    throw std::invalid_argument("transform_axis: size mismatch");
  }
  fftw_plan plan = axis == 0 ? PlanCache::instance().get(n_x, n_y, n_y, 1, sign_of(dir))
                             : PlanCache::instance().get(n_y, n_x, 1, n_y, sign_of(dir));
  fftw_execute_dft(plan, raw(data), raw(data));
}

std::vector<double> wavenumbers(int n, double spacing) {
  std::vector<double> k(static_cast<std::size_t>(n));
  const double dk = 2.0 * std::numbers::pi / (n * spacing);
  for (int m = 0; m < n; ++m) k[static_cast<std::size_t>(m)] = (m < (n + 1) / 2 ? m : m - n) * dk;
  return k;
}

}  // namespace landau::fft
