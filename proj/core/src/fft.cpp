#include "onsager/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "onsager/error.hpp"

namespace onsager::fft {

namespace {

enum class Kind { r2c, c2r, c2c_backward };

// The FFTW planner is not thread-safe; execution of an existing plan on
// new arrays is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(Kind kind, int dim, int n) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(kind, dim, n);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = dim == 1 ? static_cast<std::size_t>(n)
                                       : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::vector<double> real(total);
    std::vector<Complex> cplx(total);
    auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = nullptr;
    switch (kind) {
      case Kind::r2c:
        plan = dim == 1 ? fftw_plan_dft_r2c_1d(n, real.data(), c, flags)
                        : fftw_plan_dft_r2c_2d(n, n, real.data(), c, flags);
        break;
      case Kind::c2r:
        plan = dim == 1 ? fftw_plan_dft_c2r_1d(n, c, real.data(), flags)
                        : fftw_plan_dft_c2r_2d(n, n, c, real.data(), flags);
        break;
      case Kind::c2c_backward: {
        std::vector<Complex> out(total);
        auto* o = reinterpret_cast<fftw_complex*>(out.data());
        plan = dim == 1 ? fftw_plan_dft_1d(n, c, o, FFTW_BACKWARD, flags)
                        : fftw_plan_dft_2d(n, n, c, o, FFTW_BACKWARD, flags);
        break;
      }
    }
    if (plan == nullptr) throw NumericalError("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<Kind, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

std::size_t slice_size(int dim, int n) {
  return dim == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n;
}

void check_shape(std::size_t size, int dim, int n) {
  require(dim == 1 || dim == 2, "FFT slices must be 1- or 2-dimensional");
  require(size == slice_size(dim, n), "FFT input size does not match slice shape");
}

}  // namespace

std::size_t half_spectrum_size(int dim, int n) {
  return dim == 1 ? static_cast<std::size_t>(n / 2 + 1)
                  : static_cast<std::size_t>(n) * static_cast<std::size_t>(n / 2 + 1);
}

std::vector<Complex> forward(std::span<const double> slice, int dim, int n) {
  check_shape(slice.size(), dim, n);
  std::vector<double> in(slice.begin(), slice.end());
  std::vector<Complex> out(half_spectrum_size(dim, n));
  fftw_execute_dft_r2c(cache().get(Kind::r2c, dim, n), in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> inverse(std::span<const Complex> spectrum, int dim, int n) {
  require(spectrum.size() == half_spectrum_size(dim, n), "spectrum size does not match slice shape");
  // c2r overwrites its input.
  std::vector<Complex> in(spectrum.begin(), spectrum.end());
  std::vector<double> out(slice_size(dim, n));
  fftw_execute_dft_c2r(cache().get(Kind::c2r, dim, n), reinterpret_cast<fftw_complex*>(in.data()),
                       out.data());
  const double scale = 1.0 / static_cast<double>(out.size());
  for (double& v : out) v *= scale;
  return out;
}

std::vector<Complex> backward_complex(std::span<const Complex> coefficients, int dim, int n) {
  check_shape(coefficients.size(), dim, n);
  std::vector<Complex> in(coefficients.begin(), coefficients.end());
  std::vector<Complex> out(in.size());
  fftw_execute_dft(cache().get(Kind::c2c_backward, dim, n), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> derivative(std::span<const double> slice, int dim, int n, double length,
                               int axis) {
  require(axis >= 0 && axis < dim, "derivative axis out of range");
  auto spec = forward(slice, dim, n);
  const double base = 2.0 * std::numbers::pi / length;
  const std::size_t half = static_cast<std::size_t>(n / 2 + 1);
  for (std::size_t idx = 0; idx < spec.size(); ++idx) {
    int k = 0;
    if (dim == 1) {
      k = static_cast<int>(idx);
    } else if (axis == 0) {
      k = signed_wavenumber(idx / half, n);
    } else {
      k = static_cast<int>(idx % half);
    }
    if (k == n / 2 || k == -n / 2) {
      spec[idx] = 0.0;
    } else {
      spec[idx] *= Complex(0.0, base * k);
    }
  }
  return inverse(spec, dim, n);
}

}  // namespace onsager::fft
