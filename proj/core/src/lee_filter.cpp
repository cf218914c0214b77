#include "speckle/lee_filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "parallel.hpp"
#include "speckle/numeric.hpp"

namespace speckle {

void LeeSpec::validate() const {
  if (window < 3 || window % 2 == 0) throw std::invalid_argument("Lee window must be odd and >= 3");
  if (!std::isfinite(nominal_looks) || nominal_looks < 1.0) {
    throw std::invalid_argument("Lee nominal looks must be finite and >= 1");
  }
}

double lee_weight(double window_mean, double window_variance, double nominal_looks) {
  if (window_mean <= 0.0 || window_variance <= 0.0) return 0.0;
  const double cu2 = 1.0 / nominal_looks;
  const double cz2 = window_variance / (window_mean * window_mean);
  return std::clamp(1.0 - cu2 / cz2, 0.0, 1.0);
}

Raster lee_filter(const Raster& img, const LeeSpec& spec, int threads) {
  spec.validate();
  if (spec.window > img.width() || spec.window > img.height()) {
    throw std::invalid_argument("lee_filter: window larger than the image");
  }
  const int margin = spec.window / 2;
  const Raster padded = pad_mirror(img, margin);
  const int w = img.width();
  const int h = img.height();
  std::vector<double> out(img.size());

  detail::parallel_for(h, threads, [&](int r) {
    std::vector<double> window(static_cast<std::size_t>(spec.window * spec.window));
    for (int c = 0; c < w; ++c) {
      std::size_t k = 0;
      for (int dr = 0; dr < spec.window; ++dr) {
        const auto src = padded.row(r + dr).subspan(static_cast<std::size_t>(c), static_cast<std::size_t>(spec.window));
        for (double v : src) window[k++] = v;
      }
      const double m = mean(window);
      double value = 0.0;
      if (m > 0.0) {
        const double weight = lee_weight(m, sample_variance(window), spec.nominal_looks);
        value = m + weight * (img.at(r, c) - m);
      }
      out[static_cast<std::size_t>(r) * static_cast<std::size_t>(w) + static_cast<std::size_t>(c)] =
          std::max(value, 0.0);
    }
  });
  return Raster(w, h, std::move(out));
}

}  // namespace speckle
