#include "smatch/random_stream.hpp"

#include <algorithm>

#include "smatch/rational.hpp"

namespace smatch {

DiscreteSampler::DiscreteSampler(const std::vector<double>& weights) {
  double total = 0;
  for (double w : weights) {
    if (!(w >= 0)) throw InputError("negative sampling weight");
    total += w;
    cumulative_.push_back(total);
  }
  if (cumulative_.empty() || total <= 0) throw InputError("empty sampling law");
  for (double& c : cumulative_) c /= total;
  cumulative_.back() = 1.0;
}

std::size_t DiscreteSampler::operator()(RandomStream& rng) const {
  const double u = rng.uniform01();
  return static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) -
                                  cumulative_.begin());
}

}  // namespace smatch
