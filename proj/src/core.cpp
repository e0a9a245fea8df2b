#include "aiaefa/core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace aiaefa {

SearchSpace::SearchSpace(std::vector<double> lower, std::vector<double> upper,
                         std::vector<bool> integer_mask,
                         double equality_tolerance)
    : lower_(std::move(lower)),
      upper_(std::move(upper)),
      integer_mask_(std::move(integer_mask)),
      equality_tolerance_(equality_tolerance) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw std::invalid_argument("SearchSpace: bound vectors must be non-empty and equally sized");
  }
  if (integer_mask_.empty()) {
    integer_mask_.assign(lower_.size(), false);
  } else if (integer_mask_.size() != lower_.size()) {
    throw std::invalid_argument("SearchSpace: integer mask size mismatch");
  }
  for (std::size_t d = 0; d < lower_.size(); ++d) {
    if (!(lower_[d] < upper_[d])) {
      throw std::invalid_argument("SearchSpace: lower[" + std::to_string(d) +
                                  "] must be < upper[" + std::to_string(d) + "]");
    }
  }
  if (!(equality_tolerance_ > 0.0)) {
    throw std::invalid_argument("SearchSpace: equality tolerance must be positive");
  }
}

bool SearchSpace::has_integer_dims() const {
  return std::find(integer_mask_.begin(), integer_mask_.end(), true) !=
         integer_mask_.end();
}

SearchSpace SearchSpace::box(int dim, double lo, double hi,
                             double equality_tolerance) {
  return SearchSpace(std::vector<double>(dim, lo), std::vector<double>(dim, hi),
                     {}, equality_tolerance);
}

std::vector<double> clamp_position(const SearchSpace& space,
                                   std::span<const double> position) {
  if (static_cast<int>(position.size()) != space.dim()) {
    throw std::invalid_argument("clamp_position: dimension mismatch");
  }
  std::vector<double> out(position.begin(), position.end());
  for (int d = 0; d < space.dim(); ++d) {
    out[d] = std::max(space.lower()[d], std::min(out[d], space.upper()[d]));
  }
  return out;
}

std::vector<double> clamp_velocity(const SearchSpace& space,
                                   std::span<const double> velocity,
                                   double fraction) {
  if (static_cast<int>(velocity.size()) != space.dim()) {
    throw std::invalid_argument("clamp_velocity: dimension mismatch");
  }
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw std::invalid_argument("clamp_velocity: fraction must be in (0, 1]");
  }
  std::vector<double> out(velocity.begin(), velocity.end());
  for (int d = 0; d < space.dim(); ++d) {
    const double bound = fraction * (space.upper()[d] - space.lower()[d]);
    out[d] = std::max(-bound, std::min(out[d], bound));
  }
  return out;
}

}  // namespace aiaefa
