#include "mrc/exact_matrix.hpp"

#include <numeric>
#include <sstream>

namespace mrc {

IndexSet::IndexSet(std::vector<Index> indices, Index universe) : idx_(std::move(indices)), universe_(universe) {
  if (universe < 0) throw UsageError("IndexSet: negative universe size");
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    if (idx_[k] < 0 || idx_[k] >= universe) throw UsageError("IndexSet: index out of range");
    if (k > 0 && idx_[k] <= idx_[k - 1]) throw UsageError("IndexSet: indices must be strictly increasing");
  }
}

IndexSet IndexSet::all(Index universe) {
  std::vector<Index> v(static_cast<std::size_t>(universe));
  std::iota(v.begin(), v.end(), Index{0});
  return IndexSet(std::move(v), universe);
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
  return universe_ == other.universe_ && std::includes(other.idx_.begin(), other.idx_.end(), idx_.begin(), idx_.end());
}

IndexSet IndexSet::united(const IndexSet& other) const {
  if (universe_ != other.universe_) throw UsageError("IndexSet: universe mismatch");
  std::vector<Index> out;
  std::set_union(idx_.begin(), idx_.end(), other.idx_.begin(), other.idx_.end(), std::back_inserter(out));
  return IndexSet(std::move(out), universe_);
}

IndexSet IndexSet::minus(const IndexSet& other) const {
  if (universe_ != other.universe_) throw UsageError("IndexSet: universe mismatch");
  std::vector<Index> out;
  std::set_difference(idx_.begin(), idx_.end(), other.idx_.begin(), other.idx_.end(), std::back_inserter(out));
  return IndexSet(std::move(out), universe_);
}

IndexSet IndexSet::compose(const IndexSet& positions) const {
  if (positions.universe() != size()) throw UsageError("IndexSet::compose: position universe mismatch");
  std::vector<Index> out;
  out.reserve(positions.idx_.size());
  for (Index p : positions) out.push_back(idx_[static_cast<std::size_t>(p)]);
  return IndexSet(std::move(out), universe_);
}

std::string to_string(const IndexSet& s) {
  std::ostringstream os;
  os << '{';
  for (Index k = 0; k < s.size(); ++k) os << (k ? "," : "") << s[k];
  os << '}';
  return os.str();
}

}  // namespace mrc
