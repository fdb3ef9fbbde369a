#include "npchunk/knn.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "npchunk/error.hpp"

namespace npchunk {

KnnModel KnnModel::train(const InstanceSet &set, const KnnOptions &options) {
  if (set.rows.empty()) throw InvalidArgument("no training instances");
  if (options.k < 1) throw InvalidArgument("k must be at least 1");
  KnnModel model;
  model.k_ = options.k;
  model.classes_ = set.classes;
  model.weights_ = feature_weights(set, options.weighting);

  std::map<std::vector<std::uint32_t>, std::size_t> index;
  for (const Instance &inst : set.rows) {
    auto [it, inserted] = index.emplace(inst.values, model.exemplars_.size());
    if (inserted) model.exemplars_.push_back({inst.values, {}});
    auto &counts = model.exemplars_[it->second].counts;
    auto c = std::find_if(counts.begin(), counts.end(),
                          [&](const auto &p) { return p.first == inst.label; });
    if (c == counts.end()) {
      counts.emplace_back(inst.label, 1);
    } else {
      ++c->second;
    }
  }
  model.set_order();
  return model;
}

void KnnModel::set_order() {
  order_.resize(weights_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
    return weights_[a] > weights_[b];
  });
}

std::size_t KnnModel::instance_count() const {
  std::size_t n = 0;
  for (const Exemplar &e : exemplars_) {
    for (const auto &[cls, count] : e.counts) n += count;
  }
  return n;
}

std::vector<std::size_t> KnnModel::neighbour_votes(
    std::span<const std::uint32_t> values) const {
  if (values.size() != weights_.size()) {
    throw InvalidArgument("instance arity does not match model");
  }
  // Nearest distinct distances seen so far, ascending, at most k of them.
  struct Bucket {
    double distance;
    std::vector<std::size_t> votes;
  };
  std::vector<Bucket> buckets;
  const std::size_t n_classes = classes_.size();
  const double inf = std::numeric_limits<double>::infinity();

  for (const Exemplar &e : exemplars_) {
    const double bound =
        buckets.size() == static_cast<std::size_t>(k_) ? buckets.back().distance : inf;
    double d = 0.0;
    for (std::size_t f : order_) {
      if (e.values[f] != values[f]) {
        d += weights_[f];
        if (d > bound) break;
      }
    }
    if (d > bound) continue;
    auto it = std::lower_bound(buckets.begin(), buckets.end(), d,
                               [](const Bucket &b, double x) { return b.distance < x; });
    if (it == buckets.end() || it->distance != d) {
      it = buckets.insert(it, Bucket{d, std::vector<std::size_t>(n_classes, 0)});
      if (buckets.size() > static_cast<std::size_t>(k_)) buckets.pop_back();
    }
    for (const auto &[cls, count] : e.counts) it->votes[cls] += count;
  }

  std::vector<std::size_t> votes(n_classes, 0);
  for (const Bucket &b : buckets) {
    for (std::size_t c = 0; c < n_classes; ++c) votes[c] += b.votes[c];
  }
  return votes;
}

std::uint32_t KnnModel::predict(std::span<const std::uint32_t> values) const {
  return classes_.argmax(neighbour_votes(values));
}

}  // namespace npchunk
