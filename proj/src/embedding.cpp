#include "specq/embedding.hpp"

#include <algorithm>
#include <map>
#include <memory>

namespace specq {

Vec SortedEmbedding::forward(const QPoint& p) const {
  if (p.q() != q_ || p.n() != 1)
    throw DimensionMismatch("SortedEmbedding: expects Q scalars");
  Vec x(q_);
  for (int i = 0; i < q_; ++i) x[i] = p.atom(i)[0];
  std::sort(x.begin(), x.end());
  return x;
}

QPoint SortedEmbedding::inverse(const Vec& x) const {
  if (static_cast<int>(x.size()) != q_)
    throw DimensionMismatch("SortedEmbedding::inverse: wrong size");
  std::vector<Vec> atoms;
  atoms.reserve(q_);
  for (double v : x) atoms.push_back(Vec{v});
  return QPoint(std::move(atoms));
}

Vec isotonic_regression(const Vec& y) {
  const int n = static_cast<int>(y.size());
  // Pool-adjacent-violators with block means.
  std::vector<double> mean(n), weight(n);
  std::vector<int> len(n);
  int top = 0;
  for (int i = 0; i < n; ++i) {
    mean[top] = y[i];
    weight[top] = 1.0;
    len[top] = 1;
    ++top;
    while (top > 1 && mean[top - 2] >= mean[top - 1]) {
      const double w = weight[top - 2] + weight[top - 1];
      mean[top - 2] =
          (weight[top - 2] * mean[top - 2] + weight[top - 1] * mean[top - 1]) /
          w;
      weight[top - 2] = w;
      len[top - 2] += len[top - 1];
      --top;
    }
  }
  Vec out(n);
  int pos = 0;
  for (int b = 0; b < top; ++b)
    for (int k = 0; k < len[b]; ++k) out[pos++] = mean[b];
  return out;
}

Vec SortedEmbedding::retract(const Vec& x) const {
  if (static_cast<int>(x.size()) != q_)
    throw DimensionMismatch("SortedEmbedding::retract: wrong size");
  if (std::is_sorted(x.begin(), x.end())) return x;  // exact on the image
  return isotonic_regression(x);
}

const Embedding* find_embedding(int q, int n) {
  if (n != 1 || q < 1) return nullptr;
  static std::map<int, std::unique_ptr<SortedEmbedding>> cache;
  auto it = cache.find(q);
  if (it == cache.end())
    it = cache.emplace(q, std::make_unique<SortedEmbedding>(q)).first;
  return it->second.get();
}

const Embedding& require_embedding(int q, int n) {
  const Embedding* e = find_embedding(q, n);
  if (!e)
    throw UnsupportedEmbedding("no embedding registered for (Q=" +
                               std::to_string(q) +
                               ", n=" + std::to_string(n) + ")");
  return *e;
}

}  // namespace specq
