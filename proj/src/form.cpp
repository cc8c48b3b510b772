#include "sugra/form.hpp"

namespace sugra {

std::vector<IndexTuple> increasing_tuples(int dim, int k) {
  std::vector<IndexTuple> out;
  if (k < 0 || k > dim) return out;
  IndexTuple cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == dim - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

int complement_sign(const IndexTuple& a, const IndexTuple& b, int dim) {
  if (int(a.size() + b.size()) != dim) return 0;
  IndexTuple merged = a;
  merged.insert(merged.end(), b.begin(), b.end());
  auto [sorted, sign] = Form<double>::normalize(merged);
  if (sign == 0) return 0;
  for (int i = 0; i < dim; ++i)
    if (sorted[i] != i) return 0;
  return sign;
}

}  // namespace sugra
