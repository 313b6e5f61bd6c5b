#include "ug/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace ug {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ b);
}

int Rng::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("Rng::uniform_int: n must be > 0");
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<int>(x % un);
}

std::vector<int> Rng::permutation(int k) {
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  shuffle(p);
  return p;
}

std::vector<int> Rng::permutation_fixing(int k, int a, int b) {
  if (a < 0 || a >= k || b < 0 || b >= k)
    throw std::invalid_argument("permutation_fixing: labels out of range");
  std::vector<int> sources, targets;
  sources.reserve(static_cast<std::size_t>(k) - 1);
  targets.reserve(static_cast<std::size_t>(k) - 1);
  for (int i = 0; i < k; ++i) {
    if (i != a) sources.push_back(i);
    if (i != b) targets.push_back(i);
  }
  shuffle(targets);
  std::vector<int> p(static_cast<std::size_t>(k));
  p[static_cast<std::size_t>(a)] = b;
  for (std::size_t t = 0; t < sources.size(); ++t)
    p[static_cast<std::size_t>(sources[t])] = targets[t];
  return p;
}

std::vector<int> Rng::subset(int m, int r) {
  if (r < 0 || r > m) throw std::invalid_argument("Rng::subset: r out of range");
  // Floyd's algorithm keeps this O(r) draws even for m >> r.
  std::vector<int> picked;
  picked.reserve(static_cast<std::size_t>(r));
  std::vector<bool> in(static_cast<std::size_t>(m), false);
  for (int j = m - r; j < m; ++j) {
    int t = uniform_int(j + 1);
    if (in[static_cast<std::size_t>(t)]) t = j;
    in[static_cast<std::size_t>(t)] = true;
    picked.push_back(t);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace ug
