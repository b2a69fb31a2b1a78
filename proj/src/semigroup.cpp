#include "trigonal/semigroup.hpp"

#include <algorithm>
#include <numeric>

#include "trigonal/error.hpp"

namespace trigonal {

Semigroup Semigroup::from_generators(std::vector<int> generators) {
  if (generators.empty())
    throw Error(ErrorCode::InvalidArgument, "semigroup needs at least one generator");
  for (int a : generators)
    if (a <= 0) throw Error(ErrorCode::InvalidArgument, "generators must be positive");
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

  int d = 0;
  for (int a : generators) d = std::gcd(d, a);
  if (d != 1) throw Error(ErrorCode::NotNumerical, "gcd of generators is " + std::to_string(d));

  Semigroup h;
  h.generators_ = generators;
  const int m = generators.front();

  // Once m consecutive integers lie in H, every larger integer does too.
  std::vector<bool> member{true};
  int run = 1;
  int n = 0;
  while (run < m) {
    ++n;
    bool in = false;
    for (int a : generators) {
      if (a > n) break;
      if (member[n - a]) {
        in = true;
        break;
      }
    }
    member.push_back(in);
    run = in ? run + 1 : 0;
  }
  // n is the last index of the run; the run started at n - m + 1.
  h.conductor_ = (m == 1) ? 0 : n - m + 1;
  member.resize(h.conductor_);
  for (int k = 0; k < h.conductor_; ++k)
    if (!member[k]) h.gaps_.push_back(k);
  h.member_ = std::move(member);
  return h;
}

bool Semigroup::contains(int n) const {
  if (n < 0) return false;
  if (n >= conductor_) return true;
  return member_[n];
}

int Semigroup::min_generator() const { return generators_.front(); }

std::vector<int> Semigroup::minimal_generators() const {
  std::vector<int> out;
  for (int a : generators_) {
    bool decomposable = false;
    for (int b = 1; b < a && !decomposable; ++b)
      decomposable = contains(b) && contains(a - b);
    if (!decomposable) out.push_back(a);
  }
  return out;
}

bool is_symmetric(const Semigroup& h) {
  if (h.genus() == 0) throw Error(ErrorCode::InvalidArgument, "symmetry needs genus >= 1");
  const int g = h.genus();
  return h.gaps().back() == 2 * g - 1;
}

bool is_symmetric_by_involution(const Semigroup& h) {
  if (h.genus() == 0) throw Error(ErrorCode::InvalidArgument, "symmetry needs genus >= 1");
  const int top = h.gaps().back();
  for (int n = 0; n <= top; ++n)
    if (h.contains(n) == h.contains(top - n)) return false;
  return true;
}

GapProfile gap_profile(const Semigroup& h) {
  if (h.genus() == 0) throw Error(ErrorCode::InvalidArgument, "gap profile needs genus >= 1");
  const int g = h.genus();
  GapProfile p;
  p.alpha.resize(g);
  for (int i = 0; i < g; ++i) p.alpha[i] = h.gaps()[i] - i - 1;
  p.young.resize(g);
  for (int i = 1; i <= g; ++i) p.young[i - 1] = p.alpha[g - i] + 1;
  return p;
}

std::vector<int> transpose_partition(const std::vector<int>& partition) {
  std::vector<int> out;
  if (partition.empty()) return out;
  const int cols = *std::max_element(partition.begin(), partition.end());
  for (int c = 1; c <= cols; ++c)
    out.push_back(static_cast<int>(
        std::count_if(partition.begin(), partition.end(), [c](int v) { return v >= c; })));
  return out;
}

int min_generator(const Semigroup& h) { return h.min_generator(); }

}  // namespace trigonal
