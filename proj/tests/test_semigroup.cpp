#include <numeric>
#include <set>

#include "doctest.h"
#include "trigonal/error.hpp"
#include "trigonal/semigroup.hpp"

using namespace trigonal;

namespace {

// Independent oracle: all sums of generators up to `limit`, complemented.
std::vector<int> brute_force_gaps(const std::vector<int>& gens, int limit) {
  std::vector<bool> reach(limit + 1, false);
  reach[0] = true;
  for (int n = 1; n <= limit; ++n)
    for (int a : gens)
      if (a <= n && reach[n - a]) reach[n] = true;
  std::vector<int> gaps;
  for (int n = 0; n <= limit; ++n)
    if (!reach[n]) gaps.push_back(n);
  return gaps;
}

}  // namespace

TEST_CASE("gap sets of the two named 3-semigroups") {
  CHECK(Semigroup::from_generators({3, 4, 5}).gaps() == std::vector<int>{1, 2});
  CHECK(Semigroup::from_generators({3, 4, 5}).genus() == 2);
  CHECK(Semigroup::from_generators({3, 7, 8}).gaps() == std::vector<int>{1, 2, 4, 5});
  CHECK(Semigroup::from_generators({3, 7, 8}).genus() == 4);
}

TEST_CASE("full semigroup and brute-force oracle") {
  const auto n0 = Semigroup::from_generators({1});
  CHECK(n0.gaps().empty());
  CHECK(n0.genus() == 0);
  CHECK(n0.conductor() == 0);

  const auto h = Semigroup::from_generators({3, 5, 7});
  CHECK(brute_force_gaps({3, 5, 7}, 15) == std::vector<int>{1, 2, 4});
  CHECK(h.gaps() == brute_force_gaps({3, 5, 7}, 15));
  CHECK(h.genus() == 3);
  CHECK(h.conductor() == 5);
}

TEST_CASE("non-numerical generator sets are rejected") {
  try {
    Semigroup::from_generators({4, 6});
    FAIL("expected NotNumerical");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNumerical);
  }
  CHECK_THROWS_AS(Semigroup::from_generators({}), Error);
  CHECK_THROWS_AS(Semigroup::from_generators({0, 3}), Error);
}

TEST_CASE("symmetry") {
  CHECK_FALSE(is_symmetric(Semigroup::from_generators({3, 4, 5})));
  CHECK(is_symmetric(Semigroup::from_generators({2, 3})));
  const auto h37 = Semigroup::from_generators({3, 7});
  CHECK(h37.gaps() == std::vector<int>{1, 2, 4, 5, 8, 11});
  CHECK(h37.gaps() == brute_force_gaps({3, 7}, 30));
  CHECK(is_symmetric(h37));
  CHECK_THROWS_AS(is_symmetric(Semigroup::from_generators({1})), Error);
}

TEST_CASE("gap profile") {
  auto p = gap_profile(Semigroup::from_generators({3, 7, 8}));
  CHECK(p.alpha == std::vector<int>{0, 0, 1, 1});
  CHECK(p.young == std::vector<int>{2, 2, 1, 1});
  p = gap_profile(Semigroup::from_generators({2, 3}));
  CHECK(p.alpha == std::vector<int>{0});
  CHECK(p.young == std::vector<int>{1});
  p = gap_profile(Semigroup::from_generators({3, 4, 5}));
  CHECK(p.alpha == std::vector<int>{0, 0});
  CHECK(p.young == std::vector<int>{1, 1});
  CHECK(transpose_partition({2, 2, 1, 1}) == std::vector<int>{4, 2});
}

TEST_CASE("minimum generator") {
  CHECK(min_generator(Semigroup::from_generators({3, 4, 5})) == 3);
  CHECK(min_generator(Semigroup::from_generators({2, 3})) == 2);
  CHECK(min_generator(Semigroup::from_generators({3, 5, 7})) == 3);
  CHECK(Semigroup::from_generators({3, 6, 7, 8}).minimal_generators() == std::vector<int>{3, 7, 8});
}

TEST_CASE("membership partitions an initial segment") {
  for (auto gens : std::vector<std::vector<int>>{{3, 4, 5}, {3, 7, 8}, {4, 6, 9}, {5, 7, 11, 13}, {2, 9}}) {
    const auto h = Semigroup::from_generators(gens);
    const std::set<int> gaps(h.gaps().begin(), h.gaps().end());
    for (int n = 0; n < 2 * h.conductor() + 2; ++n) CHECK(h.contains(n) != (gaps.count(n) == 1));
    for (int m = 0; m < 40; ++m)
      for (int n = 0; n < 40; ++n)
        if (h.contains(m) && h.contains(n)) CHECK(h.contains(m + n));
    CHECK(h.gaps() == brute_force_gaps(gens, 2 * h.conductor() + 5));
  }
}

TEST_CASE("symmetric iff self-conjugate Young diagram, all <3,a,b> with a,b <= 20") {
  int checked = 0;
  for (int a = 4; a <= 20; ++a)
    for (int b = a + 1; b <= 20; ++b) {
      if (std::gcd(3, std::gcd(a, b)) != 1) continue;
      const auto h = Semigroup::from_generators({3, a, b});
      const auto profile = gap_profile(h);
      CHECK(is_symmetric(h) == (transpose_partition(profile.young) == profile.young));
      CHECK(is_symmetric(h) == is_symmetric_by_involution(h));
      ++checked;
    }
  CHECK(checked > 50);
}

TEST_CASE("family <3, 2r+s, 2s+r> has genus r+s-1 and is not symmetric") {
  for (int r = 1; r <= 6; ++r)
    for (int s = 1; s <= 6; ++s) {
      if ((r - s) % 3 == 0) continue;
      const auto h = Semigroup::from_generators({3, 2 * r + s, 2 * s + r});
      CHECK(h.genus() == r + s - 1);
      CHECK_FALSE(is_symmetric(h));
    }
}
