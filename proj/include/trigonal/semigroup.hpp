#pragma once

#include <cstdint>
#include <vector>

namespace trigonal {

// Numerical semigroup H = <generators> inside the nonnegative integers.
//
// Gaps are indexed from zero: l_0 < l_1 < ... < l_{g-1}.
class Semigroup {
 public:
  // Throws Error(NotNumerical) when gcd(generators) != 1, and
  // Error(InvalidArgument) for an empty or nonpositive generator list.
  static Semigroup from_generators(std::vector<int> generators);

  const std::vector<int>& generators() const { return generators_; }
  // Minimal generating set, sorted ascending.
  std::vector<int> minimal_generators() const;
  const std::vector<int>& gaps() const { return gaps_; }
  int genus() const { return static_cast<int>(gaps_.size()); }
  // Smallest c with c + N_0 contained in H.
  int conductor() const { return conductor_; }

  bool contains(int n) const;
  // Smallest nonzero element.
  int min_generator() const;

 private:
  std::vector<int> generators_;
  std::vector<int> gaps_;
  std::vector<bool> member_;  // membership below the conductor
  int conductor_ = 0;
};

struct GapProfile {
  std::vector<int> alpha;   // alpha_i = l_i - i - 1
  std::vector<int> young;   // lambda_i = alpha_{g-i} + 1, nonincreasing
};

// True iff 2g - 1 is a gap.  Throws Error(InvalidArgument) for genus 0.
bool is_symmetric(const Semigroup& h);

// The involution form n in H <=> l_max - n not in H, checked directly.
bool is_symmetric_by_involution(const Semigroup& h);

GapProfile gap_profile(const Semigroup& h);

// Conjugate partition.
std::vector<int> transpose_partition(const std::vector<int>& partition);

int min_generator(const Semigroup& h);

}  // namespace trigonal
