#pragma once

#include <string>
#include <vector>

#include "trigonal/curve.hpp"

namespace trigonal {

// Occupied weights 0..18 of the graded bases of R and R^B for five curve
// types, as published.  Used by `tables --check-paper` and the test suites.
struct ReferenceRow {
  int r = 0;
  int s = 0;
  int genus = 0;
  std::vector<int> ring_weights;
  std::vector<int> rb_weights;
};

inline constexpr int kReferenceMaxWeight = 18;

const std::vector<ReferenceRow>& reference_rows();
const ReferenceRow* find_reference_row(int r, int s);

// Aligned text rendering: one column per weight 0..max_weight, "-" for gaps.
template <class F>
std::string format_table(const Curve<F>& curve, const BasisTable& table, int max_weight);

}  // namespace trigonal
