#include "trigonal/tables.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace trigonal {

const std::vector<ReferenceRow>& reference_rows() {
  static const std::vector<ReferenceRow> rows = {
      {1, 3, 3,
       {0, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18},
       {5, 7, 8, 10, 11, 12, 13, 14, 15, 16, 17, 18}},
      {2, 3, 4,
       {0, 3, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18},
       {7, 8, 10, 11, 13, 14, 15, 16, 17, 18}},
      {1, 5, 5,
       {0, 3, 6, 7, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18},
       {7, 10, 11, 13, 14, 16, 17, 18}},
      {2, 4, 5,
       {0, 3, 6, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18},
       {8, 10, 11, 13, 14, 16, 17, 18}},
      {3, 4, 6,
       {0, 3, 6, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18},
       {10, 11, 13, 14, 16, 17}},
  };
  return rows;
}

const ReferenceRow* find_reference_row(int r, int s) {
  for (const auto& row : reference_rows())
    if (row.r == r && row.s == s) return &row;
  return nullptr;
}

template <class F>
std::string format_table(const Curve<F>& curve, const BasisTable& table, int max_weight) {
  std::vector<std::string> cells(max_weight + 1, "-");
  std::size_t width = 2;
  for (const auto& e : table.entries) {
    if (e.weight > max_weight) continue;
    cells[e.weight] = to_string(e.monomial);
    width = std::max(width, cells[e.weight].size());
  }
  std::ostringstream os;
  os << "(r,s)=(" << curve.r() << "," << curve.s() << ") g=" << curve.genus() << " |";
  for (int n = 0; n <= max_weight; ++n) os << " " << std::setw(static_cast<int>(width)) << n;
  os << "\n" << std::string(os.str().find('|'), ' ') << "|";
  for (int n = 0; n <= max_weight; ++n) os << " " << std::setw(static_cast<int>(width)) << cells[n];
  os << "\n";
  return os.str();
}

template std::string format_table(const Curve<mpq_class>&, const BasisTable&, int);
template std::string format_table(const Curve<Complex>&, const BasisTable&, int);

}  // namespace trigonal
