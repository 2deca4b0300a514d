// Prints rank bounds and torsion for y^2 = x^3 + a x^2 + b x.
//   rank_bounds A B [SEARCH_BOUND]

#include <cstdlib>
#include <iostream>

#include <isodescent/descent.hpp>
#include <isodescent/torsion.hpp>

int main(int argc, char** argv)
{
  using namespace isodescent;
  if (argc < 3) {
    std::cerr << "usage: rank_bounds A B [SEARCH_BOUND]\n";
    return 2;
  }
  try {
    Curve c(parse_integer(argv[1]), parse_integer(argv[2]));
    DescentOptions options;
    if (argc > 3) options.search_bound = std::strtoull(argv[3], nullptr, 10);
    options.point_bound = 10000;
    Descent d = descend(c, options);
    std::cout << "rank in [" << d.bounds.lower << ", " << d.bounds.upper << "]\n";
    std::cout << "torsion " << torsion_subgroup(c).name() << "\n";
    for (const auto* side : {&d.gamma, &d.gamma_bar}) {
      std::cout << to_string(side->side) << " image:";
      for (const auto& cls : side->confirmed) std::cout << " " << cls.value();
      std::cout << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
