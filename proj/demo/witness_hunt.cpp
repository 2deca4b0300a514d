// Searches every unresolved torsor of a family curve deeper than the
// default bound and reports what it finds.
//   witness_hunt P Q [BOUND] [JOBS]

#include <cstdlib>
#include <iostream>

#include <isodescent/family.hpp>

int main(int argc, char** argv)
{
  using namespace isodescent;
  if (argc < 3) {
    std::cerr << "usage: witness_hunt P Q [BOUND] [JOBS]\n";
    return 2;
  }
  try {
    FamilyParams f(parse_integer(argv[1]), parse_integer(argv[2]));
    const std::uint64_t bound = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 10000;
    const unsigned jobs = argc > 4 ? static_cast<unsigned>(std::strtoul(argv[4], nullptr, 10)) : 1;
    Descent d = descend(curve_of(f));
    for (const auto* side : {&d.gamma, &d.gamma_bar})
      for (const auto& ca : side->classes) {
        if (!std::holds_alternative<Unknown>(ca.status)) continue;
        for (const auto& ta : ca.torsors) {
          auto status = search_torsor(ta.torsor, bound, {bound, 0, 10000, jobs});
          std::cout << to_string(side->side) << " b1=" << ta.torsor.b1 << " b2=" << ta.torsor.b2 << ": "
                    << to_string(status) << "\n";
        }
      }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
