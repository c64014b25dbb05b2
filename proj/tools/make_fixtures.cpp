// Regenerates the bundled instances under data/.
#include <iostream>
#include <string>

#include "rpptu/fixtures.hpp"

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "data";
  try {
    rpptu::Instance ktvk = rpptu::make_ktvk();
    rpptu::save_instance(ktvk, dir + "/ktvk.json");
    std::cout << ktvk.name << ": " << ktvk.graph.num_vertices() << " vertices, "
              << ktvk.graph.num_arcs() << " arcs, "
              << ktvk.calendar.total_windows() << " windows\n";
    rpptu::Instance small = rpptu::make_small3();
    rpptu::save_instance(small, dir + "/small3.json");
    std::cout << small.name << ": " << small.graph.num_vertices()
              << " vertices, " << small.graph.num_arcs() << " arcs\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
