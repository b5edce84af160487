#include <cstdio>
#include <cstdlib>
#include <string>

#include "nilgrade/acceptance.hpp"

int main(int argc, char** argv) {
  nilgrade::AcceptanceOptions opt;
  if (const char* s = std::getenv("NILGRADE_SEED")) opt.seed = std::stoull(s);
  if (const char* s = std::getenv("NILGRADE_TOL")) opt.tolerance = std::stod(s);
  std::optional<int> only;
  if (argc > 1) only = std::stoi(argv[1]);
  bool all = true;
  for (const auto& r : nilgrade::run_acceptance(opt, only)) {
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str(), r.seconds);
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
