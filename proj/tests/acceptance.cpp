#include <cstdio>
#include <iostream>
#include <set>
#include <string>

#include "lambdapm/verify.hpp"

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  auto names = lpm::verify::suite_names();
  bool all = true;
  for (std::size_t i = 0; i < names.size(); ++i) {
    int k = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(k)) continue;
    auto r = lpm::verify::run_suite(names[i]);
    char time[32];
    std::snprintf(time, sizeof time, "%.1fs", r.seconds);
    std::cout << "criterion " << k << ": " << (r.pass ? "PASS" : "FAIL") << " " << r.summary;
    if (!r.issues.empty()) std::cout << " | " << r.issues;
    std::cout << " (" << time << ")" << std::endl;
    all &= r.pass;
  }
  return all ? 0 : 1;
}
