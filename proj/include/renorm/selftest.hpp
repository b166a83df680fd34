#pragma once

// Exact-arithmetic self-test suite behind `renorm selftest`.

#include <string>
#include <vector>

namespace renorm {

struct SelfTestItem {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<SelfTestItem> run_selftest();

}  // namespace renorm
