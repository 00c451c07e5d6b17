#pragma once

#include <cstddef>
#include <string>

namespace twistkl {

/// Result of an exhaustive check: how many instances were examined and the
/// first counterexample, if any.
struct Outcome {
  bool ok = true;
  std::size_t checked = 0;
  std::string detail;

  void count(std::size_t n = 1) { checked += n; }
  void fail(const std::string& what) {
    if (ok) detail = what;
    ok = false;
  }
  void merge(const Outcome& o) {
    checked += o.checked;
    if (!o.ok) fail(o.detail);
  }
};

}  // namespace twistkl
