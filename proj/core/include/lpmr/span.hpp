#pragma once

#include <string>

namespace lpmr {

// A position in a source file; line and column are 1-based, 0 means unknown.
struct Span {
  std::string file;
  int line = 0;
  int col = 0;
};

}  // namespace lpmr
