#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace csv {

/// Shortest round-trip-safe text with at most 17 significant digits,
/// independent of the global locale.
std::string format(double v);

/// Row writer with a mandatory header; a row with the wrong field count
/// throws std::logic_error.
class Writer {
 public:
  Writer(std::ostream& out, const std::vector<std::string>& header);
  Writer& field(double v);
  Writer& field(long long v);
  Writer& field(int v) { return field(static_cast<long long>(v)); }
  Writer& field(bool v);
  Writer& field(const std::string& v);
  void end_row();

 private:
  void sep();
  std::ostream& out_;
  std::size_t columns_;
  std::size_t col_ = 0;
};

}  // namespace csv
