#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace csv {

std::string format(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Writer::Writer(std::ostream& out, const std::vector<std::string>& header) : out_(out), columns_(header.size()) {
  for (const auto& h : header) field(h);
  end_row();
}

void Writer::sep() {
  if (col_ >= columns_) throw std::logic_error("too many CSV fields in row");
  if (col_ > 0) out_ << ',';
  ++col_;
}

Writer& Writer::field(double v) {
  sep();
  out_ << format(v);
  return *this;
}

Writer& Writer::field(long long v) {
  sep();
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out_.write(buf, res.ptr - buf);
  return *this;
}

Writer& Writer::field(bool v) {
  sep();
  out_ << (v ? "true" : "false");
  return *this;
}

Writer& Writer::field(const std::string& v) {
  sep();
  if (v.find_first_of(",\"\n") == std::string::npos) {
    out_ << v;
  } else {
    out_ << '"';
    for (char c : v) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  }
  return *this;
}

void Writer::end_row() {
  if (col_ != columns_) throw std::logic_error("CSV row has the wrong number of fields");
  out_ << '\n';
  col_ = 0;
}

}  // namespace csv
