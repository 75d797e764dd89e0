#pragma once

#include <charconv>
#include <concepts>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace spinlab {

/// Shortest round-trip text for a double; locale independent.
inline std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// Comma separated, '.' decimal, header row, LF line endings.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header) : out_(out) {
    bool first = true;
    for (auto h : header) {
      if (!first) out_ << ',';
      out_ << h;
      first = false;
    }
    out_ << '\n';
    columns_ = header.size();
  }

  template <typename... Ts>
  void row(const Ts&... values) {
    bool first = true;
    ((write_cell(values, first)), ...);
    out_ << '\n';
  }

  std::size_t columns() const noexcept { return columns_; }

 private:
  template <typename T>
  void write_cell(const T& v, bool& first) {
    if (!first) out_ << ',';
    first = false;
    if constexpr (std::floating_point<T>) {
      out_ << format_number(double(v));
    } else if constexpr (std::integral<T>) {
      out_ << std::to_string(v);
    } else {
      out_ << std::string_view(v);
    }
  }

  std::ostream& out_;
  std::size_t columns_ = 0;
};

}  // namespace spinlab
