#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace swnet::runner {

// Shortest round-trip form, so identical values always print identically.
inline std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

inline constexpr std::string_view kMissing = "NA";

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    columns_ = header.size();
    for (auto h : header) cell(h);
    end_row();
  }

  CsvWriter& cell(std::string_view s) {
    if (pending_++ > 0) out_ << ',';
    out_ << s;
    return *this;
  }
  CsvWriter& cell(const std::string& s) { return cell(std::string_view(s)); }
  CsvWriter& cell(const char* s) { return cell(std::string_view(s)); }
  CsvWriter& cell(double v) { return cell(format_number(v)); }
  template <typename T>
    requires std::is_integral_v<T>
  CsvWriter& cell(T v) {
    return cell(std::to_string(v));
  }
  template <typename T>
  CsvWriter& cell(const std::optional<T>& v) {
    return v ? cell(*v) : cell(kMissing);
  }

  void end_row() {
    if (pending_ != columns_)
      throw std::logic_error("csv row width mismatch in " + path_.string());
    out_ << '\n';
    pending_ = 0;
  }

  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("write failed for " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_ = 0;
  std::size_t pending_ = 0;
};

}  // namespace swnet::runner
