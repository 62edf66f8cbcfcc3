#ifndef SQUEEZEGATE_CSV_HPP
#define SQUEEZEGATE_CSV_HPP

// Byte-stable CSV output: %.17g numbers, '.' decimal point, '\n' endings.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "squeezegate/core.hpp"
#include "squeezegate/gates.hpp"
#include "squeezegate/simulate.hpp"

namespace sqg {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header) { row_strings(header); }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    row_strings(cells);
  }
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_.push_back(',');
      text_ += cells[i];
    }
    text_.push_back('\n');
  }
  const std::string& str() const noexcept { return text_; }

 private:
  std::string text_;
};

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open " + path + " for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw Error(ErrorCode::InvalidArgument, "write failed for " + path);
}

/// 64-bit FNV-1a
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string overlap_csv(const std::vector<OverlapPoint>& curve) {
  CsvWriter w({"squeezing_db", "overlap"});
  for (const auto& p : curve) w.row({p.db, p.overlap});
  return w.str();
}

inline std::string trajectory_csv(const std::vector<TrajectorySample>& samples) {
  CsvWriter w({"t_s", "x_mean", "p_mean", "x_var", "p_var"});
  for (const auto& s : samples) w.row({s.t, s.m.x_mean, s.m.p_mean, s.m.x_var, s.m.p_var});
  return w.str();
}

}  // namespace sqg

#endif  // SQUEEZEGATE_CSV_HPP
