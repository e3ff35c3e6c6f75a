#pragma once

#include <charconv>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace deloc {

//! Shortest round-trip decimal representation (byte-stable across runs).
inline std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_number(long long v) { return std::to_string(v); }
inline std::string format_number(int v) { return std::to_string(v); }
inline std::string format_number(bool v) { return v ? "1" : "0"; }

//! Minimal CSV accumulator: fixed header, one row at a time, rendered to a
//! single string so a single writer can emit the file after sorting.
class Csv {
 public:
  explicit Csv(std::vector<std::string> columns) : columns_(std::move(columns)) {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (i) body_ << ',';
      body_ << columns_[i];
    }
    body_ << '\n';
  }

  class RowBuilder {
   public:
    explicit RowBuilder(Csv& csv) : csv_(csv) {}
    RowBuilder& add(double v) { return raw(format_number(v)); }
    RowBuilder& add(int v) { return raw(format_number(v)); }
    RowBuilder& add(long long v) { return raw(format_number(v)); }
    RowBuilder& add(bool v) { return raw(format_number(v)); }
    RowBuilder& add(const std::string& v) { return raw(v); }
    RowBuilder& raw(const std::string& v) {
      if (count_) csv_.body_ << ',';
      csv_.body_ << v;
      ++count_;
      return *this;
    }
    ~RowBuilder() {
      csv_.body_ << '\n';
      ++csv_.rows_;
    }

   private:
    Csv& csv_;
    std::size_t count_ = 0;
  };

  RowBuilder row() { return RowBuilder(*this); }
  std::string str() const { return body_.str(); }
  long long row_count() const { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::ostringstream body_;
  long long rows_ = 0;
};

}  // namespace deloc
