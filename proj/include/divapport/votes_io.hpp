#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "divapport/error.hpp"

namespace divapport {

// Votes files: one positive decimal per line; '#' starts a comment;
// blank lines are ignored.

inline std::vector<double> read_votes(std::istream& in, const std::string& origin = "<stream>") {
  std::vector<double> votes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text(line);
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) continue;
    text = text.substr(first, text.find_last_not_of(" \t\r\n") - first + 1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !(value > 0.0) ||
        !std::isfinite(value)) {
      throw Error(ErrorCode::invalid_instance, origin + ":" + std::to_string(line_no) +
                                                   ": expected a positive number, got '" +
                                                   std::string(text) + "'");
    }
    votes.push_back(value);
  }
  return votes;
}

inline std::vector<double> read_votes_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_failure, "cannot open votes file '" + path + "'");
  return read_votes(in, path);
}

/// Writes votes with round-trip precision, preceded by `# `-prefixed header lines.
inline void write_votes(std::ostream& out, std::span<const double> votes,
                        std::span<const std::string> header = {}) {
  for (const auto& h : header) out << "# " << h << '\n';
  char buf[64];
  for (double v : votes) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
    out << '\n';
  }
}

inline void write_votes_file(const std::string& path, std::span<const double> votes,
                             std::span<const std::string> header = {}) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io_failure, "cannot write votes file '" + path + "'");
  write_votes(out, votes, header);
  if (!out) throw Error(ErrorCode::io_failure, "write failed for '" + path + "'");
}

}  // namespace divapport
