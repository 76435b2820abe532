#ifndef STABLECUT_GRAPH_IO_HPP
#define STABLECUT_GRAPH_IO_HPP

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "stablecut/graph.hpp"

namespace stablecut {

/// Malformed graph file.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, int line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(tok) +
                     "'");
  }
  return value;
}

/// Shortest decimal string that reads back to exactly `x`.
inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace detail

/// Text format:
///   # optional comment lines
///   n m
///   u v w      (m lines, 0 <= u < v < n, w > 0)
inline WeightedGraph read_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  long long n = 0;
  long long m = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.front() == '#') continue;
    const auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected 'n m'");
      n = detail::parse_number<long long>(tok[0], line_no);
      m = detail::parse_number<long long>(tok[1], line_no);
      if (n < 0 || m < 0) throw ParseError("negative vertex or edge count");
      if (m > n * (n - 1) / 2) throw ParseError("more edges than vertex pairs");
      have_header = true;
      continue;
    }
    if (tok.size() != 3) throw ParseError("line " + std::to_string(line_no) + ": expected 'u v w'");
    if (static_cast<long long>(edges.size()) == m) {
      throw ParseError("line " + std::to_string(line_no) + ": more than " + std::to_string(m) +
                       " edge lines");
    }
    const auto u = detail::parse_number<long long>(tok[0], line_no);
    const auto v = detail::parse_number<long long>(tok[1], line_no);
    const auto w = detail::parse_number<double>(tok[2], line_no);
    if (!(0 <= u && u < v && v < n)) {
      throw ParseError("line " + std::to_string(line_no) + ": endpoints must satisfy 0 <= u < v < n");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ParseError("line " + std::to_string(line_no) + ": weight must be positive");
    }
    edges.push_back({static_cast<Index>(u), static_cast<Index>(v), w});
  }
  if (!have_header) throw ParseError("missing 'n m' header");
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError("expected " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  }
  try {
    return WeightedGraph::from_edges(static_cast<Index>(n), edges);
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
}

inline WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_graph(in);
}

inline WeightedGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

/// Writes edges in (u, v) order with shortest round-trip weights.
inline void write_graph(std::ostream& out, const WeightedGraph& g,
                        const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "# " << c << '\n';
  const auto edges = g.edges();
  out << g.size() << ' ' << edges.size() << '\n';
  for (const Edge& e : edges) {
    out << e.u << ' ' << e.v << ' ' << detail::format_double(e.weight) << '\n';
  }
}

inline std::string format_graph(const WeightedGraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

inline void write_graph_file(const std::string& path, const WeightedGraph& g,
                             const std::vector<std::string>& comments = {}) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_graph(out, g, comments);
}

}  // namespace stablecut

#endif  // STABLECUT_GRAPH_IO_HPP
