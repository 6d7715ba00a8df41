#include "sdn/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>
#include <vector>

#include "sdn/error.hpp"

namespace sdn::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view token) {
  double v = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || token.empty()) throw ParseError("malformed number '" + std::string(token) + "'");
  return v;
}

Eigen::Index parse_index(std::string_view token) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty() || v < 0)
    throw ParseError("malformed index '" + std::string(token) + "'");
  return static_cast<Eigen::Index>(v);
}

template <typename Fn>
auto at_line(std::size_t line_no, Fn fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    fail(line_no, e.what());
  }
}

}  // namespace

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return in;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_value(const ExtendedValue& v) { return v.is_infinite() ? "inf" : format_value(v.value()); }

ExtendedValue parse_value(std::string_view token) {
  token = trim(token);
  std::string lower(token);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "inf" || lower == "+inf") return ExtendedValue::infinity();
  const double v = parse_double(token);
  if (!std::isfinite(v)) throw ParseError("malformed number '" + std::string(token) + "'");
  if (v < 0) throw ParseError("negative value '" + std::string(token) + "'");
  return ExtendedValue(v);
}

Dissimilarity<double> read_matrix(std::istream& in) {
  std::vector<std::vector<ExtendedValue>> rows;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (skippable(line)) continue;
    std::vector<ExtendedValue> row;
    for (auto tok : split(line, ',')) row.push_back(at_line(line_no, [&] { return parse_value(tok); }));
    if (!rows.empty() && row.size() != rows.front().size()) fail(line_no, "ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty dissimilarity matrix");
  ExtendedMatrix<double> g(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return Dissimilarity<double>(std::move(g));
}

void write_matrix(std::ostream& out, const Dissimilarity<double>& d) {
  for (Eigen::Index l = 0; l < d.landmarks(); ++l) {
    for (Eigen::Index w = 0; w < d.witnesses(); ++w) out << (w ? "," : "") << format_value(d(l, w));
    out << '\n';
  }
}

PointCloud<double> read_points(std::istream& in, Metric metric) {
  std::vector<std::vector<double>> rows;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (skippable(line)) continue;
    std::vector<double> row;
    for (auto tok : split(line, ',')) {
      const double v = at_line(line_no, [&] { return parse_double(tok); });
      if (!std::isfinite(v)) fail(line_no, "non-finite coordinate");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) fail(line_no, "ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("empty point cloud");
  PointCloud<double>::Points pts(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) pts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return PointCloud<double>(std::move(pts), metric);
}

void write_points(std::ostream& out, const PointCloud<double>& p) {
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    for (Eigen::Index j = 0; j < p.dimension(); ++j) out << (j ? "," : "") << format_value(p.points(i, j));
    out << '\n';
  }
}

Network<double> read_network(std::istream& in) {
  std::vector<std::tuple<Eigen::Index, Eigen::Index, ExtendedValue>> edges;
  Eigen::Index n = 0;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (skippable(line)) continue;
    const auto tok = split_ws(line);
    if (tok.size() != 3) fail(line_no, "expected 'i j w'");
    const auto i = at_line(line_no, [&] { return parse_index(tok[0]); });
    const auto j = at_line(line_no, [&] { return parse_index(tok[1]); });
    const auto w = at_line(line_no, [&] { return parse_value(tok[2]); });
    edges.emplace_back(i, j, w);
    n = std::max({n, i + 1, j + 1});
  }
  if (n == 0) throw ParseError("empty network");
  return Network<double>::from_edges(n, edges);
}

FilteredComplex<double> read_complex(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || trim(line) != "# dowker-complex v1") fail(line_no, "missing '# dowker-complex v1' header");
  std::vector<FilteredComplex<double>::Entry> entries;
  Eigen::Index vertex_count = 0;
  for (++line_no; std::getline(in, line); ++line_no) {
    if (trim(line).empty()) continue;
    const auto tok = split_ws(line);
    if (tok.size() < 2) fail(line_no, "expected 'value v0 ... vk'");
    const auto value = at_line(line_no, [&] { return parse_value(tok[0]); });
    std::vector<Eigen::Index> vs;
    for (std::size_t k = 1; k < tok.size(); ++k) vs.push_back(at_line(line_no, [&] { return parse_index(tok[k]); }));
    try {
      entries.push_back({Simplex(vs), value});
    } catch (const InvalidArgument& e) {
      fail(line_no, e.what());
    }
    vertex_count = std::max(vertex_count, vs.back() + 1);
  }
  return FilteredComplex<double>(vertex_count, std::move(entries));
}

void write_complex(std::ostream& out, const FilteredComplex<double>& k) {
  out << "# dowker-complex v1\n";
  for (const auto& e : k.entries()) {
    out << format_value(e.value);
    for (auto v : e.simplex.vertices()) out << ' ' << v;
    out << '\n';
  }
}

PersistenceDiagram<double> read_diagram(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || trim(line) != "dim,birth,death") fail(line_no, "missing 'dim,birth,death' header");
  std::vector<DiagramPoint<double>> points;
  for (++line_no; std::getline(in, line); ++line_no) {
    if (skippable(line)) continue;
    const auto tok = split(line, ',');
    if (tok.size() != 3) fail(line_no, "expected 'dim,birth,death'");
    const auto dim = at_line(line_no, [&] { return parse_index(tok[0]); });
    points.push_back({static_cast<int>(dim), at_line(line_no, [&] { return parse_value(tok[1]); }),
                      at_line(line_no, [&] { return parse_value(tok[2]); })});
  }
  try {
    return PersistenceDiagram<double>(std::move(points));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

void write_diagram(std::ostream& out, const PersistenceDiagram<double>& d) {
  out << "dim,birth,death\n";
  for (const auto& p : d.points()) out << p.dim << ',' << format_value(p.birth) << ',' << format_value(p.death) << '\n';
}

void write_order(std::ostream& out, const GreedyOrder<double>& g) {
  out << "index,radius\n";
  for (std::size_t k = 0; k < g.permutation.size(); ++k)
    out << g.permutation[k] << ',' << format_value(g.radii[k]) << '\n';
}

void write_plan(std::ostream& out, const SparsificationPlan<double>& plan) {
  const auto& labels = plan.ordered.witness_labels();
  out << "# radii\nindex,witness,radius\n";
  for (std::size_t k = 0; k < plan.lambda_ins.size(); ++k)
    out << k << ',' << labels[k] << ',' << format_value(plan.lambda_ins[k]) << '\n';
  out << "# thresholds\nindex,threshold\n";
  for (std::size_t k = 0; k < plan.lambda_sparse.size(); ++k) out << k << ',' << format_value(plan.lambda_sparse[k]) << '\n';
  out << "# parents\nindex,parent\n";
  for (std::size_t k = 0; k < plan.parents.phi.size(); ++k) out << k << ',' << plan.parents.phi[k] << '\n';
}

}  // namespace sdn::io
