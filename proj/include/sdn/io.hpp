#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "sdn/complex.hpp"
#include "sdn/dissimilarity.hpp"
#include "sdn/extended.hpp"
#include "sdn/persistence.hpp"
#include "sdn/sampling.hpp"
#include "sdn/sparsification.hpp"

namespace sdn::io {

/// 17 significant digits, or `inf`.
std::string format_value(const ExtendedValue& v);
std::string format_value(double v);

/// A non-negative decimal or `inf` in any case. Throws ParseError.
ExtendedValue parse_value(std::string_view token);

/// CSV, rows are landmarks and columns witnesses. Blank lines and lines
/// starting with '#' are skipped.
Dissimilarity<double> read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const Dissimilarity<double>& d);

/// CSV, one point per row.
PointCloud<double> read_points(std::istream& in, Metric metric = Metric::euclidean);
void write_points(std::ostream& out, const PointCloud<double>& p);

/// Edge list `i j w`; the node count is one more than the largest index.
Network<double> read_network(std::istream& in);

/// `# dowker-complex v1` followed by `value v0 v1 ... vk` lines in
/// canonical order.
FilteredComplex<double> read_complex(std::istream& in);
void write_complex(std::ostream& out, const FilteredComplex<double>& k);

/// CSV `dim,birth,death`.
PersistenceDiagram<double> read_diagram(std::istream& in);
void write_diagram(std::ostream& out, const PersistenceDiagram<double>& d);

/// CSV `index,radius` in greedy order.
void write_order(std::ostream& out, const GreedyOrder<double>& g);

/// CSV blocks `# radii`, `# thresholds` and `# parents`.
void write_plan(std::ostream& out, const SparsificationPlan<double>& plan);

/// Unreadable files raise ParseError.
std::ifstream open_input(const std::filesystem::path& path);

template <typename Reader>
auto read_file(const std::filesystem::path& path, Reader reader) {
  auto in = open_input(path);
  return reader(in);
}

}  // namespace sdn::io
