#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sdn/complex.hpp"
#include "sdn/demo.hpp"
#include "sdn/dissimilarity.hpp"
#include "sdn/error.hpp"
#include "sdn/euclidean.hpp"
#include "sdn/io.hpp"
#include "sdn/persistence.hpp"
#include "sdn/sampling.hpp"
#include "sdn/sparsification.hpp"
#include "sdn/stability.hpp"

namespace dowker {

using sdn::InvalidArgument;
using Complex = sdn::FilteredComplex<double>;
using Diagram = sdn::PersistenceDiagram<double>;

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

// Writes to the configured path, or to `fallback` when no path is set.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw InvalidArgument("cannot write '" + path + "'");
  writer(file);
}

bool uses_demo(const RunConfig& c) { return !c.demo.empty(); }

void require_input(const RunConfig& c) {
  require(uses_demo(c) != !c.input_path.empty(), "exactly one of --input and --demo is required");
  if (uses_demo(c)) {
    require(c.demo == "circle", "unknown demo '" + c.demo + "'");
    require(c.input_kind == "points", "--demo produces points");
    require(c.demo_points > 0, "--demo-points must be positive");
    require(c.noise >= 0, "--noise must be >= 0");
  }
}

sdn::PointCloud<double> load_points(const RunConfig& c) {
  require(c.input_kind == "points", "this mode needs --kind points");
  const auto metric = sdn::parse_metric(c.metric);
  if (uses_demo(c)) {
    auto p = sdn::demo::noisy_circle(c.demo_points, c.noise, c.seed);
    p.metric = metric;
    return p;
  }
  return sdn::io::read_file(c.input_path, [&](std::istream& in) { return sdn::io::read_points(in, metric); });
}

sdn::Dissimilarity<double> load_dissimilarity(const RunConfig& c) {
  if (c.input_kind == "points") return sdn::from_point_cloud(load_points(c));
  if (c.input_kind == "matrix")
    return sdn::io::read_file(c.input_path, [](std::istream& in) { return sdn::io::read_matrix(in); });
  if (c.input_kind == "network")
    return sdn::from_network(
        sdn::io::read_file(c.input_path, [](std::istream& in) { return sdn::io::read_network(in); }));
  throw InvalidArgument("unknown input kind '" + c.input_kind + "'");
}

double require_epsilon(const RunConfig& c) {
  require(c.epsilon.has_value(), "--epsilon is required");
  require(*c.epsilon > 0 && std::isfinite(*c.epsilon), "--epsilon must be > 0");
  return *c.epsilon;
}

int homology_dim(int complex_dim) { return std::max(0, complex_dim - 1); }

Complex build_complex(const RunConfig& c) {
  if (c.mode == "full-nerve") return sdn::build_dowker_nerve(load_dissimilarity(c), c.max_dim, c.threads);
  if (c.mode == "rips") return sdn::build_rips(load_dissimilarity(c), c.max_dim);
  if (c.mode == "sparse-dowker") {
    require(c.c > 1, "--c must be > 1");
    const auto plan = sdn::build_cover_plan(load_dissimilarity(c), c.c, c.start_index);
    return sdn::build_sparse_nerve(plan, c.max_dim, c.threads);
  }
  if (c.mode == "euclidean-cech") return sdn::build_euclidean_cech(load_points(c), c.max_dim);
  if (c.mode == "sparse-cech") {
    const double eps = require_epsilon(c);
    const auto p = load_points(c);
    const auto plan = sdn::sparse_cech_plan(p, sdn::greedy_order(p, c.start_index), eps);
    return sdn::build_sparse_cech(plan, c.max_dim);
  }
  throw InvalidArgument("unknown mode '" + c.mode + "'");
}

int run_order(const RunConfig& c, std::ostream& out) {
  require_input(c);
  const auto g = sdn::greedy_order(load_dissimilarity(c), c.start_index);
  emit(c.output_path, out, [&](std::ostream& o) { sdn::io::write_order(o, g); });
  return ok;
}

int run_plan(const RunConfig& c, std::ostream& out) {
  require_input(c);
  require(c.c > 1, "--c must be > 1");
  const auto plan = sdn::build_cover_plan(load_dissimilarity(c), c.c, c.start_index);
  emit(c.output_path, out, [&](std::ostream& o) { sdn::io::write_plan(o, plan); });
  return ok;
}

int run_nerve(const RunConfig& c, std::ostream& out) {
  require_input(c);
  require(c.max_dim >= 0, "--max-dim must be >= 0");
  const auto k = build_complex(c);
  emit(c.output_path, out, [&](std::ostream& o) { sdn::io::write_complex(o, k); });
  if (!c.diagram_path.empty()) {
    const auto d = sdn::compute_persistence(k, homology_dim(c.max_dim));
    emit(c.diagram_path, out, [&](std::ostream& o) { sdn::io::write_diagram(o, d); });
  }
  return ok;
}

int run_persistence(const RunConfig& c, std::ostream& out) {
  require(!c.input_path.empty(), "--input is required");
  require(c.max_dim >= 0, "--max-dim must be >= 0");
  const auto k = sdn::io::read_file(c.input_path, [](std::istream& in) { return sdn::io::read_complex(in); });
  const auto d = sdn::compute_persistence(k, c.max_dim);
  emit(c.output_path, out, [&](std::ostream& o) { sdn::io::write_diagram(o, d); });
  return ok;
}

int run_compare(const RunConfig& c, std::ostream& out) {
  require_input(c);
  require(c.max_dim >= 0, "--max-dim must be >= 0");
  const double eps = require_epsilon(c);
  const auto d = load_dissimilarity(c);
  const auto plan = sdn::build_cover_plan(d, 1 + eps, c.start_index);
  const auto sparse = sdn::build_sparse_nerve(plan, c.max_dim + 1, c.threads);
  const auto full = sdn::build_dowker_nerve(d, c.max_dim + 1, c.threads);
  const auto ds = sdn::compute_persistence(sparse, c.max_dim);
  const auto df = sdn::compute_persistence(full, c.max_dim);

  // The multiplicative guarantee needs alpha(t) = (1 + eps) t, i.e. a zero
  // cover radius and a zero sup over the triangle relation.
  const bool certified = sdn::cover_radius(plan.ordered) == sdn::ExtendedValue(0.0) &&
                         sdn::sup_over(plan.ordered, plan.triangle) == sdn::ExtendedValue(0.0);
  const double bound = 1 + eps;
  bool violated = false;
  std::ostringstream report;
  report << "# sparse diagram\n";
  sdn::io::write_diagram(report, ds);
  report << "# full diagram\n";
  sdn::io::write_diagram(report, df);
  report << "# bottleneck\ndim,multiplicative_bottleneck,bound,status\n";
  for (int dim = 0; dim <= c.max_dim; ++dim) {
    const auto mb = sdn::multiplicative_bottleneck(ds, df, dim);
    std::string status = "uncertified";
    if (certified) {
      const bool within = mb.is_finite() && std::log(mb.value()) <= std::log(bound) + 1e-9;
      violated = violated || !within;
      status = within ? "ok" : "violated";
    }
    report << dim << ',' << sdn::io::format_value(mb) << ',' << (certified ? sdn::io::format_value(bound) : "none")
           << ',' << status << '\n';
  }
  report << "# sizes\nsparse_simplices,full_simplices,ratio\n"
         << sparse.size() << ',' << full.size() << ','
         << sdn::io::format_value(full.empty() ? 1.0 : static_cast<double>(sparse.size()) / static_cast<double>(full.size()))
         << '\n';
  emit(c.output_path, out, [&](std::ostream& o) { o << report.str(); });
  return violated ? guarantee_violated : ok;
}

int run_netdist(const RunConfig& c, std::ostream& out) {
  require(!c.input_path.empty() && !c.input2_path.empty(), "--input and --input2 are required");
  const auto read = [](const std::string& path) {
    return sdn::io::read_file(path, [](std::istream& in) { return sdn::io::read_network(in); });
  };
  const auto result = sdn::network_distance_bruteforce(read(c.input_path), read(c.input2_path));
  emit(c.output_path, out, [&](std::ostream& o) {
    o << "distance,distortion\n"
      << sdn::io::format_value(result.distance) << ',' << sdn::io::format_value(result.distortion) << '\n'
      << "# correspondence\nx,x2\n";
    for (const auto& [a, b] : result.correspondence.pairs()) o << a << ',' << b << '\n';
  });
  return ok;
}

unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DOWKER_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1) throw InvalidArgument("DOWKER_THREADS must be a positive integer");
    n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
  if (config.command == "order") return run_order(config, out);
  if (config.command == "plan") return run_plan(config, out);
  if (config.command == "nerve") return run_nerve(config, out);
  if (config.command == "persistence") return run_persistence(config, out);
  if (config.command == "compare") return run_compare(config, out);
  if (config.command == "netdist") return run_netdist(config, out);
  throw InvalidArgument("unknown command '" + config.command + "'");
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse Dowker nerves and their persistence"};
  app.require_subcommand(1);
  RunConfig config;

  const auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", config.input_path, "input file");
    sub->add_option("--kind", config.input_kind, "input kind")
        ->check(CLI::IsMember({"points", "matrix", "network"}));
    sub->add_option("--metric", config.metric, "point metric")
        ->check(CLI::IsMember({"euclidean", "manhattan", "chebyshev"}));
    sub->add_option("--start", config.start_index, "first point of the greedy order");
    sub->add_option("--demo", config.demo, "generated input instead of --input (circle)");
    sub->add_option("--demo-points", config.demo_points, "number of demo points");
    sub->add_option("--noise", config.noise, "standard deviation of demo noise");
    sub->add_option("--seed", config.seed, "seed for demo data");
  };
  const auto add_output = [&](CLI::App* sub) { sub->add_option("--output", config.output_path, "output file"); };

  auto* order = app.add_subcommand("order", "greedy order with insertion radii");
  add_input(order);
  add_output(order);

  auto* plan = app.add_subcommand("plan", "sparsification plan");
  add_input(plan);
  add_output(plan);
  plan->add_option("--c", config.c, "cover parameter c > 1");

  auto* nerve = app.add_subcommand("nerve", "filtered complex");
  add_input(nerve);
  add_output(nerve);
  nerve->add_option("--mode", config.mode, "construction")
      ->check(CLI::IsMember({"sparse-dowker", "sparse-cech", "full-nerve", "rips", "euclidean-cech"}));
  nerve->add_option("--max-dim", config.max_dim, "top simplex dimension");
  nerve->add_option("--epsilon", config.epsilon, "sparse-cech parameter");
  nerve->add_option("--c", config.c, "sparse-dowker parameter c > 1");
  nerve->add_option("--diagram", config.diagram_path, "also write the persistence diagram");

  auto* persistence = app.add_subcommand("persistence", "diagram of a complex file");
  persistence->add_option("--input", config.input_path, "complex file");
  persistence->add_option("--max-dim", config.max_dim, "top homology dimension");
  add_output(persistence);

  auto* compare = app.add_subcommand("compare", "sparse against full nerve");
  add_input(compare);
  add_output(compare);
  compare->add_option("--epsilon", config.epsilon, "sparsity parameter");
  compare->add_option("--max-dim", config.max_dim, "top homology dimension");

  auto* netdist = app.add_subcommand("netdist", "brute force network distance");
  netdist->add_option("--input", config.input_path, "first network");
  netdist->add_option("--input2", config.input2_path, "second network");
  add_output(netdist);

  // Per-command defaults for the top dimension.
  persistence->preparse_callback([&](std::size_t) { config.max_dim = 1; });
  compare->preparse_callback([&](std::size_t) { config.max_dim = 1; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : invalid_config;
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    config.threads = thread_count();
    return run(config, out);
  } catch (const sdn::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return parse_error;
  } catch (const std::exception& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return invalid_config;
  }
}

}  // namespace dowker
