#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "mlsc/cluster.hpp"
#include "mlsc/graph.hpp"
#include "mlsc/metrics.hpp"
#include "mlsc/rng.hpp"

namespace {

using namespace mlsc;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v, int precision = 12) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

std::string fmt_seconds(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

void write_labels(const std::string& path, const Membership& m) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < m.labels.size(); ++i)
    out << i << "\t" << m.labels[i] << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

// Accepts `node<TAB>label` lines (any node order, each node exactly once) or
// bare one-label-per-line files.
Membership read_labels(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::pair<std::int64_t, std::int32_t>> pairs;
  bool indexed = false;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream is(line);
    long long a, b;
    if (!(is >> a) || a < 0)
      throw parse_error(lineno, "expected a nonnegative integer");
    const bool two = static_cast<bool>(is >> b);
    if (two && b < 0) throw parse_error(lineno, "negative label");
    std::string rest;
    if (is >> rest) throw parse_error(lineno, "trailing content");
    if (pairs.empty())
      indexed = two;
    else if (two != indexed)
      throw parse_error(lineno, "mixed label-file formats");
    if (indexed)
      pairs.emplace_back(a, static_cast<std::int32_t>(b));
    else
      pairs.emplace_back(static_cast<std::int64_t>(pairs.size()),
                         static_cast<std::int32_t>(a));
  }
  if (pairs.empty()) throw validation_error("labels file is empty: " + path);
  Membership m;
  m.labels.assign(pairs.size(), -1);
  for (const auto& [node, label] : pairs) {
    if (node < 0 || node >= static_cast<std::int64_t>(pairs.size()) ||
        m.labels[node] != -1)
      throw validation_error("node ids in " + path +
                             " must cover 0.." +
                             std::to_string(pairs.size() - 1) +
                             " exactly once");
    m.labels[node] = label;
    m.K = std::max(m.K, label + 1);
  }
  return m;
}

void write_timings(std::ostream& out, const Timings& timings) {
  out << "stage,seconds\n";
  for (const auto& [stage, secs] : timings)
    out << stage << "," << fmt_seconds(secs) << "\n";
}

std::int64_t edge_count(const MultiLayerNetwork& net) {
  std::int64_t nnz = 0;
  for (const auto& layer : net.layers) nnz += layer.nnz();
  return net.directed ? nnz : nnz / 2;
}

std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw validation_error(flag + ": cannot parse '" + item + "'");
    }
    if (used != item.size())
      throw validation_error(flag + ": cannot parse '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw validation_error(flag + ": empty list");
  return values;
}

TestDist parse_dist(const std::string& name) {
  return name == "rademacher" ? TestDist::Rademacher : TestDist::Gaussian;
}

void pad_to_common_k(Membership& a, Membership& b) {
  const std::int32_t k = std::max(a.K, b.K);
  a.K = k;
  b.K = k;
}

struct MetricValues {
  double misclassification = kNaN;
  double ari_value = kNaN;
  double ami_value = kNaN;
};

MetricValues score(const Membership& truth, const Membership& estimate,
                   bool pad_k) {
  Membership t = truth, e = estimate;
  if (pad_k) pad_to_common_k(t, e);
  MetricValues v;
  v.misclassification = misclassification_rate(t, e);
  v.ari_value = ari(t, e);
  v.ami_value = ami(t, e);
  return v;
}

void print_metrics(std::ostream& out, const std::string& prefix,
                   const MetricValues& v) {
  out << prefix << "misclassification," << fmt(v.misclassification) << "\n";
  out << prefix << "fraction_misclassified," << fmt(v.misclassification / 2.0)
      << "\n";
  out << prefix << "ari," << fmt(v.ari_value) << "\n";
  out << prefix << "ami," << fmt(v.ami_value) << "\n";
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  int model = 1;
  std::int64_t n = 1000;
  std::int64_t layers = 20;
  double rho = 0.1;
  std::uint64_t seed = 0;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  const BlockModel model = model_preset(a.model, a.n, a.layers, a.rho);
  const MultiLayerNetwork net = model.directed()
                                    ? sample_mscbm(model, a.seed)
                                    : sample_msbm(model, a.seed);
  {
    auto out = open_out(a.out + ".edges");
    save_edge_list(out, net, false);
    if (!out) throw std::runtime_error("write failed: " + a.out + ".edges");
  }
  if (model.directed()) {
    write_labels(a.out + ".row_labels", model.rows);
    write_labels(a.out + ".col_labels", *model.cols);
  } else {
    write_labels(a.out + ".labels", model.rows);
  }
  std::cout << "nodes," << net.n << "\n"
            << "layers," << net.num_layers() << "\n"
            << "edges," << edge_count(net) << "\n";
  return 0;
}

// ----------------------------------------------------------------- cluster

struct ClusterArgs {
  std::string edges;
  std::int64_t n = 0;
  std::int64_t layers = 0;
  bool directed = false;
  std::int32_t k = 3;
  std::int32_t ky = 3;
  std::int32_t kz = 3;
  double p = 0.7;
  std::int32_t q = 4;
  std::uint64_t seed = 0;
  std::string method = "rsc";
  std::int32_t restarts = 10;
  std::string truth;
  std::string truth_col;
  std::string out;
  bool dense_oracle = true;
  bool pad_k = false;
  std::string test_dist = "gaussian";
};

int run_cluster(const ClusterArgs& a) {
  MultiLayerNetwork net;
  {
    auto in = open_in(a.edges);
    net = load_edge_list(in, a.n, a.layers, a.directed);
  }

  if (a.directed) {
    CoclusterOutput result;
    if (a.method == "rsc") {
      CoclusterConfig cfg;
      cfg.Ky = a.ky;
      cfg.Kz = a.kz;
      cfg.p = a.p;
      cfg.q = a.q;
      cfg.seed = a.seed;
      cfg.kmeans_restarts = a.restarts;
      cfg.test_distribution = parse_dist(a.test_dist);
      result = rsc_coclustering(net, cfg);
    } else {
      ScCoclusterConfig cfg;
      cfg.Ky = a.ky;
      cfg.Kz = a.kz;
      cfg.seed = a.seed;
      cfg.kmeans_restarts = a.restarts;
      cfg.dense_oracle = a.dense_oracle;
      result = sc_coclustering(net, cfg);
    }
    write_labels(a.out + ".row_labels", result.row_clusters.labels);
    write_labels(a.out + ".col_labels", result.col_clusters.labels);
    {
      auto out = open_out(a.out + ".timings.csv");
      write_timings(out, result.timings);
    }
    write_timings(std::cout, result.timings);
    if (!a.truth.empty())
      print_metrics(std::cout, "row_",
                    score(read_labels(a.truth), result.row_clusters.labels,
                          a.pad_k));
    if (!a.truth_col.empty())
      print_metrics(std::cout, "col_",
                    score(read_labels(a.truth_col), result.col_clusters.labels,
                          a.pad_k));
    return 0;
  }

  PipelineOutput result;
  if (a.method == "rsc") {
    PipelineConfig cfg;
    cfg.K = a.k;
    cfg.p = a.p;
    cfg.q = a.q;
    cfg.seed = a.seed;
    cfg.kmeans_restarts = a.restarts;
    cfg.test_distribution = parse_dist(a.test_dist);
    result = rsc_pipeline(net, cfg);
  } else {
    ScConfig cfg;
    cfg.K = a.k;
    cfg.seed = a.seed;
    cfg.kmeans_restarts = a.restarts;
    cfg.dense_oracle = a.dense_oracle;
    result = sc_pipeline(net, cfg);
  }
  write_labels(a.out + ".labels", result.clusters.labels);
  {
    auto out = open_out(a.out + ".timings.csv");
    write_timings(out, result.timings);
  }
  write_timings(std::cout, result.timings);
  if (!a.truth.empty())
    print_metrics(std::cout, "",
                  score(read_labels(a.truth), result.clusters.labels,
                        a.pad_k));
  return 0;
}

// --------------------------------------------------------------- benchmark

struct BenchmarkArgs {
  int model = 1;
  std::string axis = "n";
  std::string values;
  std::int64_t n = 1000;
  std::int64_t layers = 20;
  double rho = 0.1;
  std::int32_t k = 3;
  std::int32_t ky = 3;
  std::int32_t kz = 3;
  std::string p_list = "0.7";
  std::string q_list = "4";
  std::int32_t replicates = 20;
  std::uint64_t seed = 0;
  std::int32_t restarts = 10;
  std::string out;
  bool dense_oracle = true;
  std::string test_dist = "gaussian";
};

const char* const kStageColumns[] = {"sparsify",      "build_operator",
                                     "krylov_basis",  "rayleigh_ritz",
                                     "kmeans",        "materialize",
                                     "eig"};

struct RawRow {
  double axis_value = 0.0;
  std::int64_t n = 0;
  std::int64_t layers = 0;
  double rho = 0.0;
  double p = kNaN;
  std::int32_t q = 0;
  std::string method;
  std::int32_t replicate = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> stage_seconds;
  double seconds_total = kNaN;
  MetricValues row_metrics;
  MetricValues col_metrics;
  bool directed = false;
  std::string error;
};

std::map<std::string, double> flatten_stages(const Timings& timings) {
  std::map<std::string, double> by_stage;
  for (const auto& [name, secs] : timings) {
    std::string stage = name;
    if (stage.rfind("row_", 0) == 0 || stage.rfind("col_", 0) == 0)
      stage = stage.substr(4);
    by_stage[stage] += secs;
  }
  return by_stage;
}

void write_raw_header(std::ostream& out) {
  out << "model,axis,value,n,layers,rho,k,ky,kz,p,q,method,replicate,seed";
  for (const char* stage : kStageColumns) out << ",seconds_" << stage;
  out << ",seconds_total,misclassification,ari,ami"
      << ",col_misclassification,col_ari,col_ami,error\n";
}

void write_raw_row(std::ostream& out, int model, const std::string& axis,
                   std::int32_t k, std::int32_t ky, std::int32_t kz,
                   const RawRow& r) {
  out << model << "," << axis << "," << fmt(r.axis_value) << "," << r.n << ","
      << r.layers << "," << fmt(r.rho) << ",";
  if (r.directed)
    out << "," << ky << "," << kz;
  else
    out << k << ",,";
  out << "," << fmt(r.p) << "," << r.q << "," << r.method << ","
      << r.replicate << "," << r.seed;
  for (const char* stage : kStageColumns) {
    auto it = r.stage_seconds.find(stage);
    out << ",";
    if (it != r.stage_seconds.end()) out << fmt_seconds(it->second);
  }
  out << "," << fmt_seconds(r.seconds_total) << ","
      << fmt(r.row_metrics.misclassification) << ","
      << fmt(r.row_metrics.ari_value) << "," << fmt(r.row_metrics.ami_value)
      << "," << fmt(r.col_metrics.misclassification) << ","
      << fmt(r.col_metrics.ari_value) << "," << fmt(r.col_metrics.ami_value)
      << "," << sanitize(r.error) << "\n";
}

int run_benchmark(const BenchmarkArgs& a) {
  if (a.axis != "n" && a.axis != "L" && a.axis != "rho")
    throw validation_error("--axis must be one of n, L, rho");
  const std::vector<double> axis_values =
      parse_number_list(a.values, "--values");
  const std::vector<double> p_values = parse_number_list(a.p_list, "--p");
  const std::vector<double> q_values = parse_number_list(a.q_list, "--q");
  if (a.replicates < 1) throw validation_error("--replicates must be >= 1");

  auto raw = open_out(a.out + ".raw.csv");
  write_raw_header(raw);

  std::vector<RawRow> rows;
  bool any_error = false;

  for (std::size_t ai = 0; ai < axis_values.size(); ++ai) {
    std::int64_t n = a.n;
    std::int64_t layers = a.layers;
    double rho = a.rho;
    if (a.axis == "n")
      n = static_cast<std::int64_t>(axis_values[ai]);
    else if (a.axis == "L")
      layers = static_cast<std::int64_t>(axis_values[ai]);
    else
      rho = axis_values[ai];

    for (std::int32_t rep = 0; rep < a.replicates; ++rep) {
      const std::uint64_t net_seed =
          mix_seed(mix_seed(a.seed, ai), static_cast<std::uint64_t>(rep));
      BlockModel model;
      MultiLayerNetwork net;
      std::string setup_error;
      try {
        model = model_preset(a.model, n, layers, rho);
        net = model.directed() ? sample_mscbm(model, net_seed)
                               : sample_msbm(model, net_seed);
      } catch (const std::exception& e) {
        setup_error = e.what();
      }

      for (std::size_t pi = 0; pi < p_values.size(); ++pi) {
        for (std::size_t qi = 0; qi < q_values.size(); ++qi) {
          const std::size_t cell = pi * q_values.size() + qi;
          const bool sc_allowed = !a.dense_oracle || n <= 2000;
          for (const std::string& method :
               sc_allowed ? std::vector<std::string>{"rsc", "sc"}
                          : std::vector<std::string>{"rsc"}) {
            RawRow row;
            row.axis_value = axis_values[ai];
            row.n = n;
            row.layers = layers;
            row.rho = rho;
            row.p = p_values[pi];
            row.q = static_cast<std::int32_t>(q_values[qi]);
            row.method = method;
            row.replicate = rep;
            row.directed = a.model == 4;
            row.seed = mix_seed(
                net_seed, (method == "rsc" ? 101 : 501) + cell);
            if (!setup_error.empty()) {
              row.error = setup_error;
            } else {
              try {
                Timings timings;
                if (!row.directed) {
                  PipelineOutput result;
                  if (method == "rsc") {
                    PipelineConfig cfg;
                    cfg.K = a.k;
                    cfg.p = row.p;
                    cfg.q = row.q;
                    cfg.seed = row.seed;
                    cfg.kmeans_restarts = a.restarts;
                    cfg.test_distribution = parse_dist(a.test_dist);
                    result = rsc_pipeline(net, cfg);
                  } else {
                    ScConfig cfg;
                    cfg.K = a.k;
                    cfg.seed = row.seed;
                    cfg.kmeans_restarts = a.restarts;
                    cfg.dense_oracle = a.dense_oracle;
                    result = sc_pipeline(net, cfg);
                  }
                  timings = result.timings;
                  row.row_metrics =
                      score(model.rows, result.clusters.labels, false);
                } else {
                  CoclusterOutput result;
                  if (method == "rsc") {
                    CoclusterConfig cfg;
                    cfg.Ky = a.ky;
                    cfg.Kz = a.kz;
                    cfg.p = row.p;
                    cfg.q = row.q;
                    cfg.seed = row.seed;
                    cfg.kmeans_restarts = a.restarts;
                    cfg.test_distribution = parse_dist(a.test_dist);
                    result = rsc_coclustering(net, cfg);
                  } else {
                    ScCoclusterConfig cfg;
                    cfg.Ky = a.ky;
                    cfg.Kz = a.kz;
                    cfg.seed = row.seed;
                    cfg.kmeans_restarts = a.restarts;
                    cfg.dense_oracle = a.dense_oracle;
                    result = sc_coclustering(net, cfg);
                  }
                  timings = result.timings;
                  row.row_metrics =
                      score(model.rows, result.row_clusters.labels, false);
                  row.col_metrics =
                      score(*model.cols, result.col_clusters.labels, false);
                }
                row.stage_seconds = flatten_stages(timings);
                row.seconds_total = 0.0;
                for (const auto& [stage, secs] : row.stage_seconds)
                  row.seconds_total += secs;
              } catch (const std::exception& e) {
                row.error = e.what();
                row.stage_seconds.clear();
                row.seconds_total = kNaN;
                row.row_metrics = MetricValues{};
                row.col_metrics = MetricValues{};
              }
            }
            if (!row.error.empty()) any_error = true;
            write_raw_row(raw, a.model, a.axis, a.k, a.ky, a.kz, row);
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  if (!raw) throw std::runtime_error("write failed: " + a.out + ".raw.csv");
  raw.close();

  // Aggregate over replicates per (axis value, p, q, method), skipping rows
  // that carry an error.
  auto summary = open_out(a.out + ".summary.csv");
  summary << "model,axis,value,n,layers,rho,k,ky,kz,p,q,method,replicates"
          << ",mean_misclassification,mean_ari,mean_ami"
          << ",mean_col_misclassification,mean_col_ari,mean_col_ami"
          << ",mean_seconds_total\n";
  std::vector<std::tuple<double, double, std::int32_t, std::string>> groups;
  for (const RawRow& r : rows) {
    const auto key = std::make_tuple(r.axis_value, r.p, r.q, r.method);
    if (std::find(groups.begin(), groups.end(), key) == groups.end())
      groups.push_back(key);
  }
  for (const auto& [value, p, q, method] : groups) {
    std::int64_t count = 0;
    double mis = 0, ariv = 0, amiv = 0, cmis = 0, cari = 0, cami = 0,
           secs = 0;
    const RawRow* sample = nullptr;
    bool has_col = false;
    for (const RawRow& r : rows) {
      if (std::make_tuple(r.axis_value, r.p, r.q, r.method) !=
          std::make_tuple(value, p, q, method))
        continue;
      sample = &r;
      if (!r.error.empty()) continue;
      ++count;
      mis += r.row_metrics.misclassification;
      ariv += r.row_metrics.ari_value;
      amiv += r.row_metrics.ami_value;
      if (!std::isnan(r.col_metrics.misclassification)) {
        has_col = true;
        cmis += r.col_metrics.misclassification;
        cari += r.col_metrics.ari_value;
        cami += r.col_metrics.ami_value;
      }
      secs += r.seconds_total;
    }
    if (!sample) continue;
    const double c = static_cast<double>(count);
    summary << a.model << "," << a.axis << "," << fmt(value) << ","
            << sample->n << "," << sample->layers << "," << fmt(sample->rho)
            << ",";
    if (sample->directed)
      summary << "," << a.ky << "," << a.kz;
    else
      summary << a.k << ",,";
    summary << "," << fmt(p) << "," << q << "," << method << "," << count
            << "," << fmt(count ? mis / c : kNaN) << ","
            << fmt(count ? ariv / c : kNaN) << ","
            << fmt(count ? amiv / c : kNaN) << ","
            << fmt(has_col && count ? cmis / c : kNaN) << ","
            << fmt(has_col && count ? cari / c : kNaN) << ","
            << fmt(has_col && count ? cami / c : kNaN) << ","
            << fmt_seconds(count ? secs / c : kNaN) << "\n";
  }
  if (!summary)
    throw std::runtime_error("write failed: " + a.out + ".summary.csv");

  return any_error ? 1 : 0;
}

// ----------------------------------------------------------------- relabel

int run_relabel(const std::string& input, const std::string& out_prefix) {
  auto in = open_in(input);
  auto edges = open_out(out_prefix + ".edges");
  std::unordered_map<std::string, std::int64_t> ids;
  std::vector<std::string> order;
  auto remap = [&](const std::string& id) {
    auto [it, inserted] = ids.emplace(id, static_cast<std::int64_t>(order.size()));
    if (inserted) order.push_back(id);
    return it->second;
  };

  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = line;
    const auto first = stripped.find_first_not_of(" \t\r");
    if (first == std::string::npos || stripped[first] == '#') continue;
    std::istringstream is(stripped);
    long long layer;
    std::string src, dst, value, extra;
    if (!(is >> layer)) throw parse_error(lineno, "expected a layer number");
    if (!(is >> src >> dst))
      throw parse_error(lineno, "expected two node ids");
    const bool has_value = static_cast<bool>(is >> value);
    if (has_value) {
      std::size_t used = 0;
      try {
        (void)std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size())
        throw parse_error(lineno, "cannot parse value '" + value + "'");
    }
    if (is >> extra) throw parse_error(lineno, "trailing fields");
    edges << layer << "\t" << remap(src) << "\t" << remap(dst);
    if (has_value) edges << "\t" << value;
    edges << "\n";
  }
  if (!edges)
    throw std::runtime_error("write failed: " + out_prefix + ".edges");

  auto map_out = open_out(out_prefix + ".map");
  for (std::size_t i = 0; i < order.size(); ++i)
    map_out << order[i] << "\t" << i << "\n";
  if (!map_out)
    throw std::runtime_error("write failed: " + out_prefix + ".map");
  std::cout << "nodes," << order.size() << "\n";
  return 0;
}

// ----------------------------------------------------------------- metrics

int run_metrics(const std::string& truth_path, const std::string& est_path,
                bool pad_k, const std::string& out_path) {
  const Membership truth = read_labels(truth_path);
  const Membership estimate = read_labels(est_path);
  const MetricValues v = score(truth, estimate, pad_k);
  print_metrics(std::cout, "", v);
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    out << "metric,value\n";
    print_metrics(out, "", v);
    if (!out) throw std::runtime_error("write failed: " + out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Spectral community detection for multi-layer networks: simulate "
      "block-model networks, cluster them with the sampled matrix-free "
      "pipeline or the exact baseline, and score the results."};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Sample a preset block model and write <out>.edges plus "
                  "ground-truth label files");
  simulate->add_option("--model", sim.model, "Preset id (1-4; 4 is directed)")
      ->check(CLI::Range(1, 4));
  simulate->add_option("--n", sim.n, "Number of nodes");
  simulate->add_option("--layers", sim.layers, "Number of layers (even)");
  simulate->add_option("--rho", sim.rho, "Overall sparsity factor");
  simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_option("--out", sim.out, "Output path prefix")->required();

  ClusterArgs cl;
  auto* cluster = app.add_subcommand(
      "cluster", "Cluster an edge-list file; writes <out>.labels (or "
                 ".row_labels/.col_labels) and <out>.timings.csv");
  cluster->add_option("edges", cl.edges, "Edge-list file (layer i j [value])")
      ->required();
  cluster->add_option("--n", cl.n, "Number of nodes")->required();
  cluster->add_option("--layers", cl.layers, "Number of layers")->required();
  cluster->add_flag("--directed", cl.directed,
                    "Treat edges as directed; co-clusters rows and columns");
  cluster->add_option("--k", cl.k, "Cluster count (undirected)");
  cluster->add_option("--ky", cl.ky, "Row cluster count (directed)");
  cluster->add_option("--kz", cl.kz, "Column cluster count (directed)");
  cluster->add_option("--p", cl.p, "Edge sampling probability (rsc)");
  cluster->add_option("--q", cl.q, "Krylov power parameter (rsc)");
  cluster->add_option("--seed", cl.seed, "RNG seed");
  cluster->add_option("--method", cl.method, "rsc (sampled) or sc (exact)")
      ->check(CLI::IsMember({"rsc", "sc"}));
  cluster->add_option("--restarts", cl.restarts, "k-means restarts");
  cluster->add_option("--truth", cl.truth,
                      "Ground-truth labels file; prints metric,value rows");
  cluster->add_option("--truth-col", cl.truth_col,
                      "Column ground-truth labels file (directed)");
  cluster->add_option("--out", cl.out, "Output path prefix")->required();
  cluster->add_option("--dense-oracle", cl.dense_oracle,
                      "sc only: use the dense eigensolver (guarded at "
                      "n <= 2000) instead of the matrix-free exact path");
  cluster->add_flag("--pad-k", cl.pad_k,
                    "Pad the smaller label set with empty clusters");
  cluster->add_option("--test-dist", cl.test_dist, "Test-matrix distribution")
      ->check(CLI::IsMember({"gaussian", "rademacher"}));

  BenchmarkArgs bm;
  auto* benchmark = app.add_subcommand(
      "benchmark", "Sweep one axis; writes <out>.raw.csv (one row per run) "
                   "and <out>.summary.csv (means over replicates)");
  benchmark->add_option("--model", bm.model, "Preset id (1-4)")
      ->check(CLI::Range(1, 4));
  benchmark->add_option("--axis", bm.axis, "Sweep axis: n, L, or rho")
      ->check(CLI::IsMember({"n", "L", "rho"}));
  benchmark->add_option("--values", bm.values, "Comma-separated axis values")
      ->required();
  benchmark->add_option("--n", bm.n, "Nodes (when not the axis)");
  benchmark->add_option("--layers", bm.layers, "Layers (when not the axis)");
  benchmark->add_option("--rho", bm.rho, "Sparsity (when not the axis)");
  benchmark->add_option("--k", bm.k, "Cluster count (undirected models)");
  benchmark->add_option("--ky", bm.ky, "Row cluster count (model 4)");
  benchmark->add_option("--kz", bm.kz, "Column cluster count (model 4)");
  benchmark->add_option("--p", bm.p_list, "Comma-separated sampling rates");
  benchmark->add_option("--q", bm.q_list, "Comma-separated power parameters");
  benchmark->add_option("--replicates", bm.replicates,
                        "Independent draws per grid point");
  benchmark->add_option("--seed", bm.seed, "Base RNG seed");
  benchmark->add_option("--restarts", bm.restarts, "k-means restarts");
  benchmark->add_option("--out", bm.out, "Output path prefix")->required();
  benchmark->add_option("--dense-oracle", bm.dense_oracle,
                        "Run the exact baseline densely (skipped when "
                        "n > 2000) rather than matrix-free");
  benchmark->add_option("--test-dist", bm.test_dist,
                        "Test-matrix distribution")
      ->check(CLI::IsMember({"gaussian", "rademacher"}));

  std::string relabel_in, relabel_out;
  auto* relabel = app.add_subcommand(
      "relabel", "Map arbitrary string node ids to dense 0-based integers "
                 "(first-seen order); writes <out>.edges and <out>.map");
  relabel->add_option("input", relabel_in, "Edge-list file with string ids")
      ->required();
  relabel->add_option("--out", relabel_out, "Output path prefix")->required();

  std::string m_truth, m_est, m_out;
  bool m_pad = false;
  auto* metrics = app.add_subcommand(
      "metrics", "Score two label files; prints metric,value rows");
  metrics->add_option("truth", m_truth, "Reference labels file")->required();
  metrics->add_option("estimate", m_est, "Estimated labels file")->required();
  metrics->add_flag("--pad-k", m_pad,
                    "Pad the smaller label set with empty clusters");
  metrics->add_option("--out", m_out, "Also write the rows to this CSV file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (cluster->parsed()) return run_cluster(cl);
    if (benchmark->parsed()) return run_benchmark(bm);
    if (relabel->parsed()) return run_relabel(relabel_in, relabel_out);
    if (metrics->parsed()) return run_metrics(m_truth, m_est, m_pad, m_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
