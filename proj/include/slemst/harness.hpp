#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "slemst/conformal.hpp"
#include "slemst/disorder.hpp"
#include "slemst/lattice.hpp"
#include "slemst/observables.hpp"
#include "slemst/rng.hpp"
#include "slemst/spanning.hpp"

namespace slemst {

inline constexpr int kSchemaVersion = 1;

// The four boundary conditions of the induced-weight model plus the i.i.d.
// edge-weight model.
enum class Ensemble { Free, SleLike, SleFree, Repulsive, Random };

inline std::string to_string(Ensemble e) {
  switch (e) {
    case Ensemble::Free: return "free";
    case Ensemble::SleLike: return "sle_like";
    case Ensemble::SleFree: return "sle_free";
    case Ensemble::Repulsive: return "repulsive";
    case Ensemble::Random: return "random";
  }
  return "?";
}

inline BoundaryCondition boundary_condition(Ensemble e) {
  switch (e) {
    case Ensemble::SleLike: return BoundaryCondition::SleLike;
    case Ensemble::SleFree: return BoundaryCondition::SleFree;
    case Ensemble::Repulsive: return BoundaryCondition::Repulsive;
    default: return BoundaryCondition::Free;
  }
}

// One grid cell of an experiment.
struct CellSpec {
  LatticeKind lattice = LatticeKind::Honeycomb;
  int a_cells = 32;
  int b_cells = 32;
  Ensemble ensemble = Ensemble::SleLike;
  double theta = 0.5;
  ArcOrientation orientation = ArcOrientation::LeftHigh;
  PathSelector path = PathSelector::StoT;
  std::size_t samples = 100;
  std::uint64_t master_seed = 1;
  std::uint64_t cell_id = 0;
};

struct SampleRecord {
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  std::size_t length = 0;
  double cost = 0.0;
  Point start;
  Point end;
  double dx = 0.0;
  std::complex<double> triple_disk;
};

struct CellResult {
  CellSpec spec;
  std::shared_ptr<const PlanarLattice> lattice;
  std::vector<SampleRecord> records;
  LeftPassageField field;
  TriplePointHistogram triple;
};

// Immutable per-cell data shared by all workers.
class CellRunner {
 public:
  explicit CellRunner(const CellSpec& spec)
      : spec_(spec),
        lattice_(std::make_shared<const PlanarLattice>(build_lattice(spec.lattice, spec.a_cells, spec.b_cells))),
        disk_(lattice_->width(), lattice_->height(), conformal::MapKind::DiskEquilateral),
        prototype_(make_left_passage_field(*lattice_, spec.path)) {
    corners_ = {lattice_->nearest_vertex({0.0, 0.0}), lattice_->nearest_vertex({0.0, lattice_->height()}),
                lattice_->nearest_vertex({lattice_->width(), 0.0})};
  }

  const std::shared_ptr<const PlanarLattice>& lattice() const { return lattice_; }
  const LeftPassageField& field_prototype() const { return prototype_; }

  WeightedEdgeGraph weights(std::uint64_t seed) const {
    if (spec_.ensemble == Ensemble::Random) return sample_random_edge_weights(lattice_, seed);
    return induce_edge_weights(
        sample_instance(lattice_, boundary_condition(spec_.ensemble), spec_.theta, seed, spec_.orientation));
  }

  LatticePath select_path(const SpanningTree& tree) const {
    if (spec_.path == PathSelector::StoT)
      return tree_path(tree, lattice_->s_marker().vertex, lattice_->t_marker().vertex);
    return optimal_crossing_path(tree, lattice_->bottom_vertices(), lattice_->top_vertices());
  }

  // instance -> edge weights -> MST -> path -> observables
  SampleRecord measure(std::size_t index, LeftPassageField& field, TriplePointHistogram& hist) const {
    SampleRecord rec;
    rec.sample = index;
    rec.seed = sample_seed(spec_.master_seed, spec_.cell_id, index);
    const WeightedEdgeGraph g = weights(rec.seed);
    const SpanningTree tree = kruskal(g);
    LatticePath path = select_path(tree);
    if (lattice_->grid(path.front()).y > lattice_->grid(path.back()).y) {
      std::reverse(path.vertices.begin(), path.vertices.end());
      std::reverse(path.edges.begin(), path.edges.end());
    }
    rec.length = path.length();
    rec.cost = path_cost(path);
    rec.start = lattice_->position(path.front());
    rec.end = lattice_->position(path.back());
    rec.dx = (rec.end.x - rec.start.x) / lattice_->width();
    accumulate_left_passage(path, *lattice_, field);
    const int tp = triple_point(tree, corners_[0], corners_[1], corners_[2]);
    const Point p = lattice_->position(tp);
    rec.triple_disk = conformal::rect_to_disk_equilateral({p.x, p.y}, disk_);
    hist.add(rec.triple_disk);
    return rec;
  }

 private:
  CellSpec spec_;
  std::shared_ptr<const PlanarLattice> lattice_;
  conformal::RectangleMap disk_;
  LeftPassageField prototype_;
  std::array<int, 3> corners_{};
};

// Runs every sample of a cell. Results depend only on the CellSpec: samples are
// stored by index and the tallies are integer sums.
inline CellResult run_cell(const CellSpec& spec, unsigned workers = 1) {
  if (spec.samples == 0) throw std::invalid_argument("run_cell: samples must be >= 1");
  const CellRunner runner(spec);
  CellResult result{spec, runner.lattice(), std::vector<SampleRecord>(spec.samples), runner.field_prototype(), {}};
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(spec.samples)));

  std::atomic<std::size_t> next{0};
  std::vector<LeftPassageField> fields(workers, runner.field_prototype());
  std::vector<TriplePointHistogram> hists(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = next++; i < spec.samples; i = next++) result.records[i] = runner.measure(i, fields[w], hists[w]);
    } catch (...) {
      errors[w] = std::current_exception();
      next = spec.samples;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (unsigned w = 0; w < workers; ++w) {
    result.field.merge(fields[w]);
    result.triple.merge(hists[w]);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Configuration

struct ExperimentConfig {
  LatticeKind lattice = LatticeKind::Honeycomb;
  Ensemble ensemble = Ensemble::SleLike;
  std::vector<int> sizes;
  std::vector<double> aspect_ratios;
  std::string theta_spec = "critical";
  double theta = 0.5;
  PathSelector path = PathSelector::StoT;
  ArcOrientation orientation = ArcOrientation::LeftHigh;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  std::string out = "out";
  unsigned workers = 1;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& text, int line, const std::string& key) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("line " + std::to_string(line) + ": field '" + key + "': expected a number, got '" + text + "'");
  return value;
}

template <class E>
E parse_choice(const std::string& text, int line, const std::string& key,
               std::initializer_list<std::pair<const char*, E>> choices) {
  std::string valid;
  for (const auto& [name, value] : choices) {
    if (text == name) return value;
    valid += (valid.empty() ? "" : ", ") + std::string(name);
  }
  throw ConfigError("line " + std::to_string(line) + ": field '" + key + "': unknown value '" + text +
                    "', expected one of {" + valid + "}");
}

}  // namespace detail

// Key-value document, one `key = value` per line, '#' starts a comment.
//
//   lattice       square | honeycomb                          (required)
//   bc            free | sle_like | sle_free | repulsive | random (required)
//   sizes         comma list of widths in plaquettes, ascending (required; `size` for one)
//   samples       samples per cell, >= 1                       (required)
//   aspect_ratios comma list of b/a; omitted means square domains
//   theta         critical | half | number in (0,1)           (default critical)
//   path          s_to_t | optimal_crossing                   (default s_to_t)
//   orientation   left_high | right_high                      (default left_high)
//   seed          master seed                                 (default 1)
//   out           output directory                            (default out)
//   workers       worker threads                              (default 1)
inline ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string content = detail::trim(raw);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value', got '" + content + "'");
    std::string key = detail::trim(std::string_view(content).substr(0, eq));
    const std::string value = detail::trim(std::string_view(content).substr(eq + 1));
    if (key == "size") key = "sizes";
    if (!seen.insert(key).second) throw ConfigError("line " + std::to_string(line) + ": duplicate field '" + key + "'");
    if (value.empty()) throw ConfigError("line " + std::to_string(line) + ": field '" + key + "' has no value");

    if (key == "lattice") {
      cfg.lattice = detail::parse_choice<LatticeKind>(value, line, key,
                                                      {{"square", LatticeKind::Square}, {"honeycomb", LatticeKind::Honeycomb}});
    } else if (key == "bc") {
      cfg.ensemble = detail::parse_choice<Ensemble>(value, line, key,
                                                    {{"free", Ensemble::Free},
                                                     {"sle_like", Ensemble::SleLike},
                                                     {"sle_free", Ensemble::SleFree},
                                                     {"repulsive", Ensemble::Repulsive},
                                                     {"random", Ensemble::Random}});
    } else if (key == "sizes") {
      for (const auto& item : detail::split_list(value)) {
        const int s = detail::parse_number<int>(item, line, key);
        if (s < 2 || s % 2 != 0)
          throw ConfigError("line " + std::to_string(line) + ": field 'sizes': " + item + " must be an even integer >= 2");
        cfg.sizes.push_back(s);
      }
      if (cfg.sizes.empty()) throw ConfigError("line " + std::to_string(line) + ": field 'sizes' is empty");
      if (!std::is_sorted(cfg.sizes.begin(), cfg.sizes.end()) ||
          std::adjacent_find(cfg.sizes.begin(), cfg.sizes.end()) != cfg.sizes.end())
        throw ConfigError("line " + std::to_string(line) + ": field 'sizes' must be strictly ascending");
    } else if (key == "aspect_ratios") {
      for (const auto& item : detail::split_list(value)) {
        const double r = detail::parse_number<double>(item, line, key);
        if (!(r > 0.0)) throw ConfigError("line " + std::to_string(line) + ": field 'aspect_ratios': " + item + " must be positive");
        cfg.aspect_ratios.push_back(r);
      }
    } else if (key == "theta") {
      cfg.theta_spec = value;
      if (value != "critical" && value != "half") {
        const double th = detail::parse_number<double>(value, line, key);
        if (!(th > 0.0 && th < 1.0))
          throw ConfigError("line " + std::to_string(line) + ": field 'theta': " + value + " is outside (0,1)");
      }
    } else if (key == "path") {
      cfg.path = detail::parse_choice<PathSelector>(
          value, line, key, {{"s_to_t", PathSelector::StoT}, {"optimal_crossing", PathSelector::OptimalCrossing}});
    } else if (key == "orientation") {
      cfg.orientation = detail::parse_choice<ArcOrientation>(
          value, line, key, {{"left_high", ArcOrientation::LeftHigh}, {"right_high", ArcOrientation::RightHigh}});
    } else if (key == "samples") {
      const auto n = detail::parse_number<long long>(value, line, key);
      if (n < 1) throw ConfigError("line " + std::to_string(line) + ": field 'samples' must be >= 1");
      cfg.samples = static_cast<std::size_t>(n);
    } else if (key == "seed") {
      cfg.seed = detail::parse_number<std::uint64_t>(value, line, key);
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "workers") {
      const auto w = detail::parse_number<long long>(value, line, key);
      if (w < 1 || w > 1024) throw ConfigError("line " + std::to_string(line) + ": field 'workers' must be in [1,1024]");
      cfg.workers = static_cast<unsigned>(w);
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown field '" + key +
                        "', expected one of {lattice, bc, sizes, samples, aspect_ratios, theta, path, orientation, "
                        "seed, out, workers}");
    }
  }
  for (const char* required : {"lattice", "bc", "sizes", "samples"})
    if (!seen.count(required)) throw ConfigError(std::string("missing required field '") + required + "'");

  if (cfg.theta_spec == "critical")
    cfg.theta = critical_threshold(cfg.lattice);
  else if (cfg.theta_spec == "half")
    cfg.theta = 0.5;
  else
    cfg.theta = std::stod(cfg.theta_spec);
  return cfg;
}

// Grid cells in a fixed order: sizes outer, aspect ratios inner.
inline std::vector<CellSpec> expand_cells(const ExperimentConfig& cfg) {
  std::vector<CellSpec> cells;
  std::vector<double> ratios = cfg.aspect_ratios.empty() ? std::vector<double>{1.0} : cfg.aspect_ratios;
  for (int size : cfg.sizes) {
    for (double r : ratios) {
      CellSpec c;
      c.lattice = cfg.lattice;
      c.a_cells = size;
      c.b_cells = std::max(2, static_cast<int>(std::lround(size * r)));
      c.ensemble = cfg.ensemble;
      c.theta = cfg.theta;
      c.orientation = cfg.orientation;
      c.path = cfg.path;
      c.samples = cfg.samples;
      c.master_seed = cfg.seed;
      c.cell_id = cells.size();
      cells.push_back(c);
    }
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Output

namespace detail {

inline std::string fmt(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / v.size();
}

inline double stderr_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / (v.size() - 1.0) / v.size());
}

}  // namespace detail

inline double aspect_of(const CellSpec& c) { return static_cast<double>(c.b_cells) / c.a_cells; }

// JSON summary of a set of cells. Depends only on the cell results, never on
// worker count or output location.
inline nlohmann::ordered_json summarize(const ExperimentConfig& cfg, const std::vector<CellResult>& cells) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = {{"lattice", to_string(cfg.lattice)},
                 {"bc", to_string(cfg.ensemble)},
                 {"sizes", cfg.sizes},
                 {"aspect_ratios", cfg.aspect_ratios},
                 {"theta", cfg.theta},
                 {"path", to_string(cfg.path)},
                 {"orientation", cfg.orientation == ArcOrientation::LeftHigh ? "left_high" : "right_high"},
                 {"samples", cfg.samples},
                 {"seed", cfg.seed}};
  ordered_json arr = ordered_json::array();
  std::vector<SizeLength> lengths;
  std::vector<DisplacementRecord> displacement;
  for (const auto& c : cells) {
    std::vector<double> len, cost, dx2;
    for (const auto& r : c.records) {
      len.push_back(static_cast<double>(r.length));
      cost.push_back(r.cost);
      dx2.push_back(r.dx * r.dx);
      displacement.push_back({aspect_of(c.spec), r.dx * r.dx});
    }
    ordered_json cj;
    cj["cell"] = c.spec.cell_id;
    cj["a_cells"] = c.spec.a_cells;
    cj["b_cells"] = c.spec.b_cells;
    cj["aspect"] = aspect_of(c.spec);
    cj["samples"] = c.records.size();
    cj["mean_length"] = detail::mean_of(len);
    cj["length_stderr"] = detail::stderr_of(len);
    cj["mean_cost"] = detail::mean_of(cost);
    cj["mean_dx2"] = detail::mean_of(dx2);
    cj["dx2_stderr"] = detail::stderr_of(dx2);
    try {
      const KappaFit fit = fit_kappa(c.field);
      cj["kappa_fit"] = {{"kappa", fit.kappa_hat},       {"stderr", fit.std_error}, {"residual", fit.residual},
                         {"noise_floor", fit.noise_floor}, {"probes", fit.probes},  {"verdict", to_string(fit.verdict)}};
    } catch (const std::exception& e) {
      cj["kappa_fit"] = {{"error", e.what()}};
    }
    try {
      const RotationTest rt = rotation_symmetry_statistic(c.triple, 999, mix64(cfg.seed ^ (c.spec.cell_id + 1)));
      cj["triple_point"] = {{"statistic", rt.statistic}, {"p_value", rt.p_value}, {"resamples", rt.resamples},
                            {"entries", c.triple.total()}};
    } catch (const std::exception& e) {
      cj["triple_point"] = {{"error", e.what()}};
    }
    arr.push_back(cj);
    if (c.spec.a_cells == c.spec.b_cells) lengths.push_back({static_cast<double>(c.spec.a_cells), detail::mean_of(len)});
  }
  j["cells"] = arr;
  try {
    const ScalingFit fd = fractal_dimension(lengths);
    j["fractal_dimension"] = {{"d", fd.slope}, {"stderr", fd.std_error}, {"sizes", fd.sizes}, {"mean_lengths", fd.values}};
    if (fd.slope >= 1.0 && fd.slope <= 2.0) j["fractal_dimension"]["kappa"] = kappa_from_dimension(fd.slope);
  } catch (const std::exception& e) {
    j["fractal_dimension"] = {{"error", e.what()}};
  }
  try {
    const DisplacementFit df = displacement_scaling(displacement);
    j["displacement_scaling"] = {{"l", df.exponent},         {"l_stderr", df.exponent_stderr},
                                 {"plateau", df.plateau},     {"plateau_stderr", df.plateau_stderr},
                                 {"aspects", df.aspects},     {"mean_dx2", df.mean_dx2}};
  } catch (const std::exception& e) {
    j["displacement_scaling"] = {{"error", e.what()}};
  }
  return j;
}

inline void write_samples_csv(std::ostream& os, const std::vector<CellResult>& cells) {
  os << "cell,a_cells,b_cells,sample,seed,length,cost,x_start,y_start,x_end,y_end,dx,triple_x,triple_y\r\n";
  for (const auto& c : cells)
    for (const auto& r : c.records)
      os << c.spec.cell_id << ',' << c.spec.a_cells << ',' << c.spec.b_cells << ',' << r.sample << ',' << r.seed << ','
         << r.length << ',' << detail::fmt(r.cost) << ',' << detail::fmt(r.start.x) << ',' << detail::fmt(r.start.y)
         << ',' << detail::fmt(r.end.x) << ',' << detail::fmt(r.end.y) << ',' << detail::fmt(r.dx) << ','
         << detail::fmt(r.triple_disk.real()) << ',' << detail::fmt(r.triple_disk.imag()) << "\r\n";
}

inline void write_left_passage_csv(std::ostream& os, const LeftPassageField& field) {
  os << "probe,x,y,angle,counts_left,counts_total\r\n";
  for (std::size_t i = 0; i < field.size(); ++i)
    os << field.faces[i] << ',' << detail::fmt(field.points[i].x) << ',' << detail::fmt(field.points[i].y) << ','
       << detail::fmt(field.angles[i]) << ',' << field.counts_left[i] << ',' << field.counts_total[i] << "\r\n";
}

struct ExperimentOutput {
  std::vector<std::filesystem::path> files;
  nlohmann::ordered_json summary;
};

// Runs every cell and writes samples.csv, left_passage_<cell>.csv and
// summary.json into cfg.out.
inline ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  std::vector<CellResult> results;
  for (const auto& spec : expand_cells(cfg)) results.push_back(run_cell(spec, cfg.workers));

  ExperimentOutput out;
  out.summary = summarize(cfg, results);
  const fs::path dir(cfg.out);
  fs::create_directories(dir);
  auto open = [&](const fs::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    out.files.push_back(p);
    return f;
  };
  {
    auto f = open(dir / "samples.csv");
    write_samples_csv(f, results);
  }
  for (const auto& c : results) {
    auto f = open(dir / ("left_passage_" + std::to_string(c.spec.cell_id) + ".csv"));
    write_left_passage_csv(f, c.field);
  }
  {
    auto f = open(dir / "summary.json");
    f << out.summary.dump(2) << '\n';
    if (!f) throw std::runtime_error("write failed: " + (dir / "summary.json").string());
  }
  return out;
}

}  // namespace slemst
